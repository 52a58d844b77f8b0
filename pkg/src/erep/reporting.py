"""Sweep aggregation and CSV/JSON emission."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .errors import EREPError

PERCENTILES = (25, 50, 75, 95)
RECORD_COLUMNS = ("fap_count", "run", "gain_pct", "tx_power_dbm", "cycle_length_m", "status")
SUMMARY_COLUMNS = ("fap_count", "p25", "p50", "p75", "p95", "mean", "failures")


@dataclass(frozen=True)
class ScenarioRecord:
    fap_count: int
    run: int
    gain_pct: float
    tx_power_dbm: float
    cycle_length_m: float
    status: str = "ok"


@dataclass(frozen=True)
class CountSummary:
    fap_count: int
    p25: float
    p50: float
    p75: float
    p95: float
    mean: float
    failures: int
    ok: int


def percentiles(values, qs=PERCENTILES):
    """Linear interpolation between order statistics at rank ``q/100 * (n - 1)``."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("percentiles of an empty sample")
    return [float(x) for x in np.percentile(v, qs, method="linear")]


def merge(records):
    """Order-independent merge: sorted by (fap_count, run)."""
    return sorted(records, key=lambda r: (r.fap_count, r.run))


def summarize(records):
    out = []
    by_count = {}
    for r in records:
        by_count.setdefault(r.fap_count, []).append(r)
    for n in sorted(by_count):
        rows = by_count[n]
        gains = [r.gain_pct for r in rows if r.status == "ok"]
        failures = len(rows) - len(gains)
        if gains:
            p25, p50, p75, p95 = percentiles(gains)
            mean = float(np.mean(gains))
        else:
            p25 = p50 = p75 = p95 = mean = math.nan
        out.append(CountSummary(n, p25, p50, p75, p95, mean, failures, len(gains)))
    return out


def _fmt(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{value:.4f}"


def _csv_text(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def records_csv(records) -> str:
    return _csv_text(RECORD_COLUMNS, [
        (r.fap_count, r.run, r.gain_pct, r.tx_power_dbm, r.cycle_length_m, r.status) for r in records])


def summary_csv(summaries) -> str:
    return _csv_text(SUMMARY_COLUMNS, [
        (s.fap_count, s.p25, s.p50, s.p75, s.p95, s.mean, s.failures) for s in summaries])


def _round(value):
    return value if isinstance(value, (str, int)) else float(f"{value:.4f}")


def records_json(records) -> str:
    return json.dumps([{k: _round(v) for k, v in asdict(r).items()} for r in records], indent=2) + "\n"


def summary_json(summaries) -> str:
    return json.dumps([{k: _round(v) for k, v in asdict(s).items()} for s in summaries], indent=2) + "\n"


def emit(results, fmt: str = "csv", path=None, summary: bool = False) -> str:
    """Render records (or summaries with ``summary=True``) and write them to ``path``.

    Returns the rendered text. Output is byte-identical for identical inputs.
    """
    if fmt == "csv":
        text = summary_csv(results) if summary else records_csv(results)
    elif fmt == "json":
        text = summary_json(results) if summary else records_json(results)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise EREPError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return text


def parse_records_csv(text: str):
    rows = csv.DictReader(io.StringIO(text))
    return [ScenarioRecord(int(r["fap_count"]), int(r["run"]), float(r["gain_pct"]), float(r["tx_power_dbm"]),
                           float(r["cycle_length_m"]), r["status"]) for r in rows]


def read_records_csv(path):
    return parse_records_csv(Path(path).read_text())


def power_curve_csv(speeds, powers) -> str:
    return _csv_text(("speed_mps", "power_w"), zip(np.asarray(speeds, float), np.asarray(powers, float)))
