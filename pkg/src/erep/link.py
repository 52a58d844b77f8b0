"""Free-space link budget and the SNR -> MCS -> fair-share relation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, InfeasibleDemandError, InvalidParameterError

SPEED_OF_LIGHT = 3e8  # m/s, value used in the evaluation setup


@dataclass(frozen=True)
class McsRow:
    index: int
    min_snr: float    # dB
    data_rate: float  # bit/s


@dataclass(frozen=True)
class McsTable:
    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        if not rows:
            raise InvalidParameterError("MCS table must not be empty")
        for prev, row in zip(rows, rows[1:]):
            if not (row.min_snr > prev.min_snr and row.data_rate > prev.data_rate):
                raise InvalidParameterError(
                    "MCS rows must be strictly increasing in min_snr and data_rate "
                    f"(MCS{prev.index} -> MCS{row.index})")
        object.__setattr__(self, "rows", rows)

    @property
    def capacity(self) -> float:
        """Channel capacity bound: the top data rate."""
        return self.rows[-1].data_rate

    @classmethod
    def from_json(cls, items):
        """Build from ``[{index, min_snr_db, rate_mbps}, ...]``."""
        try:
            rows = [McsRow(int(it["index"]), float(it["min_snr_db"]), float(it["rate_mbps"]) * 1e6)
                    for it in items]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParameterError(f"bad MCS table entry: {exc}") from exc
        return cls(tuple(rows))

    def to_json(self):
        return [{"index": r.index, "min_snr_db": r.min_snr, "rate_mbps": r.data_rate / 1e6}
                for r in self.rows]


# 802.11ac, 160 MHz, 1 spatial stream, 800 ns GI. Only the MCS0 (11 dB) and
# MCS9 (38 dB) thresholds are anchored; the intermediate ones are defaults.
DEFAULT_MCS_TABLE = McsTable(tuple(
    McsRow(i, snr, rate * 1e6)
    for i, (snr, rate) in enumerate(zip(
        (11, 14, 17, 20, 24, 27, 30, 32, 35, 38),
        (58.5, 117, 175.5, 234, 351, 468, 526.5, 585, 702, 780)))
))


@dataclass(frozen=True)
class RadioConfig:
    carrier_frequency: float = 5180e6   # Hz
    noise_power: float = -85.0          # dBm
    tx_power_initial: float = 0.0       # dBm
    tx_power_step: float = 1.0          # dB
    tx_power_max: float = 30.0          # dBm
    mcs_table: McsTable = field(default=DEFAULT_MCS_TABLE)

    def __post_init__(self):
        if not self.carrier_frequency > 0:
            raise InvalidParameterError("carrier_frequency must be > 0")
        if not self.tx_power_step > 0:
            raise InvalidParameterError("tx_power_step must be > 0")
        if self.tx_power_initial > self.tx_power_max:
            raise InvalidParameterError("tx_power_initial exceeds tx_power_max")


def path_loss_db(f, d):
    """Free-space path loss ``20 log10(4 pi d f / c)`` in dB."""
    if not f > 0:
        raise DomainError(f"frequency must be > 0, got {f!r}")
    if not d > 0:
        raise DomainError(f"distance must be > 0, got {d!r}")
    return 20.0 * math.log10(4.0 * math.pi * d * f / SPEED_OF_LIGHT)


def snr_db(pt, f, d, n0):
    return pt - path_loss_db(f, d) - n0


def max_range(pt, f, n0, target_snr):
    """Distance at which the received SNR drops to ``target_snr``."""
    # the d-independent part of the path loss, 20 log10(4 pi / lambda)
    pl_1m = 20.0 * math.log10(4.0 * math.pi * f / SPEED_OF_LIGHT)
    return 10.0 ** ((pt - pl_1m - n0 - target_snr) / 20.0)


def target_mcs(demand, n_faps, table: McsTable = DEFAULT_MCS_TABLE) -> McsRow:
    """Lowest MCS whose fair share ``data_rate / n_faps`` covers ``demand`` (bit/s)."""
    if not demand > 0:
        raise DomainError(f"demand must be > 0 bit/s, got {demand!r}")
    if int(n_faps) != n_faps or n_faps < 1:
        raise DomainError(f"n_faps must be a positive integer, got {n_faps!r}")
    for row in table.rows:
        if row.data_rate / n_faps >= demand:
            return row
    raise InfeasibleDemandError(
        f"demand {demand / 1e6:g} Mbit/s x {n_faps} FAPs exceeds channel capacity "
        f"{table.capacity / 1e6:g} Mbit/s")
