"""Monte Carlo sweep over random FAP layouts, summarised by percentiles."""
from erep import SweepConfig
from erep.reporting import summarize
from erep.sweep import run_sweep
from erep.reporting import summary_csv

records = run_sweep(SweepConfig(runs_per_count=40, master_seed=7), workers=4)
print(summary_csv(summarize(records)))
