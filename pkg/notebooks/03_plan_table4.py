"""Plan trajectories for the six reference layouts and compare gains."""
from erep.sweep import format_table4, table4

rows = table4()
print(format_table4(rows))

first = rows[0].outcome.plan
print()
print(f"layout {rows[0].label}: Pt {first.tx_power} dBm, altitude {first.altitude:.2f} m")
for p in first.cycle:
    print(f"  ({p[0]:7.3f}, {p[1]:7.3f})")
