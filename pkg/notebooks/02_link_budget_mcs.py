"""Free-space link budget and MCS selection for a shared aerial backhaul."""
from erep import DEFAULT_MCS_TABLE, RadioConfig, max_range, target_mcs

radio = RadioConfig()
for pt in (0, 10, 20):
    print(f"Pt = {pt:2d} dBm")
    for row in DEFAULT_MCS_TABLE.rows:
        r = max_range(pt, radio.carrier_frequency, radio.noise_power, row.min_snr)
        print(f"  MCS{row.index}  {row.min_snr:4.0f} dB  {row.data_rate / 1e6:6.1f} Mbit/s  range {r:7.2f} m")

# each FAP gets an equal share of the link, so the per-FAP target depends on N
for n in (2, 5, 10, 20):
    row = target_mcs(500e6 / n, n)
    print(f"N={n:2d}: {500 / n:6.1f} Mbit/s each -> MCS{row.index} ({row.min_snr} dB)")
