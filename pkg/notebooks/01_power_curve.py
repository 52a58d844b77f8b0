"""Rotary-wing propulsion power versus forward speed.

Hovering is not the cheapest way to stay airborne: translational lift cuts
induced power faster than parasite drag grows, up to about 10 m/s.
"""
import numpy as np

from erep import UavPhysicalParams, derive_power_model, hover_power, optimal_speed, propulsion_power

model = derive_power_model(UavPhysicalParams())
best = optimal_speed(model)
print(f"hover power      {hover_power(model):8.2f} W")
print(f"optimal speed    {best.speed:8.2f} m/s at {best.power:.2f} W")

for v in np.arange(0, 31, 5):
    print(f"  P({v:4.1f} m/s) = {propulsion_power(model, v):7.2f} W")

# upper bound on any gain, reached by a trajectory that never hovers
print(f"gain ceiling     {100 * (hover_power(model) / best.power - 1):8.2f} %")
