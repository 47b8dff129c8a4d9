"""Map the limit phase diagram in the (temperature, field) plane.

In the infinite-order limit the pressure is the larger of two branches:
the iid-energy branch (freezing at beta_c = sqrt(2 ln 2)) and the
transversal branch ln cosh(beta gamma). Their crossing defines the
critical field gamma_c(beta). The map below marks which branch wins and
whether the winning iid branch is frozen.
"""

import numpy as np

from pspinlab import BETA_CRITICAL, critical_field, qrem_pressure

print(f"beta_c = sqrt(2 ln 2) = {BETA_CRITICAL:.6f}")
print(f"gamma_c(1)   = {critical_field(1.0):.6f}")
print(f"gamma_c(50)  = {critical_field(50.0):.6f}  (tends to beta_c)")
print(f"gamma_c(1e-6) = {critical_field(1e-6):.9f}  (tends to 1)")

marks = {"rem_paramagnet": ".", "rem_frozen": "#", "quantum_paramagnet": "Q"}
gammas = np.linspace(0.0, 2.0, 41)
betas = np.linspace(0.25, 3.0, 23)

print("\nphase map: rows beta (down = colder), cols gamma")
print("  . iid branch, unfrozen   # iid branch, frozen   Q transversal branch")
header = "        " + "".join(
    f"{g:.1f}".ljust(10) for g in gammas[::10]
)
print(header)
for beta in betas:
    row = "".join(marks[qrem_pressure(beta, g).phase.value] for g in gammas)
    freeze = " <- freezes" if abs(beta - BETA_CRITICAL) < 0.07 else ""
    print(f"  {beta:4.2f}  {row}{freeze}")

print("\ncritical-field identity |ln cosh(beta gamma_c) - iid branch| on a grid:")
worst = max(
    abs(qrem_pressure(b, critical_field(b)).par - qrem_pressure(b, 0.0).rem)
    for b in betas
)
print(f"  worst deviation {worst:.2e}")
