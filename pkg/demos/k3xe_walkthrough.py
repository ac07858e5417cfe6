"""From Gromov-Witten input to a Jacobi form and back, for K3 x E.

Run:  python3 demos/k3xe_walkthrough.py
"""

from jacform import (
    GWInput,
    ValidityBox,
    assemble_Z,
    check_elliptic_law,
    decompose,
    from_sbasis,
    invert_gw,
    phi_m21_s,
)
from jacform.io import format_table

TMAX = 8

# genus-one input: GW^0 = 24, GW^1 = 0
f = invert_gw(GWInput(1, (24, 0)), TMAX)
for i in f.indices:
    print(f"f_{i} =", ", ".join(str(v) for v in f[i].t_coeffs()[:4]), "...")

z = assemble_Z(f, TMAX, sbasis=True)
print("\nZ = 24 wp near the origin:")
print(format_table(from_sbasis(z, 6).restrict(ValidityBox.uniform(3, -4, 4)), -4, 4))

for lam in (-2, -1, 1, 2):
    c = check_elliptic_law(z, 1, lam)
    print(f"elliptic law, lambda={lam:+d}: {'ok' if c else 'FAILS'} on {c.compared_cells} cells")

# Z * phi_{-2,1} has weight 0 and index 1
dec = decompose(z * phi_m21_s(TMAX), 0, 1)
print("\nZ * phi_{-2,1} =", " + ".join(f"{c} {m}" for m, c in dec.coefficients.items()))
