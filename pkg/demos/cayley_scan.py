"""Scan the Cayley residual along a pencil and mark where porisms live.

|Cay_N| drops to ~1e-12 exactly at the members whose rotation number is a
reduced fraction k/N; everywhere else it stays above ~1e-2. The residual is
a ratio of determinants, so it can spike by many orders where the reference
determinant itself vanishes (a porism of a neighbouring order); only
smallness certifies anything.
"""

import math

from poncelet import (
    SymmetricConic,
    build_pencil,
    cayley_condition,
    invert_rho,
    member,
    unit_circle,
)

P = build_pencil(unit_circle(), SymmetricConic(0.2, 0.0, 0.0, 0.125, 0.0, -1.0 / 9.0))

for N in range(3, 9):
    ks = [k for k in range(1, N) if math.gcd(k, N) == 1 and 2 * k < N]
    targets = [k / N for k in ks]
    print(f"N={N}  zeros expected at rho in {[f'{k}/{N}' for k in ks]}")
    for j in range(1, 20):
        rho = j / 40.0
        Q = build_pencil(P.C1, member(P, invert_rho(P, rho)))
        res = abs(cayley_condition(Q, N))
        near = any(abs(rho - t) < 1e-9 for t in targets)
        mark = "  <- porism" if near else ""
        print(f"  rho={rho:5.3f}  |Cay_{N}|={res:10.3e}{mark}")
