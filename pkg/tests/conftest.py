import math
from fractions import Fraction

import pytest
from mpmath import mp

from brieskorn_wrt import BrieskornTriple, PrecisionContext, phi_hat
from brieskorn_wrt.exactmath import to_mpf


@pytest.fixture(scope="session")
def ctx50():
    return PrecisionContext(50)


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


EXAMPLE_TRIPLES = [(2, 3, 5), (2, 3, 7), (3, 4, 5)]


def coprime_triples(pmax):
    """All pairwise coprime (p1 < p2 < p3), each >= 2, with product <= pmax."""
    out = []
    for p1 in range(2, pmax + 1):
        if p1**3 > pmax:
            break
        for p2 in range(p1 + 1, pmax // p1 + 1):
            if math.gcd(p1, p2) != 1:
                continue
            for p3 in range(p2 + 1, pmax // (p1 * p2) + 1):
                if math.gcd(p1, p3) == 1 and math.gcd(p2, p3) == 1:
                    out.append((p1, p2, p3))
    return out


def vertical_limit(p, ell, m, n, ctx, y0=1e-4, levels=6):
    """Limit of phi_hat along m/n + iy, y -> 0-, by Neville extrapolation.

    The approach error is a smooth series in y (odd L-values vanish), so
    polynomial extrapolation through a halving ladder of y converges fast.
    """
    with ctx.workdps():
        ys = [mp.mpf(y0) / 2**j for j in range(levels)]
        vals = [
            phi_hat(p, ell, mp.mpc(to_mpf(Fraction(m, n)), -y), ctx) for y in ys
        ]
        for k in range(1, levels):
            vals = [
                (ys[i] * vals[i + 1] - ys[i + k] * vals[i]) / (ys[i] - ys[i + k])
                for i in range(levels - k)
            ]
        return vals[0]


def make_triple(ps) -> BrieskornTriple:
    return BrieskornTriple(*ps)
