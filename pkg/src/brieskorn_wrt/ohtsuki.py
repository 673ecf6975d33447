"""Perturbative series of the quantum invariant and its exact coefficients.

The trivial-connection series tau_infinity, expanded in powers of (q - 1),
has exact rational coefficients lambda_n built from Stirling numbers,
binomials and L-values.  A bundled reference table (26 manifolds, orders
0..8) provides golden data; BWRT_TABLE1_PATH overrides its location.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .chi import BrieskornTriple, EllTriple, build_chi, l_function_value
from .exactmath import Rational, stirling_first
from .topology import phi_invariant

logger = logging.getLogger(__name__)

TABLE_ENV_VAR = "BWRT_TABLE1_PATH"


@dataclass(frozen=True)
class OhtsukiSeries:
    """Exact coefficients lambda_0..lambda_order of tau_infinity in (q-1)."""

    manifold: BrieskornTriple
    order: int
    lambdas: tuple

    @property
    def all_integer(self) -> bool:
        return all(lam.denominator == 1 for lam in self.lambdas)


def _l_values(p: BrieskornTriple, count: int) -> list:
    chi = build_chi(p, EllTriple(1, 1, 1))
    return [l_function_value(chi, k) for k in range(count)]


def lambda_coefficients(p: BrieskornTriple, order: int) -> OhtsukiSeries:
    """lambda_n for n = 0..order, exact.

    lambda_n combines Stirling numbers S_{n+1}^{(m)}, powers of (2-phi)/4 and
    1/(P(2-phi)), and the L-values of the (1,1,1) sign function; the
    Poincare sphere carries the extra correction (-1)^(n+1).  Non-integer
    values are reported on the warning channel, never rejected.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    phi = phi_invariant(p)
    a = (2 - phi) / 4
    b = Fraction(1, p.P * (2 - phi))
    l_values = _l_values(p, order + 2)
    lambdas = []
    for n in range(order + 1):
        total = Fraction(0)
        for m in range(1, n + 2):
            inner = Fraction(0)
            for k in range(m + 1):
                inner += math.comb(m, k) * b**k * l_values[k]
            total += stirling_first(n + 1, m) * a**m * inner
        lam = total / (2 * math.factorial(n + 1))
        if p.is_poincare:
            lam += (-1) ** (n + 1)
        lambdas.append(lam)
    series = OhtsukiSeries(manifold=p, order=order, lambdas=tuple(lambdas))
    if not series.all_integer:
        bad = [n for n, lam in enumerate(series.lambdas) if lam.denominator != 1]
        logger.warning("non-integer lambda_n for %s at orders %s", p, bad)
    return series


# ---------------------------------------------------------------------------
# exact truncated power series in u = q - 1, coefficients in Fraction


def _series_mul(a: list, b: list, order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if i > order or ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ai * bj
    return out


def _binomial_series(exponent: Fraction, order: int) -> list:
    # (1 + u)^exponent as sum_j C(exponent, j) u^j
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for j in range(1, order + 1):
        c *= (exponent - (j - 1)) / j
        coeffs.append(c)
    return coeffs


def _log_series(order: int) -> list:
    # log(1 + u) = sum_{j>=1} (-1)^(j+1) u^j / j
    return [Fraction(0)] + [Fraction((-1) ** (j + 1), j) for j in range(1, order + 1)]


def tau_infinity_check(p: BrieskornTriple, order: int) -> Rational:
    """Max coefficient mismatch between the two exact forms of tau_infinity.

    Expands q^{phi/4 - 1/2} (q - 1) sum_n lambda_n (q-1)^n and
    (1/2) sum_k L(-2k, chi)/k! (log q / 4P)^k  [plus q^{1/120} for (2,3,5)]
    through order + 1 in (q - 1), entirely in rational arithmetic; the two
    must agree term by term, so the returned residual must be zero.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    top = order + 1
    phi = phi_invariant(p)
    lambdas = lambda_coefficients(p, order).lambdas
    tau_series = [lambdas[n] if n <= order else Fraction(0) for n in range(top + 1)]
    lhs = _series_mul(_binomial_series(phi / 4 - Fraction(1, 2), top), tau_series, top)
    lhs = [Fraction(0)] + lhs[:-1]  # multiply by (q - 1) = u

    l_values = _l_values(p, top + 1)
    log_u = _log_series(top)
    rhs = [Fraction(0)] * (top + 1)
    power = [Fraction(1)] + [Fraction(0)] * top
    for k in range(top + 1):
        scale = l_values[k] / (math.factorial(k) * Fraction(4 * p.P) ** k) / 2
        for j in range(top + 1):
            rhs[j] += scale * power[j]
        power = _series_mul(power, log_u, top)
    if p.is_poincare:
        extra = _binomial_series(Fraction(1, 120), top)
        rhs = [r + e for r, e in zip(rhs, extra)]
    return max(abs(l - r) for l, r in zip(lhs, rhs))


# ---------------------------------------------------------------------------
# bundled reference table


@dataclass
class TableMismatch:
    manifold: tuple
    order: int
    expected: int
    got: Rational


@dataclass
class Table1Report:
    rows: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def cells_checked(self) -> int:
        return sum(len(values) for _, values in self.rows)


def table1_path() -> str:
    override = os.environ.get(TABLE_ENV_VAR)
    if override:
        return override
    return str(resources.files("brieskorn_wrt").joinpath("data/table1.txt"))


def load_table1(path: str | None = None) -> list:
    """Parse the reference table: list of ((p1, p2, p3), [lambda_0..lambda_8])."""
    rows = []
    with open(path or table1_path(), "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            head, _, tail = line.partition(":")
            ps = tuple(int(t) for t in head.split())
            values = [int(t) for t in tail.split()]
            if len(ps) != 3 or len(values) != 9:
                raise ValueError(f"malformed reference table line: {line!r}")
            rows.append((ps, values))
    return rows


def table1_verify(path: str | None = None) -> Table1Report:
    """Recompute every reference-table cell and report per-cell mismatches."""
    report = Table1Report()
    for ps, values in load_table1(path):
        report.rows.append((ps, values))
        series = lambda_coefficients(BrieskornTriple(*ps), len(values) - 1)
        for n, expected in enumerate(values):
            got = series.lambdas[n]
            if got != expected:
                report.mismatches.append(
                    TableMismatch(manifold=ps, order=n, expected=expected, got=got)
                )
    return report
