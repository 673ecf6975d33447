"""Brieskorn parameters, odd periodic sign functions and their L-values.

The triple (p1, p2, p3) of pairwise coprime integers determines a family of
odd periodic functions chi with period 2*P, supported on eight residues.
These drive everything else: theta series, Eichler integrals, quantum
invariants and the perturbative series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

from .exactmath import Rational, bernoulli_polynomial, dedekind_sum, solve_seifert_q

COPRIMALITY_ERROR = "p must be pairwise coprime"


@dataclass(frozen=True)
class BrieskornTriple:
    """Validated Seifert parameters of a Brieskorn homology sphere.

    Components are sorted ascending on construction.  Derived data: the
    product P, the representation count D = (p1-1)(p2-1)(p3-1)/4, surgery
    coefficients q_k with P * sum(q_k / p_k) = 1, and the flag marking the
    unique triple (2, 3, 5) whose reciprocals sum above 1.
    """

    p1: int
    p2: int
    p3: int

    def __post_init__(self) -> None:
        ps = sorted((self.p1, self.p2, self.p3))
        object.__setattr__(self, "p1", ps[0])
        object.__setattr__(self, "p2", ps[1])
        object.__setattr__(self, "p3", ps[2])
        if self.p1 < 2:
            raise ValueError("each p_i must be at least 2")
        if (
            math.gcd(self.p1, self.p2) != 1
            or math.gcd(self.p1, self.p3) != 1
            or math.gcd(self.p2, self.p3) != 1
        ):
            raise ValueError(COPRIMALITY_ERROR)

    @property
    def p(self) -> tuple:
        return (self.p1, self.p2, self.p3)

    @cached_property
    def P(self) -> int:
        return self.p1 * self.p2 * self.p3

    @cached_property
    def D(self) -> int:
        num = (self.p1 - 1) * (self.p2 - 1) * (self.p3 - 1)
        assert num % 4 == 0, "at most one p_i is even so 4 divides the product"
        return num // 4

    @cached_property
    def cofactors(self) -> tuple:
        return (self.P // self.p1, self.P // self.p2, self.P // self.p3)

    @cached_property
    def seifert_q(self) -> tuple:
        return solve_seifert_q(self.p1, self.p2, self.p3)

    @property
    def is_poincare(self) -> bool:
        flag = self.p == (2, 3, 5)
        # (2,3,5) is the only pairwise coprime triple with 1/p1+1/p2+1/p3 > 1.
        big = Fraction(1, self.p1) + Fraction(1, self.p2) + Fraction(1, self.p3) > 1
        assert flag == big
        return flag

    def __str__(self) -> str:
        return f"Sigma({self.p1},{self.p2},{self.p3})"


@dataclass(frozen=True, order=True)
class EllTriple:
    """Lattice triple (l1, l2, l3) with 1 <= l_j <= p_j - 1."""

    l1: int
    l2: int
    l3: int

    @property
    def ell(self) -> tuple:
        return (self.l1, self.l2, self.l3)


def _check_range(p: BrieskornTriple, ell: EllTriple) -> None:
    for l, pk in zip(ell.ell, p.p):
        if not 1 <= l <= pk - 1:
            raise ValueError(f"ell out of range for {p}: {ell.ell}")


def orbit(p: BrieskornTriple, ell: EllTriple) -> tuple:
    """The four sign-flip companions sharing one periodic function."""
    _check_range(p, ell)
    l1, l2, l3 = ell.ell
    p1, p2, p3 = p.p
    return (
        EllTriple(l1, l2, l3),
        EllTriple(l1, p2 - l2, p3 - l3),
        EllTriple(p1 - l1, l2, p3 - l3),
        EllTriple(p1 - l1, p2 - l2, l3),
    )


def canonicalize(p: BrieskornTriple, ell: EllTriple) -> EllTriple:
    """Lexicographically least member of the orbit of ``ell``."""
    return min(orbit(p, ell))


@lru_cache(maxsize=None)
def enumerate_triples(p: BrieskornTriple) -> tuple:
    """All canonical representatives, sorted; exactly D of them."""
    seen = set()
    for l1, l2, l3 in product(
        range(1, p.p1), range(1, p.p2), range(1, p.p3)
    ):
        seen.add(canonicalize(p, EllTriple(l1, l2, l3)))
    result = tuple(sorted(seen))
    assert len(result) == p.D
    return result


@dataclass(frozen=True)
class PeriodicChi:
    """Odd periodic sign function of period 2*P with eight-point support.

    ``table`` maps residue (0-indexed, length 2*P) to {-1, 0, +1};
    ``support`` lists the eight residues carrying a sign, sorted.
    """

    modulus: int
    table: tuple
    support: tuple

    def value(self, n: int) -> int:
        return self.table[n % self.modulus]

    @property
    def signed_support(self) -> tuple:
        return tuple((r, self.table[r]) for r in self.support)


@lru_cache(maxsize=None)
def build_chi(p: BrieskornTriple, ell: EllTriple) -> PeriodicChi:
    """Construct chi for (p, ell): value -prod(eps) at P(1 + sum eps_j l_j/p_j).

    The eight epsilon assignments must land on eight distinct residues mod 2P;
    a collision would break oddness and is asserted against explicitly.
    """
    _check_range(p, ell)
    two_p = 2 * p.P
    values = {}
    for eps in product((1, -1), repeat=3):
        residue = (p.P + sum(e * l * c for e, l, c in zip(eps, ell.ell, p.cofactors))) % two_p
        sign = -eps[0] * eps[1] * eps[2]
        if residue in values:
            raise AssertionError(
                f"epsilon residues collide for p={p.p}, ell={ell.ell} at {residue}"
            )
        values[residue] = sign
    table = [0] * two_p
    for residue, sign in values.items():
        table[residue] = sign
    chi = PeriodicChi(two_p, tuple(table), tuple(sorted(values)))
    # oddness and zero mean are structural; verify once at construction
    assert all(chi.value(two_p - r) == -chi.value(r) for r in chi.support)
    assert sum(chi.table) == 0
    return chi


def weighted_sum(chi: PeriodicChi) -> int:
    """sum_{n=1}^{2P} n * chi(n); always 0 or 4P."""
    return sum(r * chi.table[r] for r in chi.support)


def ell_condition(p: BrieskornTriple, ell: EllTriple) -> bool:
    """Open-tetrahedron inequalities marking non-vanishing integer limits."""
    _check_range(p, ell)
    f = [Fraction(l, pk) for l, pk in zip(ell.ell, p.p)]
    s = f[0] + f[1] + f[2]
    if not 1 < s < 3:
        return False
    return all(-1 < s - 2 * fk < 1 for fk in f)


def admissible_triples(p: BrieskornTriple) -> tuple:
    """(canonical triples satisfying the open inequalities, their count gamma)."""
    triples = tuple(t for t in enumerate_triples(p) if ell_condition(p, t))
    return triples, len(triples)


def gamma_closed_form(p: BrieskornTriple) -> Rational:
    """Dedekind-sum expression for the count of non-vanishing limits."""
    p1, p2, p3 = p.p
    s = (
        dedekind_sum(p1 * p2, p3)
        + dedekind_sum(p2 * p3, p1)
        + dedekind_sum(p1 * p3, p2)
    )
    return (
        s
        + Fraction(p.P, 12)
        * (1 - Fraction(1, p1**2) - Fraction(1, p2**2) - Fraction(1, p3**2))
        - Fraction(1, 12 * p.P)
        + Fraction(1, 4)
    )


def mordell_count(p: BrieskornTriple) -> int:
    """Lattice points with 0 < l_k < p_k and sum l_k/p_k < 1, counted directly."""
    count = 0
    for l1 in range(1, p.p1):
        for l2 in range(1, p.p2):
            partial = Fraction(l1, p.p1) + Fraction(l2, p.p2)
            if partial >= 1:
                continue
            # l3/p3 < 1 - partial  <=>  l3 < p3 * (1 - partial)
            bound = p.p3 * (1 - partial)
            limit = min(p.p3 - 1, math.ceil(bound) - 1)
            if limit >= 1:
                count += limit
    return count


def l_function_value(chi: PeriodicChi, k: int) -> Rational:
    """L(-2k, chi) = -(2P)^(2k)/(2k+1) * sum_j chi(j) B_{2k+1}(j / 2P), exact.

    The sum runs over the eight-point support since chi vanishes elsewhere.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    two_p = chi.modulus
    total = Fraction(0)
    for r, sign in chi.signed_support:
        total += sign * bernoulli_polynomial(2 * k + 1, Fraction(r, two_p))
    return -Fraction(two_p ** (2 * k), 2 * k + 1) * total


def generating_series(p: BrieskornTriple, truncation: int) -> list:
    """Laurent coefficients of the sign-function generating quotient.

    Expands (z^{p1 p2} - z^{-p1 p2})(z^{p2 p3} - z^{-p2 p3})
    (z^{p1 p3} - z^{-p1 p3}) / (z^P - z^{-P}) about z = 0 and returns the
    coefficients of z^0 .. z^truncation.  For triples with reciprocal sum
    below 1 these equal chi(n) for ell = (1,1,1); for (2,3,5) the expansion
    carries an extra 1/z + z, so the returned list is chi(n) plus 1 at n = 1
    (the 1/z coefficient is checked and dropped).
    """
    if truncation < 1:
        raise ValueError("truncation must be positive")
    a, b, c = p.p1 * p.p2, p.p2 * p.p3, p.p1 * p.p3
    numerator = {0: 1}
    for e in (a, b, c):
        nxt = {}
        for exp, coeff in numerator.items():
            nxt[exp + e] = nxt.get(exp + e, 0) + coeff
            nxt[exp - e] = nxt.get(exp - e, 0) - coeff
        numerator = nxt
    # multiply both parts of the quotient by z^P: f(z) / (z^{2P} - 1)
    shifted = {exp + p.P: coeff for exp, coeff in numerator.items()}
    min_exp = min(shifted)
    if p.is_poincare:
        assert min_exp == -1
    else:
        assert min_exp >= 0
    # 1/(z^{2P} - 1) = -(1 + z^{2P} + z^{4P} + ...) as a power series
    def coefficient(t: int) -> int:
        total = 0
        e = t
        while e >= min_exp:
            total -= shifted.get(e, 0)
            e -= 2 * p.P
        return total

    if p.is_poincare:
        assert coefficient(-1) == 1, "Laurent part must be exactly 1/z"
    return [coefficient(t) for t in range(truncation + 1)]
