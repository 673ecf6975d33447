"""Weight-3/2 theta series, transformation data and Eichler-integral limits.

The theta series attached to each periodic sign function is modular of
weight 3/2 under an explicit D x D transformation matrix.  Its Eichler
integral is only nearly modular: at rationals it has finite limiting values
(computable as finite sums) and a divergent asymptotic tail built from
L-values, both of which are exposed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from .chi import (
    BrieskornTriple,
    EllTriple,
    PeriodicChi,
    build_chi,
    canonicalize,
    enumerate_triples,
    l_function_value,
    weighted_sum,
)
from .exactmath import DEFAULT_CONTEXT, PrecisionContext, ensure_finite, to_mpf


def t_exponent(p: BrieskornTriple, ell: EllTriple) -> Fraction:
    """Exponent r with diagonal T-entry exp(pi i r): (P/2)(1 + sum l/p)^2 mod 2."""
    s = 1 + sum(Fraction(l, pk) for l, pk in zip(ell.ell, p.p))
    return (Fraction(p.P, 2) * s * s) % 2


def _sign_of_sinpi(x: Fraction) -> int:
    # sign of sin(pi x) for non-integral rational x
    return -1 if math.floor(x) % 2 else 1


@dataclass(frozen=True)
class SEntry:
    """One transformation-matrix entry sign * sqrt(32/P) * prod sin(pi r_j).

    ``angles`` are the reduced arguments r_j in [0, 1); ``sign`` collects the
    parity sign and the sine signs so the product over angles is the entry's
    magnitude.  ``value`` is the numeric entry at context precision.
    """

    sign: int
    angles: tuple
    value: object


@dataclass(frozen=True)
class ModularData:
    """S-matrix and T-exponents over the canonical triples of one manifold."""

    triple: BrieskornTriple
    triples: tuple
    s: tuple
    t_exponents: tuple

    def index(self, ell: EllTriple) -> int:
        return self.triples.index(canonicalize(self.triple, ell))

    def s_entry(self, ell: EllTriple, ellp: EllTriple) -> SEntry:
        return self.s[self.index(ell)][self.index(ellp)]

    def s_value(self, ell: EllTriple, ellp: EllTriple):
        return self.s_entry(ell, ellp).value

    def t_exponent_of(self, ell: EllTriple) -> Fraction:
        return self.t_exponents[self.index(ell)]


def _s_entry_exact(p: BrieskornTriple, ell: EllTriple, ellp: EllTriple):
    l, lp = ell.ell, ellp.ell
    cross = (
        (l[1] * lp[2] - l[2] * lp[1]) * p.p1
        + (l[2] * lp[0] - l[0] * lp[2]) * p.p2
        + (l[0] * lp[1] - l[1] * lp[0]) * p.p3
    )
    parity = 1 + p.P + sum((a + b) * c for a, b, c in zip(l, lp, p.cofactors)) + cross
    sign = -1 if parity % 2 else 1
    angles = []
    for j in range(3):
        x = Fraction(p.P * l[j] * lp[j], p.p[j] ** 2)
        frac = x % 1
        if frac != 0:  # integral argument means the sine, hence the entry, is 0
            sign *= _sign_of_sinpi(x)
        angles.append(frac)
    return sign, tuple(angles)


@lru_cache(maxsize=None)
def _modular_data_cached(p: BrieskornTriple, digits: int) -> ModularData:
    ctx = PrecisionContext(digits)
    triples = enumerate_triples(p)
    with ctx.workdps():
        scale = mp.sqrt(mp.mpf(32) / p.P)
        rows = []
        for ell in triples:
            row = []
            for ellp in triples:
                sign, angles = _s_entry_exact(p, ell, ellp)
                value = sign * scale
                for a in angles:
                    value *= mp.sinpi(to_mpf(a))
                row.append(SEntry(sign, angles, ensure_finite(+value)))
            rows.append(tuple(row))
    return ModularData(
        triple=p,
        triples=triples,
        s=tuple(rows),
        t_exponents=tuple(t_exponent(p, ell) for ell in triples),
    )


def modular_data(p: BrieskornTriple, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ModularData:
    """S-matrix (exact sign/angle data plus numeric values) and T-exponents."""
    return _modular_data_cached(p, ctx.decimal_digits)


def _theta_cutoff(p: BrieskornTriple, im_tau: float, tol_log10: float) -> int:
    # least n with exp(-pi*im_tau*n^2/(2P)) * n < tol / (4P), in the monotone range
    target = tol_log10 - math.log10(4 * p.P)
    decay = math.pi * im_tau / (2 * p.P) * math.log10(math.e)

    def small_enough(n: int) -> bool:
        return -decay * n * n + math.log10(n) < target

    n = max(2, math.isqrt(int(p.P / (math.pi * im_tau))) + 2)
    while not small_enough(n):
        n *= 2
    return n


def theta_eval(
    p: BrieskornTriple,
    ell: EllTriple,
    tau,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
):
    """Theta series (1/2) sum_n n chi(n) q^{n^2/4P} at tau in the upper half plane.

    Truncated where the geometric majorant exp(-pi Im(tau) n^2 / 2P) * n
    drops below tolerance / 4P.
    """
    chi = build_chi(p, ell)
    with ctx.workdps():
        tau = mp.mpc(tau)
        if not mp.im(tau) > 0:
            raise ValueError("tau must lie in the upper half plane")
        n_max = _theta_cutoff(
            p, float(mp.im(tau)), -(ctx.decimal_digits - 10)
        )
        total = mp.mpc(0)
        two_p = chi.modulus
        for r, sign in chi.signed_support:
            n = r
            while n <= n_max:
                total += sign * n * mp.expjpi(tau * n * n / (2 * p.P))
                n += two_p
        return ensure_finite(+total)


def eichler_limit(
    p: BrieskornTriple,
    ell: EllTriple,
    m: int,
    n: int,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
):
    """Limiting value of the Eichler integral at tau -> m/n, gcd(m, n) = 1.

    Evaluates the finite sum over 0 <= j <= P*n of
    chi(j) (1 - j/(P n)) exp(pi i m j^2 / (2 P n)); the phase arguments are
    reduced exactly in rational arithmetic before evaluation.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(m, n) != 1:
        raise ValueError("m and n must be coprime")
    chi = build_chi(p, ell)
    pn = p.P * n
    with ctx.workdps():
        total = mp.mpc(0)
        two_p = chi.modulus
        for r, sign in chi.signed_support:
            j = r
            while j <= pn:
                weight = Fraction(pn - j, pn)
                if weight:
                    arg = Fraction(m * (j * j % (4 * pn)), 2 * pn) % 2
                    total += sign * to_mpf(weight) * mp.expjpi(to_mpf(arg))
                j += two_p
        return ensure_finite(+total)


def eichler_integer_data(p: BrieskornTriple, ell: EllTriple):
    """Exact form of the integer-point limit: (amplitude, phase exponent).

    The limit at integer N equals amplitude * exp(pi i r N) with amplitude
    -(sum n chi(n)) / 2P (hence 0 or -2) and r the T-exponent.
    """
    chi = build_chi(p, ell)
    amplitude = -Fraction(weighted_sum(chi), 2 * p.P)
    return amplitude, t_exponent(p, ell)


def phi_hat(
    p: BrieskornTriple,
    ell: EllTriple,
    z,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
):
    """Lower-half-plane companion sum_n chi(n) e^{n^2 pi i z/2P} erfc(n sqrt(-pi y/P)).

    Converges for Im z < 0 and tends to the Eichler limit as z approaches a
    rational from below.  Truncated via the erfc tail bound
    erfc(t) <= exp(-t^2)/(t sqrt(pi)).
    """
    chi = build_chi(p, ell)
    with ctx.workdps():
        z = mp.mpc(z)
        y = mp.im(z)
        if not y < 0:
            raise ValueError("z must lie in the lower half plane")
        c = mp.sqrt(-mp.pi * y / p.P)
        log_tol = float(mp.log(ctx.tolerance))
        # |term(n)| <= exp(-n^2 pi|y|/2P) / (n c sqrt(pi)); stop once the
        # geometric tail starting at n is below tolerance
        decay = float(mp.pi * (-y) / (2 * p.P))
        log_c = float(mp.log(c * mp.sqrt(mp.pi)))

        def tail_small(n: int) -> bool:
            bound = -decay * n * n - math.log(n) - log_c
            gap = decay * (2 * n + 1)
            spread = math.log1p(1 / max(gap, 1e-300)) if gap < 1 else 0.0
            return bound + spread < log_tol

        total = mp.mpc(0)
        two_p = chi.modulus
        supports = list(chi.signed_support)
        block = 0
        while True:
            done = True
            for r, sign in supports:
                n = r + block * two_p
                total += sign * mp.expjpi(z * n * n / (2 * p.P)) * mp.erfc(n * c)
            probe = (block + 1) * two_p + 1
            if not tail_small(probe):
                done = False
            block += 1
            if done:
                break
        return ensure_finite(+total)


@dataclass(frozen=True)
class EichlerTail:
    """Asymptotic tail of the nearly modular expansion.

    ``coefficients[k]`` is L(-2k, chi)/k!; evaluation multiplies term k by
    (pi i / (2 P N))^k.  The series is asymptotic, not convergent: K is the
    caller's truncation choice.
    """

    two_p: int
    coefficients: tuple

    def evaluate(self, n: int, k_max: int | None = None, ctx: PrecisionContext = DEFAULT_CONTEXT):
        if k_max is None:
            k_max = len(self.coefficients) - 1
        if k_max >= len(self.coefficients):
            raise ValueError("tail order exceeds stored coefficients")
        with ctx.workdps():
            scale = mp.mpc(0, 1) * mp.pi / (self.two_p * n)
            total = mp.mpc(0)
            power = mp.mpc(1)
            for k in range(k_max + 1):
                total += to_mpf(self.coefficients[k]) * power
                power *= scale
            return ensure_finite(+total)

    def term(self, n: int, k: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
        with ctx.workdps():
            scale = mp.mpc(0, 1) * mp.pi / (self.two_p * n)
            return ensure_finite(+(to_mpf(self.coefficients[k]) * scale**k))


def eichler_tail(p: BrieskornTriple, ell: EllTriple, order: int) -> EichlerTail:
    """Tail coefficients L(-2k, chi)/k! for k = 0..order, exact."""
    chi = build_chi(p, ell)
    coeffs = tuple(
        l_function_value(chi, k) / math.factorial(k) for k in range(order + 1)
    )
    return EichlerTail(two_p=2 * p.P, coefficients=coeffs)


@dataclass(frozen=True)
class NearlyModularExpansion:
    dominant: object
    tail: object
    residual: object


def nearly_modular_expansion(
    p: BrieskornTriple,
    ell: EllTriple,
    n: int,
    k_max: int,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> NearlyModularExpansion:
    """Dominant S-transformed part plus order-k_max tail of the limit at 1/n.

    dominant = -sqrt(n/i) * sum_l' S[ell][l'] * (integer-point limit at -n);
    only triples with non-vanishing integer limits contribute.  residual is
    |finite-sum value - dominant - tail|.
    """
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    if n < 1:
        raise ValueError("n must be positive")
    md = modular_data(p, ctx)
    i = md.index(ell)
    with ctx.workdps():
        dominant = mp.mpc(0)
        for j, ellp in enumerate(md.triples):
            amplitude, r = eichler_integer_data(p, ellp)
            if amplitude == 0:
                continue
            phase = mp.expjpi(to_mpf((r * -n) % 2))
            dominant += md.s[i][j].value * to_mpf(amplitude) * phase
        dominant *= -mp.sqrt(mp.mpf(n)) * mp.expjpi(mp.mpf(-0.25))
        tail = eichler_tail(p, ell, k_max).evaluate(n, k_max, ctx)
        exact = eichler_limit(p, ell, 1, n, ctx)
        residual = abs(exact - dominant - tail)
        return NearlyModularExpansion(
            dominant=ensure_finite(+dominant),
            tail=ensure_finite(+tail),
            residual=ensure_finite(+residual),
        )
