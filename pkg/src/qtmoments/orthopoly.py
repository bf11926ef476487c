"""Monic orthogonal polynomials from three-term recurrences, their moment
sequences via weighted Motzkin paths and J-fraction series, and the exact
verification routines built on top (orthogonality, operator identity,
binomial-to-Poisson limit, Hankel positivity).

A family is described by its Jacobi data: diagonal terms alpha_n (n >= 0) and
super-diagonal terms omega_n (n >= 1), with

    P_0 = 1,   P_1 = x - alpha_0,
    P_{n+1} = (x - alpha_n) P_n - omega_n P_{n-1}.

The moment sequence of the orthogonalizing functional is recovered in two
independent ways that must agree:

  * weighted Motzkin paths: flat step at height h weighs alpha_h, down step
    from height h weighs omega_h, up steps weigh 1 (equivalently the (0,0)
    entry of powers of the tridiagonal array with unit sub-diagonal);
  * the J-fraction  1/(1 - alpha_0 z - omega_1 z^2/(1 - alpha_1 z - ...)),
    expanded as a power series with exact polynomial coefficients.

Presets
-------
    charlier_strict     alpha_n = lambda + [n],      omega_n = lambda [n]
    charlier_t_gauge    alpha_n = lambda t^n + [n],  omega_n = lambda [n]
    ejsmont             alpha_n = [n],               omega_n = [n]
    binomial(m,p; q,t)  alpha_n = m p + (1-2p) [n],
                        omega_n = [n] (m - [n-1]) p (1-p)

charlier_strict is the deformed Poisson family (scalar gauge lambda*1);
charlier_t_gauge is its lambda*t^N sibling whose moments count covered
singletons as nestings.  The binomial family takes rational parameters (its
coefficients are not integral, so it lives outside the symbolic ring) and
clamps omega_n to 0 once [n-1] >= m, after which the measure has finitely
many atoms.  Taking m -> infinity with m p = lambda fixed recovers the
Poisson family; poisson_limit_check verifies this symbolically (with the
1/m denominators cleared) and numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .fock import CheckReport, FockVector, ScalarGauge, apply_poisson, determinant
from .qtnum import qt_number
from .ring import LAMBDA, M, Poly, T, X

__all__ = [
    "JacobiParams",
    "OrthoPolySequence",
    "charlier_strict",
    "charlier_t_gauge",
    "ejsmont",
    "binomial",
    "charlier_strict_specialized",
    "three_term_polys",
    "moment_by_motzkin",
    "moments_by_motzkin",
    "InsufficientMoments",
    "moment_functional",
    "check_orthogonality",
    "check_charlier_fock_identity",
    "LimitReport",
    "poisson_limit_check",
    "jfraction_series",
    "jfraction_series_from_arrays",
    "hankel_determinants",
]


@dataclass(frozen=True)
class JacobiParams:
    """Recurrence data: alpha(n) for n >= 0 and omega(n) for n >= 1.

    The rules return ring elements; symbolic presets return Poly, rationally
    specialized ones return Fraction.  Every consumer here needs only + and *.
    """

    name: str
    alpha: Callable
    omega: Callable

    def one(self):
        """The multiplicative unit of the ring the data lives in."""
        return self.alpha(0) * 0 + 1


def charlier_strict() -> JacobiParams:
    return JacobiParams(
        name="charlier-strict",
        alpha=lambda n: LAMBDA + qt_number(n),
        omega=lambda n: LAMBDA * qt_number(n),
    )


def charlier_t_gauge() -> JacobiParams:
    return JacobiParams(
        name="charlier-tgauge",
        alpha=lambda n: LAMBDA * T**n + qt_number(n),
        omega=lambda n: LAMBDA * qt_number(n),
    )


def ejsmont() -> JacobiParams:
    return JacobiParams(
        name="ejsmont",
        alpha=lambda n: qt_number(n),
        omega=lambda n: qt_number(n),
    )


def binomial(m: Fraction, p: Fraction, q: Fraction, t: Fraction) -> JacobiParams:
    """Rational binomial Jacobi data with the finite-support clamp.

    omega_n is set to exactly 0 whenever [n-1] >= m at the given (q, t);
    from that index on the recurrence truncates and the moments are those of
    a finitely supported measure.
    """
    m, p, q, t = Fraction(m), Fraction(p), Fraction(q), Fraction(t)

    def num(k: int) -> Fraction:
        return qt_number(k).eval({"q": q, "t": t}) if k else Fraction(0)

    def alpha(n: int) -> Fraction:
        return m * p + (1 - 2 * p) * num(n)

    def omega(n: int) -> Fraction:
        if num(n - 1) >= m:
            return Fraction(0)
        return num(n) * (m - num(n - 1)) * p * (1 - p)

    return JacobiParams(name=f"binomial(m={m}, p={p})", alpha=alpha, omega=omega)


def charlier_strict_specialized(lam: Fraction, q: Fraction, t: Fraction) -> JacobiParams:
    """The Poisson family at rational parameters (for numeric comparisons)."""
    lam, q, t = Fraction(lam), Fraction(q), Fraction(t)

    def num(k: int) -> Fraction:
        return qt_number(k).eval({"q": q, "t": t}) if k else Fraction(0)

    return JacobiParams(
        name=f"charlier-strict(lambda={lam})",
        alpha=lambda n: lam + num(n),
        omega=lambda n: lam * num(n),
    )


@dataclass(frozen=True)
class OrthoPolySequence:
    """Monic polynomials P_0..P_n of a recurrence, P_k of degree k in x."""

    params: JacobiParams
    polys: tuple


def three_term_polys(j: JacobiParams, n_max: int) -> OrthoPolySequence:
    """P_0..P_{n_max} computed exactly from the recurrence (symbolic data)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    polys = [Poly.one()]
    if n_max >= 1:
        polys.append(X - j.alpha(0))
    for n in range(1, n_max):
        nxt = (X - j.alpha(n)) * polys[n] - j.omega(n) * polys[n - 1]
        polys.append(nxt)
    return OrthoPolySequence(params=j, polys=tuple(polys))


def moments_by_motzkin(j: JacobiParams, n_max: int) -> list:
    """Moments 0..n_max by the weighted Motzkin path recursion."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    one = j.one()
    out = [one]
    state = {0: one}
    for _ in range(n_max):
        new: dict = {}
        for level, w in state.items():
            new[level + 1] = new.get(level + 1, 0) + w  # up step, weight 1
            new[level] = new.get(level, 0) + w * j.alpha(level)
            if level >= 1:
                new[level - 1] = new.get(level - 1, 0) + w * j.omega(level)
        state = new
        out.append(state.get(0, one * 0))
    return out


def moment_by_motzkin(j: JacobiParams, n: int):
    """The n-th moment of the family (Poly for symbolic data, Fraction otherwise)."""
    return moments_by_motzkin(j, n)[n]


class InsufficientMoments(Exception):
    """The moment list does not reach the x-degree of the polynomial."""


def moment_functional(p: Poly, moments: Sequence):
    """Apply the moment functional: replace x^k linearly by moments[k]."""
    deg = p.degree("x")
    if deg >= len(moments):
        raise InsufficientMoments(f"need moments up to degree {deg}, got {len(moments)}")
    total = Poly.zero()
    for k in range(deg + 1):
        coeff = p.coefficient_of("x", k)
        if not coeff.is_zero:
            total = total + coeff * moments[k]
    return total


def check_orthogonality(j: JacobiParams, n_max: int, moments: Sequence) -> CheckReport:
    """Verify L(P_n P_m) = delta_{nm} prod_{i<=n} omega_i exactly for n,m <= n_max."""
    report = CheckReport(name=f"orthogonality({j.name}, n_max={n_max})")
    seq = three_term_polys(j, n_max).polys
    norms = [Poly.one()]
    for i in range(1, n_max + 1):
        norms.append(norms[-1] * j.omega(i))
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            value = moment_functional(seq[n] * seq[m], moments)
            expected = norms[n] if n == m else Poly.zero()
            report.record(
                value == expected,
                f"L(P_{n} P_{m}) = {value}, expected {expected}",
            )
    return report


def check_charlier_fock_identity(n_max: int) -> CheckReport:
    """Verify P_n(operator) vacuum = lambda^n f_n in the rescaled basis.

    Runs the strict Poisson family against the IDENTITY-gauge operator: the
    recurrence u_{n+1} = (p - alpha_n) u_n - omega_n u_{n-1} applied to
    vectors must land exactly on the scaled basis vectors.
    """
    report = CheckReport(name=f"charlier-fock(n_max={n_max})")
    dim = n_max + 1
    params = charlier_strict()
    prev: FockVector | None = None
    cur = FockVector.vacuum(dim)
    report.record(cur == FockVector.vacuum(dim), "P_0 vacuum is the vacuum")
    for n in range(n_max):
        applied = apply_poisson(cur, ScalarGauge.IDENTITY)
        nxt = applied + cur.scaled(-params.alpha(n))
        if prev is not None:
            nxt = nxt + prev.scaled(-params.omega(n))
        expected = FockVector.basis(dim, n + 1).scaled(LAMBDA ** (n + 1))
        report.record(
            nxt == expected,
            f"P_{n + 1}(operator) vacuum differs from lambda^{n + 1} f_{n + 1}",
        )
        prev, cur = cur, nxt
    return report


@dataclass
class LimitReport:
    """Binomial-to-Poisson limit: symbolic checks plus deviation decay."""

    symbolic: CheckReport
    deviations: dict  # order -> list of (m, |binomial moment - Poisson moment|)
    numeric_ok: bool

    @property
    def passed(self) -> bool:
        return self.symbolic.passed and self.numeric_ok


def poisson_limit_check(
    n_max: int,
    lam: Fraction,
    m_values: Sequence[int],
    q: Fraction = Fraction(1, 3),
    t: Fraction = Fraction(2, 3),
) -> LimitReport:
    """Verify the binomial family converges to the Poisson family as m grows.

    Symbolic part: write lambda = a/b and p = lambda/m.  Clearing the 1/m
    denominators,

        (b m)   * alpha_n = a m + (b m - 2 a) [n]
        (b m)^2 * omega_n = a [n] (m - [n-1]) (b m - a)

    must have leading coefficients a + b [n]  (= b (lambda + [n])) in m and
    a b [n]  (= b^2 lambda [n]) in m^2, with no higher m-terms: exactly the
    statement that alpha_n -> lambda + [n] and omega_n -> lambda [n].  Each
    cleared form is also cross-checked against :func:`binomial` at every
    sampled m.

    Numeric part: at the given rational (q, t, lambda) the absolute deviation
    of each binomial moment from the Poisson moment must strictly decrease
    along m_values whenever it is nonzero.
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if any(Fraction(mv) <= lam for mv in m_values):
        raise ValueError("every m must exceed lambda")
    m_values = sorted(int(mv) for mv in m_values)
    a, b = lam.numerator, lam.denominator

    symbolic = CheckReport(name="poisson-limit-symbolic")
    alpha_scaled = {}
    omega_scaled = {}
    for n in range(n_max + 1):
        num = qt_number(n)
        scaled_a = a * M + (b * M - 2 * a) * num
        alpha_scaled[n] = scaled_a
        symbolic.record(
            scaled_a.coefficient_of("m", 1) == a + b * num and scaled_a.degree("m") <= 1,
            f"alpha_{n}: leading m-term is not lambda + [{n}]",
        )
        if n >= 1:
            scaled_w = a * num * (M - qt_number(n - 1)) * (b * M - a)
            omega_scaled[n] = scaled_w
            symbolic.record(
                scaled_w.coefficient_of("m", 2) == a * b * num
                and scaled_w.degree("m") <= 2,
                f"omega_{n}: leading m^2-term is not lambda [{n}]",
            )

    poisson = charlier_strict_specialized(lam, q, t)
    poisson_moments = moments_by_motzkin(poisson, n_max)
    deviations: dict = {k: [] for k in range(n_max + 1)}
    for mv in m_values:
        p = lam / mv
        binom = binomial(Fraction(mv), p, q, t)
        for n in range(n_max + 1):
            lhs = alpha_scaled[n].eval({"m": mv, "q": q, "t": t}) / (b * mv)
            symbolic.record(
                lhs == binom.alpha(n),
                f"alpha_{n} cleared form mismatch at m={mv}",
            )
            if n >= 1:
                lhs = omega_scaled[n].eval({"m": mv, "q": q, "t": t}) / (b * mv) ** 2
                symbolic.record(
                    lhs == binom.omega(n),
                    f"omega_{n} cleared form mismatch at m={mv}",
                )
        binom_moments = moments_by_motzkin(binom, n_max)
        for k in range(n_max + 1):
            deviations[k].append((mv, abs(binom_moments[k] - poisson_moments[k])))

    numeric_ok = True
    for devs in deviations.values():
        for (_m1, d1), (_m2, d2) in zip(devs, devs[1:]):
            if d1 == 0 and d2 == 0:
                continue
            if not d2 < d1:
                numeric_ok = False
    return LimitReport(symbolic=symbolic, deviations=deviations, numeric_ok=numeric_ok)


# -- truncated power series over ring elements ---------------------------------


def _series_mul(a: list, b: list, order: int) -> list:
    out = [0] * (order + 1)
    for i, ai in enumerate(a):
        if i > order or ai == 0:
            continue
        for k in range(min(order - i, len(b) - 1) + 1):
            bk = b[k]
            if bk != 0:
                out[i + k] = out[i + k] + ai * bk
    return out


def _series_inv_one_minus(w: list, order: int) -> list:
    """Series inverse of 1 - w(z), where w has zero constant term."""
    out = [0] * (order + 1)
    out[0] = 1
    for k in range(1, order + 1):
        acc = 0
        for j in range(1, min(k, len(w) - 1) + 1):
            wj = w[j]
            if wj != 0:
                acc = acc + wj * out[k - j]
        out[k] = acc
    return out


def jfraction_series_from_arrays(b: Sequence, lam: Sequence, order: int) -> list:
    """Coefficients z^0..z^order of 1/(1 - b0 z - lam1 z^2/(1 - b1 z - ...)).

    ``b`` holds b_0..b_depth and ``lam`` holds lam_1..lam_depth.  Depth levels
    beyond order/2 are unreachable within the requested order.
    """
    depth = len(b) - 1
    if len(lam) != depth:
        raise ValueError("need exactly one lam entry per level below the surface")
    inner = [0] * (order + 1)  # series of the level below the deepest: zero
    for h in range(depth, -1, -1):
        w = [0] * (order + 1)
        if order >= 1:
            w[1] = b[h]
        if h < depth and order >= 2:
            tail = _series_mul(inner, [0, 0, lam[h]], order)  # lam[h] is omega_{h+1}
            w = [u + v for u, v in zip(w, tail)]
        inner = _series_inv_one_minus(w, order)
    one = b[0] * 0 + 1 if b else 1
    return [c * one for c in inner]


def jfraction_series(j: JacobiParams, order: int) -> list:
    """Moment series from the J-fraction of the Jacobi data (depth auto-chosen)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    depth = (order + 1) // 2 + 1
    b = [j.alpha(h) for h in range(depth + 1)]
    lam = [j.omega(h) for h in range(1, depth + 1)]
    return jfraction_series_from_arrays(b, lam, order)


def hankel_determinants(moments: Sequence[Fraction], k_max: int) -> list:
    """det[m_{i+j}] for leading blocks of sizes 1..k_max+1 (rational moments)."""
    out = []
    for k in range(k_max + 1):
        block = [[Fraction(moments[i + j]) for j in range(k + 1)] for i in range(k + 1)]
        out.append(determinant(block))
    return out
