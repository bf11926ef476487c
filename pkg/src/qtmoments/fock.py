"""Truncated one-mode deformed Fock space with polynomial coefficients, plus an
exact-rational multi-mode layer for inner-product, adjointness, commutation and
positivity checks.

One-mode layer
--------------
Vectors are finite sums sum_k c_k f_k with Poly coefficients, where f_k is the
level-k basis vector rescaled by lambda^(-k/2).  In this basis every operator
entry is a lambda-polynomial and no square roots ever materialize:

    Creation      f_k -> lambda * f_{k+1}
    Annihilation  f_k -> [k] * f_{k-1}        (f_0 -> 0)
    Number        f_k -> [k] * f_k
    Scalar        f_k -> lambda * f_k         (IDENTITY gauge)
                  f_k -> lambda t^k * f_k     (T_POWER_N gauge)

The deformed Poisson operator is the sum of the four letters; its vacuum
moments are the coefficient of f_0 after n applications.

Words over the four letters are written with the leftmost character applied
last (operator product order), e.g. "AASNCC" applies two creations first.

Multi-mode layer
----------------
For alphabet size d and level cap n, basis vectors are words over {0..d-1} of
length <= n, and all arithmetic is over exact rationals: the deformed inner
product of two equal-length words u, v with one-particle Gram g is

    sum over permutations sigma of  q^inv(sigma) t^(M - inv(sigma))
        * prod_k g[u_k][v_sigma(k)],      M = m(m-1)/2.

Creation prepends a letter; annihilation removes slot k with weight
q^(k-1) t^(m-k) g[letter][u_k].  This layer is deliberately small (d <= 3,
n <= 4 scale) and exists to verify adjointness and Gram positivity exactly.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .qtnum import qt_number
from .ring import LAMBDA, Poly, Q, T

__all__ = [
    "OperatorLetter",
    "ScalarGauge",
    "OperatorWord",
    "FockVector",
    "TruncationOverflow",
    "apply_letter",
    "apply_word",
    "apply_poisson",
    "vacuum_expectation_word",
    "moment_by_operator",
    "qt_inner_product",
    "inversions",
    "CheckReport",
    "check_commutation",
    "basis_words",
    "word_inner_product",
    "multimode_inner",
    "multimode_create",
    "multimode_annihilate",
    "check_adjointness",
    "multimode_gram",
    "determinant",
    "leading_principal_minors",
    "check_gram_positivity",
]


class OperatorLetter(Enum):
    """The four factors of the deformed Poisson operator."""

    CREATION = "C"
    ANNIHILATION = "A"
    NUMBER = "N"
    SCALAR = "S"

    @property
    def level_step(self) -> int:
        if self is OperatorLetter.CREATION:
            return 1
        if self is OperatorLetter.ANNIHILATION:
            return -1
        return 0


class ScalarGauge(Enum):
    """How the scalar letter acts: lambda*1, or lambda*t^N.

    IDENTITY matches the STRICT nesting statistic, T_POWER_N matches
    COVERED_SINGLETON (see :mod:`qtmoments.partitions`).
    """

    IDENTITY = "identity"
    T_POWER_N = "tpowern"


class TruncationOverflow(Exception):
    """Creation applied at the top truncation level with a nonzero coefficient."""


@dataclass(frozen=True)
class OperatorWord:
    """A product of operator letters; ``letters[0]`` is applied last.

    The level sequence runs in application order: ``levels[0] = 0`` is the
    level before the first (rightmost) letter acts, ``levels[k]`` the level
    after k letters.  A word is a contributor (nonzero vacuum expectation)
    iff the levels never go negative, return to 0, and every Number letter
    acts at level >= 1.
    """

    letters: tuple

    def __post_init__(self):
        for letter in self.letters:
            if not isinstance(letter, OperatorLetter):
                raise TypeError(f"not an OperatorLetter: {letter!r}")

    @classmethod
    def from_string(cls, text: str) -> "OperatorWord":
        return cls(tuple(OperatorLetter(ch) for ch in text.strip().upper()))

    def to_string(self) -> str:
        return "".join(letter.value for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def application_order(self) -> tuple:
        """The letters in the order they act (rightmost first)."""
        return tuple(reversed(self.letters))

    @property
    def levels(self) -> tuple:
        level = 0
        out = [0]
        for letter in self.application_order():
            level += letter.level_step
            out.append(level)
        return tuple(out)

    @property
    def is_contributor(self) -> bool:
        level = 0
        for letter in self.application_order():
            if letter is OperatorLetter.NUMBER and level < 1:
                return False
            level += letter.level_step
            if level < 0:
                return False
        return level == 0

    def __str__(self) -> str:
        return self.to_string()


class FockVector:
    """A vector in the truncated space: coefficients of f_0 .. f_D."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Sequence[Poly] | None = None):
        if dim < 0:
            raise ValueError("dim must be >= 0")
        self.dim = dim
        if coeffs is None:
            self.coeffs = [Poly.zero()] * (dim + 1)
        else:
            if len(coeffs) != dim + 1:
                raise ValueError("need dim+1 coefficients")
            self.coeffs = [Poly._coerce(c) for c in coeffs]

    @classmethod
    def vacuum(cls, dim: int) -> "FockVector":
        v = cls(dim)
        v.coeffs[0] = Poly.one()
        return v

    @classmethod
    def basis(cls, dim: int, k: int) -> "FockVector":
        v = cls(dim)
        v.coeffs[k] = Poly.one()
        return v

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.dim == other.dim and self.coeffs == other.coeffs

    def __add__(self, other: "FockVector") -> "FockVector":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return FockVector(self.dim, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scaled(self, factor) -> "FockVector":
        return FockVector(self.dim, [c * factor for c in self.coeffs])

    def __repr__(self) -> str:
        body = ", ".join(f"f{k}: {c}" for k, c in enumerate(self.coeffs) if not c.is_zero)
        return f"FockVector({body or '0'})"


def apply_letter(
    letter: OperatorLetter, v: FockVector, gauge: ScalarGauge = ScalarGauge.IDENTITY
) -> FockVector:
    """Apply one operator letter to a vector in the rescaled basis."""
    out = FockVector(v.dim)
    if letter is OperatorLetter.CREATION:
        if not v.coeffs[v.dim].is_zero:
            raise TruncationOverflow(f"creation past level {v.dim}")
        for k in range(v.dim):
            c = v.coeffs[k]
            if not c.is_zero:
                out.coeffs[k + 1] = c * LAMBDA
    elif letter is OperatorLetter.ANNIHILATION:
        for k in range(1, v.dim + 1):
            c = v.coeffs[k]
            if not c.is_zero:
                out.coeffs[k - 1] = c * qt_number(k)
    elif letter is OperatorLetter.NUMBER:
        for k in range(1, v.dim + 1):
            c = v.coeffs[k]
            if not c.is_zero:
                out.coeffs[k] = c * qt_number(k)
    else:  # SCALAR
        for k in range(v.dim + 1):
            c = v.coeffs[k]
            if not c.is_zero:
                factor = LAMBDA if gauge is ScalarGauge.IDENTITY else LAMBDA * T**k
                out.coeffs[k] = c * factor
    return out


def apply_word(
    w: OperatorWord, v: FockVector, gauge: ScalarGauge = ScalarGauge.IDENTITY
) -> FockVector:
    """Apply a word, rightmost letter first."""
    for letter in w.application_order():
        v = apply_letter(letter, v, gauge)
    return v


def apply_poisson(v: FockVector, gauge: ScalarGauge = ScalarGauge.IDENTITY) -> FockVector:
    """Apply the deformed Poisson operator (sum of the four letters)."""
    out = apply_letter(OperatorLetter.NUMBER, v, gauge)
    out = out + apply_letter(OperatorLetter.CREATION, v, gauge)
    out = out + apply_letter(OperatorLetter.ANNIHILATION, v, gauge)
    out = out + apply_letter(OperatorLetter.SCALAR, v, gauge)
    return out


def vacuum_expectation_word(
    w: OperatorWord, gauge: ScalarGauge = ScalarGauge.IDENTITY
) -> Poly:
    """Coefficient of the vacuum in w applied to the vacuum; 0 for non-contributors."""
    v = apply_word(w, FockVector.vacuum(len(w) + 1), gauge)
    return v.coeffs[0]


def moment_by_operator(n: int, gauge: ScalarGauge = ScalarGauge.IDENTITY) -> Poly:
    """The n-th vacuum moment of the deformed Poisson operator."""
    if n < 0:
        raise ValueError("n must be non-negative")
    v = FockVector.vacuum(n + 1)
    for _ in range(n):
        v = apply_poisson(v, gauge)
    return v.coeffs[0]


# -- deformed inner product (symbolic) -----------------------------------------


def inversions(perm: Sequence[int]) -> int:
    """Number of pairs i < j with perm[i] > perm[j]."""
    count = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                count += 1
    return count


def qt_inner_product(gram: Sequence[Sequence]) -> Poly:
    """Permutation expansion of the deformed inner product, symbolically in q and t.

    ``gram[i][j]`` is the scalar product of the i-th left vector with the j-th
    right vector (integers or polynomials).  The result is

        sum over sigma of q^inv(sigma) t^(M-inv(sigma)) prod_k gram[k][sigma(k)]

    with M = n(n-1)/2, so t-exponents are never negative.
    """
    n = len(gram)
    if any(len(row) != n for row in gram):
        raise ValueError("gram must be square")
    if n > 9:
        warnings.warn(f"summing over {n}! permutations")
    top = n * (n - 1) // 2
    total = Poly.zero()
    for sigma in itertools.permutations(range(n)):
        prod = Poly.one()
        for k in range(n):
            prod = prod * gram[k][sigma[k]]
            if prod.is_zero:
                break
        if not prod.is_zero:
            inv = inversions(sigma)
            total = total + Q**inv * T ** (top - inv) * prod
    return total


# -- check reports --------------------------------------------------------------


@dataclass
class CheckReport:
    """Outcome of an exact verification: what was checked and what failed."""

    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, message: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(message)

    def __str__(self) -> str:
        status = "ok" if self.passed else f"{len(self.failures)} failure(s)"
        return f"{self.name}: {self.checked} checks, {status}"


def check_commutation(
    depth: int, q: Fraction | None = None, t: Fraction | None = None
) -> CheckReport:
    """Verify (A A* - q A* A) f_k = t^k f_k for 0 <= k < depth.

    Runs on the unscaled ladder (creation raises by one with weight 1,
    annihilation lowers with weight [k]); the identity reduces to
    [k+1] - q [k] = t^k.  Symbolic when q and t are omitted, exact rational
    otherwise.  The identity holds formally for any parameters; positivity
    statements elsewhere are what need |q| < t <= 1.
    """
    report = CheckReport(name="commutation")
    symbolic = q is None and t is None
    if not symbolic and (q is None or t is None):
        raise ValueError("give both q and t, or neither")
    for k in range(depth):
        lhs = qt_number(k + 1) - Q * qt_number(k)
        rhs = T**k
        if symbolic:
            ok = lhs == rhs
            report.record(ok, f"level {k}: {lhs} != {rhs}")
        else:
            point = {"q": Fraction(q), "t": Fraction(t)}
            lv, rv = lhs.eval(point), rhs.eval(point)
            report.record(lv == rv, f"level {k}: {lv} != {rv}")
    return report


# -- multi-mode rational layer ---------------------------------------------------


def basis_words(d: int, n: int) -> list:
    """All words over {0..d-1} of length <= n, ordered by (length, lex)."""
    out = []
    for m in range(n + 1):
        out.extend(itertools.product(range(d), repeat=m))
    return out


def _gram_fraction(gram: Sequence[Sequence]) -> list:
    return [[Fraction(x) for x in row] for row in gram]


def word_inner_product(
    u: Sequence[int], v: Sequence[int], gram: Sequence[Sequence], q: Fraction, t: Fraction
) -> Fraction:
    """Deformed inner product of two basis words (0 when lengths differ)."""
    if len(u) != len(v):
        return Fraction(0)
    m = len(u)
    if m == 0:
        return Fraction(1)
    g = _gram_fraction(gram)
    q, t = Fraction(q), Fraction(t)
    top = m * (m - 1) // 2
    total = Fraction(0)
    for sigma in itertools.permutations(range(m)):
        prod = Fraction(1)
        for k in range(m):
            prod *= g[u[k]][v[sigma[k]]]
            if prod == 0:
                break
        if prod:
            inv = inversions(sigma)
            total += q**inv * t ** (top - inv) * prod
    return total


def multimode_create(i: int, vec: dict, max_level: int) -> dict:
    """Prepend letter i to every word; error past the level cap."""
    out: dict = {}
    for word, coeff in vec.items():
        if coeff == 0:
            continue
        if len(word) >= max_level:
            raise TruncationOverflow(f"creation past level {max_level}")
        new = (i,) + tuple(word)
        out[new] = out.get(new, Fraction(0)) + coeff
    return out


def multimode_annihilate(
    i: int, vec: dict, gram: Sequence[Sequence], q: Fraction, t: Fraction
) -> dict:
    """Remove each slot k with weight q^(k-1) t^(m-k) g[i][slot letter]."""
    g = _gram_fraction(gram)
    q, t = Fraction(q), Fraction(t)
    out: dict = {}
    for word, coeff in vec.items():
        if coeff == 0:
            continue
        m = len(word)
        for k in range(1, m + 1):
            w = q ** (k - 1) * t ** (m - k) * g[i][word[k - 1]]
            if w == 0:
                continue
            new = tuple(word[: k - 1] + word[k:])
            out[new] = out.get(new, Fraction(0)) + coeff * w
    return {w: c for w, c in out.items() if c != 0}


def multimode_inner(
    u_vec: dict, v_vec: dict, gram: Sequence[Sequence], q: Fraction, t: Fraction
) -> Fraction:
    """Sesquilinear extension of the word inner product (real scalars)."""
    total = Fraction(0)
    for u, cu in u_vec.items():
        if cu == 0:
            continue
        for v, cv in v_vec.items():
            if cv == 0:
                continue
            total += cu * cv * word_inner_product(u, v, gram, q, t)
    return total


def check_adjointness(
    d: int, n: int, gram: Sequence[Sequence], q: Fraction, t: Fraction
) -> CheckReport:
    """Verify <A*(xi_i) u | v> = <u | A(xi_i) v> on all basis pairs, exactly."""
    report = CheckReport(name=f"adjointness(d={d}, n={n}, q={q}, t={t})")
    words = basis_words(d, n)
    for i in range(d):
        for u in words:
            if len(u) < n:
                created = multimode_create(i, {u: Fraction(1)}, n)
            else:
                created = {}  # leaves the truncated space; pairs below are level-mismatched
            for v in words:
                lhs = multimode_inner(created, {v: Fraction(1)}, gram, q, t)
                annihilated = multimode_annihilate(i, {v: Fraction(1)}, gram, q, t)
                rhs = multimode_inner({u: Fraction(1)}, annihilated, gram, q, t)
                report.record(
                    lhs == rhs,
                    f"letter {i}, u={u}, v={v}: {lhs} != {rhs}",
                )
    return report


def multimode_gram(
    d: int, n: int, gram: Sequence[Sequence], q: Fraction, t: Fraction
) -> list:
    """Gram matrix of all basis words up to level n, exact rationals."""
    words = basis_words(d, n)
    return [
        [word_inner_product(u, v, gram, q, t) for v in words]
        for u in words
    ]


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination with row pivoting."""
    n = len(matrix)
    work = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if work[r][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            work[k], work[pivot_row] = work[pivot_row], work[k]
            det = -det
        pivot = work[k][k]
        det *= pivot
        for r in range(k + 1, n):
            if work[r][k] != 0:
                factor = work[r][k] / pivot
                for c in range(k, n):
                    work[r][c] -= factor * work[k][c]
    return det


def leading_principal_minors(matrix: Sequence[Sequence[Fraction]]) -> list:
    """Determinants of the leading k-by-k blocks, k = 1..n.

    Each block is eliminated independently; row swaps inside one block do not
    leak into the others, so these really are the minors of the input matrix.
    """
    n = len(matrix)
    return [
        determinant([row[: k + 1] for row in matrix[: k + 1]])
        for k in range(n)
    ]


def check_gram_positivity(
    d: int, n: int, gram: Sequence[Sequence], q: Fraction, t: Fraction
) -> CheckReport:
    """All leading principal minors of the multi-mode Gram matrix are positive."""
    report = CheckReport(name=f"gram positivity(d={d}, n={n}, q={q}, t={t})")
    minors = leading_principal_minors(multimode_gram(d, n, gram, q, t))
    for k, minor in enumerate(minors, start=1):
        report.record(minor > 0, f"leading minor {k} = {minor} not positive")
    return report
