"""Exact sparse multivariate polynomial arithmetic over arbitrary-precision integers.

A polynomial lives in Z[lambda, t, q, x, s, m] and is stored sparsely as a
mapping from exponent vectors to nonzero integer coefficients.  Terms are kept
in a fixed graded-lexicographic order (total degree first, then exponents with
lambda most significant), so equal polynomials always serialize identically.

Two of the variables are internal bookkeeping devices:

  * ``s`` stands for the square root of ``lambda`` (contract: s^2 = lambda).
    Operator weights may carry odd powers of s mid-computation, but every
    vacuum expectation pairs them up; public results are resolved via
    :meth:`Poly.resolve_half_powers` and never contain s.
  * ``m`` is an auxiliary large-size parameter used only by the binomial
    limit checks (denominators in 1/m are cleared by hand before it enters
    the ring).

Rational values (exact parameter samples) are plain :class:`fractions.Fraction`
objects; evaluation of a polynomial at rational points is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "VARIABLES",
    "Monomial",
    "Poly",
    "MissingVariable",
    "UnresolvedHalfPower",
    "LAMBDA",
    "T",
    "Q",
    "X",
    "S",
    "M",
]

#: Fixed variable order, most significant first.  This order defines the
#: graded-lexicographic comparison used everywhere (canonical strings, JSON).
VARIABLES = ("lambda", "t", "q", "x", "s", "m")

_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_NVARS = len(VARIABLES)
_ZERO = (0,) * _NVARS

_IDX_LAMBDA = _VAR_INDEX["lambda"]
_IDX_S = _VAR_INDEX["s"]

#: A monomial is an exponent vector aligned with ``VARIABLES``.
Monomial = tuple


class MissingVariable(KeyError):
    """Raised when evaluating a polynomial with an incomplete assignment."""


class UnresolvedHalfPower(ValueError):
    """Raised when a polynomial still carries the internal variable ``s``."""


def _grlex_key(mono: Monomial) -> tuple:
    return (sum(mono), mono)


def _mono_from_exps(exps: Mapping[str, int]) -> Monomial:
    vec = [0] * _NVARS
    for name, e in exps.items():
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}")
        if e < 0:
            raise ValueError(f"negative exponent for {name!r}")
        vec[_VAR_INDEX[name]] = e
    return tuple(vec)


def _mono_to_exps(mono: Monomial) -> dict:
    return {VARIABLES[i]: e for i, e in enumerate(mono) if e}


class Poly:
    """Immutable sparse polynomial with big-integer coefficients.

    Construction normalizes away zero coefficients; all arithmetic returns
    new objects, so instances are safe to share across threads or processes.
    Integers mix freely with polynomials in ``+``, ``-`` and ``*``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = coeff
        self._terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls({_ZERO: 1})

    @classmethod
    def constant(cls, c: int) -> "Poly":
        return cls({_ZERO: int(c)})

    @classmethod
    def variable(cls, name: str, power: int = 1) -> "Poly":
        if power < 0:
            raise ValueError("negative power")
        if power == 0:
            return cls.one()
        return cls({_mono_from_exps({name: power}): 1})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Mapping[str, int]]]) -> "Poly":
        """Build from (coefficient, {variable: exponent}) pairs, combining duplicates."""
        acc: dict = {}
        for coeff, exps in terms:
            mono = _mono_from_exps(exps)
            acc[mono] = acc.get(mono, 0) + int(coeff)
        return cls(acc)

    @staticmethod
    def _coerce(value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, int):
            return Poly.constant(value)
        return NotImplemented  # type: ignore[return-value]

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in descending graded-lexicographic order (the canonical order)."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def variables(self) -> set:
        occ = set()
        for mono in self._terms:
            for i, e in enumerate(mono):
                if e:
                    occ.add(VARIABLES[i])
        return occ

    def degree(self, var: str | None = None) -> int:
        """Total degree, or the maximum exponent of one variable.  Zero poly has degree 0."""
        if not self._terms:
            return 0
        if var is None:
            return max(sum(m) for m in self._terms)
        i = _VAR_INDEX[var]
        return max(m[i] for m in self._terms)

    def constant_term(self) -> int:
        return self._terms.get(_ZERO, 0)

    def as_int(self) -> int:
        """The value of a constant polynomial; raises if non-constant."""
        if not self._terms:
            return 0
        if len(self._terms) == 1 and _ZERO in self._terms:
            return self._terms[_ZERO]
        raise ValueError(f"not a constant polynomial: {self!r}")

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- ring arithmetic ---------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            new = out.get(mono, 0) + coeff
            if new:
                out[mono] = new
            elif mono in out:
                del out[mono]
        res = Poly.__new__(Poly)
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        res = Poly.__new__(Poly)
        res._terms = {m: -c for m, c in self._terms.items()}
        return res

    def __sub__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return Poly.zero()
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                new = out.get(mono, 0) + ca * cb
                if new:
                    out[mono] = new
                elif mono in out:
                    del out[mono]
        res = Poly.__new__(Poly)
        res._terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structural operations ----------------------------------------------

    def coefficient_of(self, var: str, power: int) -> "Poly":
        """The coefficient of ``var**power``, as a polynomial in the other variables."""
        i = _VAR_INDEX[var]
        out = {}
        for mono, coeff in self._terms.items():
            if mono[i] == power:
                reduced = mono[:i] + (0,) + mono[i + 1:]
                out[reduced] = coeff
        return Poly(out)

    def substitute(self, var: str, replacement) -> "Poly":
        """Substitute a polynomial (or integer) for one variable, exactly."""
        rep = Poly._coerce(replacement)
        if rep is NotImplemented:
            raise TypeError("replacement must be a Poly or int")
        i = _VAR_INDEX[var]
        powers = {0: Poly.one()}
        out = Poly.zero()
        for mono, coeff in self.sorted_terms():
            e = mono[i]
            if e not in powers:
                # fill the power cache upward from the largest known entry
                k = max(powers)
                acc = powers[k]
                while k < e:
                    acc = acc * rep
                    k += 1
                    powers[k] = acc
            stripped = Poly({mono[:i] + (0,) + mono[i + 1:]: coeff})
            out = out + stripped * powers[e]
        return out

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        """Rename variables (e.g. swap q and t).  The mapping must be injective."""
        perm = list(range(_NVARS))
        targets = set()
        for old, new in mapping.items():
            perm[_VAR_INDEX[old]] = _VAR_INDEX[new]
            targets.add(new)
        if len(targets) != len(mapping):
            raise ValueError("rename mapping must be injective")
        out: dict = {}
        for mono, coeff in self._terms.items():
            vec = [0] * _NVARS
            for i, e in enumerate(mono):
                if e:
                    j = perm[i]
                    if vec[j]:
                        raise ValueError("rename collides with an existing variable")
                    vec[j] = e
            out[tuple(vec)] = coeff
        return Poly(out)

    def resolve_half_powers(self) -> "Poly":
        """Replace s^2 by lambda throughout; raises on any odd power of s."""
        if all(m[_IDX_S] == 0 for m in self._terms):
            return self
        out: dict = {}
        for mono, coeff in self._terms.items():
            e = mono[_IDX_S]
            if e % 2:
                raise UnresolvedHalfPower(
                    f"odd half-power s^{e} cannot be resolved to a lambda power"
                )
            vec = list(mono)
            vec[_IDX_S] = 0
            vec[_IDX_LAMBDA] += e // 2
            mono2 = tuple(vec)
            out[mono2] = out.get(mono2, 0) + coeff
        return Poly(out)

    # -- evaluation ----------------------------------------------------------

    def eval(self, assignment: Mapping[str, Fraction | int]) -> Fraction:
        """Exact rational value at a point covering every variable of the polynomial."""
        values = {}
        for name, v in assignment.items():
            if name not in _VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}")
            values[_VAR_INDEX[name]] = Fraction(v)
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            term = Fraction(coeff)
            for i, e in enumerate(mono):
                if e:
                    if i not in values:
                        raise MissingVariable(VARIABLES[i])
                    term *= values[i] ** e
            total += term
        return total

    # -- serialization ---------------------------------------------------------

    def canonical_str(self) -> str:
        """Deterministic, round-trippable text form (terms in canonical order).

        Refuses to print polynomials still carrying the internal variable s.
        """
        if any(m[_IDX_S] for m in self._terms):
            raise UnresolvedHalfPower("polynomial still contains s; resolve half powers first")
        if not self._terms:
            return "0"
        pieces = []
        for idx, (mono, coeff) in enumerate(self.sorted_terms()):
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(VARIABLES[i])
                elif e > 1:
                    factors.append(f"{VARIABLES[i]}^{e}")
            mag = abs(coeff)
            if factors:
                body = "*".join(factors) if mag == 1 else "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            if idx == 0:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.canonical_str()

    def __repr__(self) -> str:
        try:
            return f"Poly({self.canonical_str()})"
        except UnresolvedHalfPower:
            body = " + ".join(
                f"{c}*{_mono_to_exps(m)}" for m, c in self.sorted_terms()
            )
            return f"Poly[unresolved]({body or '0'})"

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse the canonical text form back into a polynomial.

        Accepts exactly the grammar produced by :meth:`canonical_str`
        (integer coefficients, ``*``-joined factors, ``^`` exponents),
        with arbitrary whitespace.
        """
        stripped = text.strip()
        if stripped == "0":
            return cls.zero()
        # split into signed terms at top level
        terms: list[tuple[int, str]] = []
        sign = 1
        buf = []
        i = 0
        first = True
        while i < len(stripped):
            ch = stripped[i]
            if ch in "+-" and (first or buf):
                if first and not buf:
                    sign = -1 if ch == "-" else 1
                else:
                    terms.append((sign, "".join(buf).strip()))
                    buf = []
                    sign = -1 if ch == "-" else 1
                first = False
                i += 1
                continue
            buf.append(ch)
            first = False
            i += 1
        if buf:
            terms.append((sign, "".join(buf).strip()))
        acc: dict = {}
        for sgn, body in terms:
            if not body:
                raise ValueError(f"empty term in {text!r}")
            coeff = sgn
            exps: dict = {}
            for factor in body.split("*"):
                factor = factor.strip()
                if not factor:
                    raise ValueError(f"empty factor in {text!r}")
                if factor.lstrip("-").isdigit():
                    coeff *= int(factor)
                    continue
                if "^" in factor:
                    name, _, e_str = factor.partition("^")
                    name = name.strip()
                    e = int(e_str)
                else:
                    name, e = factor, 1
                if name not in _VAR_INDEX:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                exps[name] = exps.get(name, 0) + e
            mono = _mono_from_exps(exps)
            acc[mono] = acc.get(mono, 0) + coeff
        return cls(acc)

    def to_json_dict(self) -> dict:
        """JSON form: coefficients as decimal strings, exponents as name->int maps."""
        return {
            "terms": [
                {"coeff": str(coeff), "exps": _mono_to_exps(mono)}
                for mono, coeff in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Poly":
        acc: dict = {}
        for entry in data["terms"]:
            mono = _mono_from_exps(entry["exps"])
            acc[mono] = acc.get(mono, 0) + int(entry["coeff"])
        return cls(acc)

    def terms(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())


# Handy singletons for building expressions.
LAMBDA = Poly.variable("lambda")
T = Poly.variable("t")
Q = Poly.variable("q")
X = Poly.variable("x")
S = Poly.variable("s")
M = Poly.variable("m")
