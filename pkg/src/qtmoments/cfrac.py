"""Continued-fraction view of the moment sequences.

A finite-depth J-fraction

    1 / (1 - b_0 z - lam_1 z^2 / (1 - b_1 z - lam_2 z^2 / ( ... )))

with b_n and lam_n taken from Jacobi data reproduces the moment generating
series: the coefficient of z^n is the n-th moment.  Reaching depth h costs at
least 2h powers of z, so depth ceil(order/2) already pins every coefficient
up to z^order; the default adds one spare level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .orthopoly import JacobiParams, jfraction_series_from_arrays

__all__ = [
    "InsufficientDepth",
    "ContinuedFractionSpec",
    "cf_spec",
    "cf_series",
    "render_cf",
]


class InsufficientDepth(Exception):
    """The requested series order can see below the truncation depth."""


@dataclass(frozen=True)
class ContinuedFractionSpec:
    """Truncated J-fraction data: b holds b_0..b_depth, lam holds lam_1..lam_depth."""

    b: tuple
    lam: tuple

    def __post_init__(self):
        if len(self.b) != len(self.lam) + 1:
            raise ValueError("need exactly one more b entry than lam entries")

    @property
    def depth(self) -> int:
        return len(self.lam)


def cf_spec(j: JacobiParams, depth: int) -> ContinuedFractionSpec:
    """Truncate the J-fraction of the Jacobi data at the given depth (>= 1)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return ContinuedFractionSpec(
        b=tuple(j.alpha(h) for h in range(depth + 1)),
        lam=tuple(j.omega(h) for h in range(1, depth + 1)),
    )


def cf_series(spec: ContinuedFractionSpec, order: int) -> list:
    """Series coefficients z^0..z^order of the truncated fraction.

    Independent of the truncation depth once depth >= ceil(order/2); shallower
    truncations would silently drop reachable levels, so they raise.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    needed = (order + 1) // 2
    if spec.depth < needed:
        raise InsufficientDepth(f"order {order} needs depth >= {needed}, got {spec.depth}")
    return jfraction_series_from_arrays(list(spec.b), list(spec.lam), order)


def _entry_str(value) -> str:
    try:
        return value.canonical_str()
    except AttributeError:
        return str(value)


def render_cf(spec: ContinuedFractionSpec) -> str:
    """The truncated fraction as nested text, one level per line."""
    lines = ["1 /"]
    for h in range(spec.depth + 1):
        indent = "  " * (h + 1)
        b_str = _entry_str(spec.b[h])
        if h < spec.depth:
            lam_str = _entry_str(spec.lam[h])
            lines.append(f"{indent}(1 - ({b_str}) z - ({lam_str}) z^2 /")
        else:
            lines.append(f"{indent}(1 - ({b_str}) z" + ")" * (spec.depth + 1))
    return "\n".join(lines)
