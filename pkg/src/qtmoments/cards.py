"""Card-arrangement calculus: expand operator words into weighted diagrams
whose line concatenation produces a set partition.

Each letter of a contributor word gets one card at its level i (the number of
open lines when the letter acts):

    creation card      C_i       weight s                  opens a new line
    annihilation card  A_i_j     weight s t^(i-j) q^(j-1)  ends the j-th line
    intermediate card  I_i_j     weight t^(i-j) q^(j-1)    re-anchors the j-th line
    singleton card     S_i       weight lambda             its own one-point block
                                 (lambda t^i under the T_POWER_N gauge)

Here s stands for sqrt(lambda) and j counts lines from the bottom of the
stack, the bottom line being the most recently opened one.  Ending the j-th
line crosses the j-1 lines below it (counted by q) and passes under the i-j
lines above it (counted by t); this is exactly how the arrangement weight
reproduces lambda^blocks q^crossings t^nestings of the induced partition.

The open-line stack evolves as:

    creation      push a new block at the bottom
    annihilation  element joins block j, line removed
    intermediate  element joins block j, line moved back to the bottom
    singleton     element is its own block, stack untouched

Summing arrangement weights over all contributors of length n gives the n-th
moment; across all contributors the induced partitions enumerate every
partition of {1..n} exactly once.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator

from .fock import OperatorLetter, OperatorWord, ScalarGauge
from .partitions import SetPartition
from .ring import Poly

__all__ = [
    "NotContributor",
    "Card",
    "CardArrangement",
    "enumerate_contributors",
    "contributor_count",
    "expand_arrangements",
    "moment_by_cards",
    "arrangement_record",
]

SOFT_LIMIT = 14


class NotContributor(Exception):
    """The word has zero vacuum expectation, so it has no card arrangements."""


@dataclass(frozen=True)
class Card:
    """One card: its letter kind, its level, and the line choice j (1-based,
    from the bottom) for annihilation/intermediate cards."""

    kind: OperatorLetter
    level: int
    choice: int | None = None

    def __post_init__(self):
        needs_choice = self.kind in (OperatorLetter.ANNIHILATION, OperatorLetter.NUMBER)
        if needs_choice:
            if self.choice is None or not (1 <= self.choice <= self.level):
                raise ValueError(f"invalid line choice for {self.kind} at level {self.level}")
        elif self.choice is not None:
            raise ValueError(f"{self.kind} card takes no line choice")
        if self.level < 0 or (needs_choice and self.level < 1):
            raise ValueError("invalid card level")

    @property
    def name(self) -> str:
        if self.kind is OperatorLetter.CREATION:
            return f"C{self.level}"
        if self.kind is OperatorLetter.SCALAR:
            return f"S{self.level}"
        prefix = "A" if self.kind is OperatorLetter.ANNIHILATION else "I"
        return f"{prefix}{self.level}_{self.choice}"

    def weight(self, gauge: ScalarGauge = ScalarGauge.IDENTITY) -> Poly:
        """The card weight as a monomial (s stands for sqrt(lambda))."""
        if self.kind is OperatorLetter.CREATION:
            return Poly.from_terms([(1, {"s": 1})])
        if self.kind is OperatorLetter.SCALAR:
            exps = {"lambda": 1}
            if gauge is ScalarGauge.T_POWER_N and self.level:
                exps["t"] = self.level
            return Poly.from_terms([(1, exps)])
        exps = {"t": self.level - self.choice, "q": self.choice - 1}
        if self.kind is OperatorLetter.ANNIHILATION:
            exps["s"] = 1
        return Poly.from_terms([(1, {k: v for k, v in exps.items() if v})])


@dataclass(frozen=True)
class CardArrangement:
    """One admissible card choice for a contributor, with its weight (already
    resolved, s^2 -> lambda) and the induced partition."""

    word: OperatorWord
    cards: tuple
    weight: Poly
    partition: SetPartition


def _contributor_letter_stream(n: int, prefix_level: int = 0) -> Iterator[tuple]:
    """DFS over application-order letter tuples satisfying the level rules."""
    # letter order fixes the deterministic enumeration order
    order = (
        OperatorLetter.CREATION,
        OperatorLetter.ANNIHILATION,
        OperatorLetter.NUMBER,
        OperatorLetter.SCALAR,
    )
    def walk(pos: int, level: int, acc: list) -> Iterator[tuple]:
        if pos == n:
            if level == 0:
                yield tuple(acc)
            return
        remaining = n - pos
        for letter in order:
            if letter is OperatorLetter.CREATION:
                if level + 1 > remaining - 1:
                    continue  # cannot come back down to 0 in time
                acc.append(letter)
                yield from walk(pos + 1, level + 1, acc)
                acc.pop()
            elif letter is OperatorLetter.ANNIHILATION:
                if level < 1:
                    continue
                acc.append(letter)
                yield from walk(pos + 1, level - 1, acc)
                acc.pop()
            else:
                if letter is OperatorLetter.NUMBER and level < 1:
                    continue
                if level > remaining - 1:
                    continue
                acc.append(letter)
                yield from walk(pos + 1, level, acc)
                acc.pop()
    yield from walk(0, prefix_level, [])


def enumerate_contributors(n: int) -> Iterator[OperatorWord]:
    """Every length-n word with nonzero vacuum expectation, deterministic order."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > SOFT_LIMIT:
        warnings.warn(f"enumerating contributors of length {n} (4^n search space)")
    for app_letters in _contributor_letter_stream(n):
        yield OperatorWord(tuple(reversed(app_letters)))


def contributor_count(n: int) -> int:
    """Number of contributors of length n (level-sequence count, no expansion)."""
    return sum(1 for _ in _contributor_letter_stream(n))


def _expansion_states(word: OperatorWord) -> Iterator[tuple]:
    """DFS over the line choices of a contributor.

    Yields (cards, block_of_element, q_exp, t_exp, singleton_levels) where
    block_of_element[k] is the 0-based block id of element k+1, q_exp/t_exp
    the accumulated crossing/nesting exponents from annihilation and
    intermediate cards, and singleton_levels the sum of levels of singleton
    cards (the extra t-exponent under the T_POWER_N gauge).
    """
    letters = word.application_order()
    n = len(letters)

    def walk(pos, stack, next_block, cards, owner, q_exp, t_exp, single_lv):
        if pos == n:
            yield tuple(cards), tuple(owner), q_exp, t_exp, single_lv
            return
        letter = letters[pos]
        level = len(stack)
        if letter is OperatorLetter.CREATION:
            cards.append(Card(letter, level))
            owner.append(next_block)
            yield from walk(pos + 1, (next_block,) + stack, next_block + 1,
                            cards, owner, q_exp, t_exp, single_lv)
            cards.pop(); owner.pop()
        elif letter is OperatorLetter.SCALAR:
            cards.append(Card(letter, level))
            owner.append(next_block)
            yield from walk(pos + 1, stack, next_block + 1,
                            cards, owner, q_exp, t_exp, single_lv + level)
            cards.pop(); owner.pop()
        elif letter is OperatorLetter.ANNIHILATION:
            for j in range(1, level + 1):
                cards.append(Card(letter, level, j))
                owner.append(stack[j - 1])
                yield from walk(pos + 1, stack[: j - 1] + stack[j:], next_block,
                                cards, owner, q_exp + j - 1, t_exp + level - j, single_lv)
                cards.pop(); owner.pop()
        else:  # NUMBER -> intermediate card: block re-anchored at the bottom
            for j in range(1, level + 1):
                cards.append(Card(letter, level, j))
                owner.append(stack[j - 1])
                moved = (stack[j - 1],) + stack[: j - 1] + stack[j:]
                yield from walk(pos + 1, moved, next_block,
                                cards, owner, q_exp + j - 1, t_exp + level - j, single_lv)
                cards.pop(); owner.pop()

    yield from walk(0, (), 0, [], [], 0, 0, 0)


def _owner_to_partition(n: int, owner: tuple) -> SetPartition:
    # block ids are created in order of first appearance, which is exactly
    # the restricted-growth normalization
    return SetPartition(n, owner)


def expand_arrangements(
    word: OperatorWord, gauge: ScalarGauge = ScalarGauge.IDENTITY
) -> list:
    """All admissible card arrangements of a contributor, with weights and
    induced partitions.  Raises :class:`NotContributor` otherwise."""
    if not word.is_contributor:
        raise NotContributor(word.to_string())
    n = len(word)
    out = []
    for cards, owner, q_exp, t_exp, single_lv in _expansion_states(word):
        lam = sum(1 for c in cards if c.kind is OperatorLetter.CREATION) + sum(
            1 for c in cards if c.kind is OperatorLetter.SCALAR
        )
        t_total = t_exp + (single_lv if gauge is ScalarGauge.T_POWER_N else 0)
        weight = Poly.from_terms(
            [(1, {"lambda": lam, "q": q_exp, "t": t_total})]
        )
        out.append(
            CardArrangement(
                word=word,
                cards=cards,
                weight=weight,
                partition=_owner_to_partition(n, owner),
            )
        )
    return out


def moment_by_cards(n: int, gauge: ScalarGauge = ScalarGauge.IDENTITY) -> Poly:
    """The n-th moment as the sum of arrangement weights over all contributors."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > 10:
        warnings.warn(f"card expansion at n={n} touches every partition of {n} elements")
    covered = gauge is ScalarGauge.T_POWER_N
    acc: dict = {}
    for app_letters in _contributor_letter_stream(n):
        word = OperatorWord(tuple(reversed(app_letters)))
        lam = sum(
            1 for letter in app_letters
            if letter in (OperatorLetter.CREATION, OperatorLetter.SCALAR)
        )
        for _cards, _owner, q_exp, t_exp, single_lv in _expansion_states(word):
            key = (lam, q_exp, t_exp + (single_lv if covered else 0))
            acc[key] = acc.get(key, 0) + 1
    return Poly.from_terms(
        (count, {"lambda": b, "q": qe, "t": te}) for (b, qe, te), count in acc.items()
    )


def arrangement_record(arr: CardArrangement) -> dict:
    """The JSON-line record used by the CLI dump (cards in application order)."""
    return {
        "word": arr.word.to_string(),
        "cards": [c.name for c in arr.cards],
        "weight": arr.weight.canonical_str(),
        "partition": arr.partition.blocks(),
    }
