"""Constituents (possible worlds) of a family of conditional events.

A table is stored as one pair of bitmasks per event (rows where the event is
true, rows where it is false); bit ``i`` of a mask refers to row ``i`` of the
canonical valuation grid described in :func:`problogic.events.atom_mask`.
The explicit row view is materialized on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

from .conditional import ConditionalEvent, TruthValue3
from .events import check_atom_limit, truth_mask

T, F, V = TruthValue3.TRUE, TruthValue3.FALSE, TruthValue3.VOID


class Row(NamedTuple):
    valuation: dict
    classifications: tuple[TruthValue3, ...]


def iter_bits(mask: int):
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ConstituentTable:
    atoms: tuple[str, ...]
    events: tuple[ConditionalEvent, ...]
    true_masks: tuple[int, ...]
    false_masks: tuple[int, ...]

    @property
    def n_rows(self) -> int:
        return 1 << len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_rows) - 1

    def antecedent_mask(self, j: int) -> int:
        return self.true_masks[j] | self.false_masks[j]

    def union_of_antecedents(self, indices) -> int:
        mask = 0
        for j in indices:
            mask |= self.antecedent_mask(j)
        return mask

    @cached_property
    def h0_mask(self) -> int:
        return self.union_of_antecedents(range(len(self.events)))

    @property
    def h0_index(self) -> frozenset[int]:
        return frozenset(iter_bits(self.h0_mask))

    def valuation(self, i: int) -> dict:
        n = len(self.atoms)
        return {a: not (i >> (n - 1 - k)) & 1 for k, a in enumerate(self.atoms)}

    def classification(self, i: int, j: int) -> TruthValue3:
        bit = 1 << i
        if self.true_masks[j] & bit:
            return T
        if self.false_masks[j] & bit:
            return F
        return V

    @cached_property
    def rows(self) -> tuple[Row, ...]:
        return tuple(
            Row(self.valuation(i),
                tuple(self.classification(i, j) for j in range(len(self.events))))
            for i in range(self.n_rows))

    def partition(self, indices: Sequence[int], within: int | None = None):
        """Group the rows of ``within`` by their classification under ``indices``.

        Returns ``(mask, pattern)`` pairs ordered by lowest row index.  Rows in
        one group are indistinguishable for every event in ``indices``.
        """
        groups = [(self.full_mask if within is None else within, ())]
        for j in indices:
            t, f = self.true_masks[j], self.false_masks[j]
            h = t | f
            refined = []
            for mask, pattern in groups:
                for tv, part in ((T, mask & t), (F, mask & f), (V, mask & ~h)):
                    if part:
                        refined.append((part, pattern + (tv,)))
            groups = refined
        groups.sort(key=lambda g: (g[0] & -g[0]).bit_length())
        return groups


def enumerate_constituents(family: Sequence[ConditionalEvent],
                           atoms: Sequence[str] | None = None) -> ConstituentTable:
    """Classify every valuation of the family's atoms under every event.

    ``atoms`` may name extra atoms to include in the grid; by default the grid
    covers exactly the atoms occurring in ``family``.
    """
    family = tuple(family)
    if not family:
        raise ValueError("cannot enumerate constituents of an empty family")
    names = set(atoms or ())
    for ce in family:
        names.update(ce.atoms)
    names = tuple(sorted(names))
    check_atom_limit(names)
    trues, falses = [], []
    for ce in family:
        h = truth_mask(ce.antecedent, names)
        e = truth_mask(ce.consequent, names)
        trues.append(h & e)
        falses.append(h & ~e)
    return ConstituentTable(names, family, tuple(trues), tuple(falses))


def q_points(table: ConstituentTable, values: Sequence[Fraction]) -> set[tuple[Fraction, ...]]:
    """Constituent points whose convex hull contains every coherent value vector.

    One point per row where some antecedent holds: coordinate ``j`` is 1 when
    event ``j`` is true there, 0 when false, and ``values[j]`` when void.
    """
    values = tuple(Fraction(x) for x in values)
    if len(values) != len(table.events):
        raise ValueError("need one assessed value per event")
    points = set()
    for i in iter_bits(table.h0_mask):
        bit = 1 << i
        points.add(tuple(
            Fraction(1) if table.true_masks[j] & bit
            else Fraction(0) if table.false_masks[j] & bit
            else values[j]
            for j in range(len(values))))
    return points
