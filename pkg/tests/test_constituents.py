import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from problogic.conditional import TruthValue3, eval3, make_conditional
from problogic.constituents import enumerate_constituents, iter_bits, q_points
from problogic.errors import AtomLimitExceeded
from problogic.events import VERUM, And, Atom, Not

from strategies import conditionals

A, B, C = Atom("A"), Atom("B"), Atom("C")
T, F, V = TruthValue3.TRUE, TruthValue3.FALSE, TruthValue3.VOID


def test_conditional_rows():
    table = enumerate_constituents([make_conditional(B, A)])
    assert table.atoms == ("A", "B")
    assert [r.classifications for r in table.rows] == [(T,), (F,), (V,), (V,)]
    assert [r.valuation for r in table.rows] == [
        {"A": True, "B": True}, {"A": True, "B": False},
        {"A": False, "B": True}, {"A": False, "B": False}]
    assert table.h0_index == frozenset({0, 1})


def test_unconditional_rows():
    table = enumerate_constituents([make_conditional(A)])
    assert table.n_rows == 2
    assert [r.classifications for r in table.rows] == [(T,), (F,)]


def test_chain_of_conditionals():
    table = enumerate_constituents([make_conditional(B, A), make_conditional(C, And(A, B))])
    assert table.n_rows == 8
    assert table.rows[0].valuation == {"A": True, "B": True, "C": True}
    assert table.rows[0].classifications == (T, T)
    # (A, not B, C): first event false, second void
    assert table.rows[2].classifications == (F, V)


def test_extra_atoms_widen_the_grid():
    table = enumerate_constituents([make_conditional(A)], atoms=["Z"])
    assert table.atoms == ("A", "Z")
    assert table.n_rows == 4


def test_empty_family_rejected():
    with pytest.raises(ValueError):
        enumerate_constituents([])


def test_atom_limit():
    family = [make_conditional(Atom(f"X{i}")) for i in range(17)]
    with pytest.raises(AtomLimitExceeded):
        enumerate_constituents(family)


class TestQPoints:
    def test_single_unconditional(self):
        table = enumerate_constituents([make_conditional(A)])
        assert q_points(table, [Fraction(1, 2)]) == {(1,), (0,)}

    def test_void_rows_outside_antecedent_dropped(self):
        table = enumerate_constituents([make_conditional(B, A)])
        assert q_points(table, [Fraction(3, 4)]) == {(1,), (0,)}

    def test_void_entry_takes_assessed_value(self):
        table = enumerate_constituents([make_conditional(A), make_conditional(B, A)])
        pts = q_points(table, [Fraction(1, 2), Fraction(3, 4)])
        assert pts == {(1, 1), (1, 0), (0, Fraction(3, 4))}

    def test_value_count_checked(self):
        table = enumerate_constituents([make_conditional(A)])
        with pytest.raises(ValueError):
            q_points(table, [])


class TestProperties:
    @given(st.lists(conditionals, min_size=1, max_size=4))
    def test_rows_partition_valuations(self, family):
        table = enumerate_constituents(family)
        seen = {tuple(sorted(r.valuation.items())) for r in table.rows}
        assert len(seen) == table.n_rows == 2 ** len(table.atoms)
        for j in range(len(family)):
            assert table.true_masks[j] & table.false_masks[j] == 0

    def test_random_classifications_match_eval3(self):
        rng = random.Random(11)
        family = [make_conditional(B, A), make_conditional(Not(C), A | B),
                  make_conditional(And(A, C)), make_conditional(Atom("D"), Not(B))]
        table = enumerate_constituents(family)
        for _ in range(100):
            i, j = rng.randrange(table.n_rows), rng.randrange(len(family))
            assert table.classification(i, j) is eval3(family[j], table.valuation(i))

    @given(st.lists(conditionals, min_size=1, max_size=4))
    def test_verum_antecedents_cover_every_row(self, family):
        family = [make_conditional(ce.consequent) for ce in family]
        table = enumerate_constituents(family)
        assert table.h0_index == frozenset(range(table.n_rows))

    @given(st.lists(conditionals, min_size=1, max_size=4))
    def test_partition_groups_are_uniform(self, family):
        table = enumerate_constituents(family)
        idx = list(range(len(family)))
        covered = 0
        for mask, pattern in table.partition(idx):
            assert covered & mask == 0
            covered |= mask
            for i in iter_bits(mask):
                assert table.rows[i].classifications == pattern
        assert covered == table.full_mask


def test_verum_family_has_no_void():
    table = enumerate_constituents([make_conditional(VERUM), make_conditional(A)])
    assert all(V not in r.classifications for r in table.rows)
