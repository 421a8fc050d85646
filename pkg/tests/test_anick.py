from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confweyl.anick import (
    anick_delta_closed,
    anick_delta_morse,
    bar_derivation,
    bar_differential,
    cell_is_chain,
    chain_to_cell,
    enumerate_chains,
    homotopy_f,
    homotopy_g,
    is_chain,
    matched_edge,
    parse_cell,
    parse_chain,
    render_chain,
    render_combination,
)
from confweyl.checks import (
    _delta_of_combination,
    _fdg,
    _sample_cells,
    check_chain_kill,
    check_matching,
)
from confweyl.coeffalg import AlgebraElement


def A(k, n):
    return AlgebraElement.word(k, n)


def test_is_chain_examples():
    assert is_chain("v(2)v(1)v(0)", 2)
    assert not is_chain("v(0)v(1)", 1)
    assert not is_chain("v(1)v(0)v(2)", 2)


def test_is_chain_low_degrees():
    assert is_chain((), -1)
    assert is_chain((0,), 0)
    assert is_chain((7,), 0)
    assert not is_chain((1, 2), 0)
    assert is_chain((1, 0), 1)
    assert not is_chain((1, 0), 2)


def test_is_chain_matches_closed_form():
    # closed form: i₁..iₙ ≥ 1, i_{n+1} ≥ 0, word length n+1
    import itertools
    for length in range(1, 5):
        for word in itertools.product(range(0, 4), repeat=length):
            for deg in range(0, length + 1):
                expect = (len(word) == deg + 1
                          and all(i >= 1 for i in word[:deg]))
                assert is_chain(word, deg) == expect, (word, deg)


def test_enumerate_chains_examples():
    assert enumerate_chains(2, 2) == [(1, 0), (1, 1), (2, 0)]
    assert enumerate_chains(1, 2) == [(0,), (1,), (2,)]
    assert enumerate_chains(3, 2) == [(1, 1, 0)]


def test_enumerate_chains_agrees_with_is_chain():
    import itertools
    for degree in (1, 2, 3):
        listed = set(enumerate_chains(degree, 4))
        for tup in itertools.product(range(0, 5), repeat=degree):
            member = is_chain(tup, degree - 1) and sum(tup) <= 4
            assert (tup in listed) == member, (tup, degree)


def test_bar_differential_examples():
    d = bar_differential(((0, 1), (0, 0)))
    assert d == {
        ((0, 0),): AlgebraElement.letter(1) - AlgebraElement.one(),
        ((1, 1),): AlgebraElement.scalar(-1),
    }
    assert bar_differential(((0, 5),)) == {(): AlgebraElement.letter(5)}
    # v(0)v(1)·[v(2)] - [nf(v(0)v(1)v(2))]: the merged slot expands linearly
    d2 = bar_differential(((1, 1), (0, 2)))
    assert d2 == {
        ((0, 2),): A(1, 1),
        ((2, 3),): AlgebraElement.scalar(-1),
        ((1, 2),): AlgebraElement.scalar(-1),
    }


def test_matched_edge_examples():
    partner, direction, weight = matched_edge(((1, 1),))
    assert partner == ((0, 0), (0, 1)) and direction == "up" and weight == -1
    assert matched_edge(((0, 2), (0, 3))) is None
    partner, direction, weight = matched_edge(((0, 1), (1, 1)))
    assert partner == ((0, 1), (0, 0), (0, 1)) and direction == "up"
    # and the split cell points back down
    back = matched_edge(((0, 1), (0, 0), (0, 1)))
    assert back[0] == ((0, 1), (1, 1)) and back[1] == "down"


def test_matching_property_suite():
    assert check_matching()["passed"]


def test_merge_weight_invertibility_guard():
    from confweyl.anick import MatchingError, _merge_weight

    # an edge absent from the bar differential is rejected loudly
    with pytest.raises(MatchingError):
        _merge_weight(((0, 1), (0, 2)), ((0, 9),))


def test_critical_cells_are_exactly_chain_cells():
    for cell in _sample_cells(3, 4, 3):
        assert (matched_edge(cell) is None) == cell_is_chain(cell)


def test_delta_reference_values():
    assert anick_delta_morse((2, 3)) == {
        (3,): AlgebraElement.letter(2),
        (5,): -AlgebraElement.letter(0),
        (4,): AlgebraElement.scalar(-2),
    }
    assert anick_delta_morse((1, 0)) == {
        (0,): AlgebraElement.letter(1) - AlgebraElement.one(),
        (1,): -AlgebraElement.letter(0),
    }
    assert anick_delta_morse((1, 1, 0)) == {
        (1, 0): AlgebraElement.letter(1),
        (2, 0): -AlgebraElement.letter(0),
        (1, 1): AlgebraElement.letter(0),
    }
    for chain in [(2, 3), (1, 0), (1, 1, 0)]:
        assert anick_delta_closed(chain) == anick_delta_morse(chain)


def test_delta_degree_one():
    assert anick_delta_closed((4,)) == {(): AlgebraElement.letter(4)}
    assert anick_delta_morse((0,)) == {(): AlgebraElement.letter(0)}


chains_23 = st.one_of(
    st.tuples(st.integers(1, 5), st.integers(0, 5)),
    st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(0, 4)),
    st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 3)),
)


@given(chains_23)
@settings(max_examples=60, deadline=None)
def test_morse_equals_closed(chain):
    assert anick_delta_morse(chain) == anick_delta_closed(chain)


@given(chains_23)
@settings(max_examples=40, deadline=None)
def test_delta_squared_zero(chain):
    assert _delta_of_combination(anick_delta_closed(chain)) == {}


def test_delta_squared_worked_instance():
    # δ₂(δ₃[1|1|0]) = 0 after v(1)v(1) and v(1)v(0) are normal-formed
    assert _delta_of_combination(anick_delta_closed((1, 1, 0))) == {}


def test_homotopy_g_examples():
    assert homotopy_g((3,)) == {((0, 3),): AlgebraElement.one()}
    # degree 2 carries one correction cell
    assert homotopy_g((3, 2)) == {
        ((0, 3), (0, 2)): AlgebraElement.one(),
        ((0, 0), (0, 5)): -AlgebraElement.one(),
    }
    g3 = homotopy_g((2, 1, 1))
    assert g3 == {
        ((0, 2), (0, 1), (0, 1)): AlgebraElement.one(),
        ((0, 0), (0, 3), (0, 1)): -AlgebraElement.one(),
        ((0, 2), (0, 0), (0, 2)): -AlgebraElement.one(),
        ((0, 0), (0, 2), (0, 2)): AlgebraElement.one(),
    }


def test_homotopy_f_examples():
    assert homotopy_f(((0, 4), (0, 2))) == {(4, 2): AlgebraElement.one()}
    assert homotopy_f(((0, 6),)) == {(6,): AlgebraElement.one()}
    assert homotopy_f(((0, 0), (0, 1))) == {}
    assert homotopy_f(((1, 5),)) == {(5,): AlgebraElement.letter(0)}


@given(chains_23)
@settings(max_examples=30, deadline=None)
def test_fdg_equals_delta(chain):
    assert _fdg(chain) == anick_delta_closed(chain)


def test_g_is_a_chain_map():
    # d∘g = g∘δ in the bar complex (the property that pins g's correction terms)
    for chain in [(2, 3), (1, 0), (1, 1, 0), (2, 1, 1), (3, 1, 2)]:
        lhs = {}
        for cell, coeff in homotopy_g(chain).items():
            for y, c2 in bar_differential(cell).items():
                term = coeff * c2
                prev = lhs.get(y)
                s = prev + term if prev is not None else term
                if s.is_zero():
                    lhs.pop(y, None)
                else:
                    lhs[y] = s
        rhs = {}
        for tgt, coeff in anick_delta_closed(chain).items():
            for cell, c2 in homotopy_g(tgt).items():
                term = coeff * c2
                prev = rhs.get(cell)
                s = prev + term if prev is not None else term
                if s.is_zero():
                    rhs.pop(cell, None)
                else:
                    rhs[cell] = s
        assert lhs == rhs, chain


def test_chain_killing_property():
    assert check_chain_kill(max_degree=3, max_sum=5)["passed"]


def test_fg_is_identity_on_chains():
    from confweyl.checks import check_fg_identity

    assert check_fg_identity(max_degree=3, max_sum=6)["passed"]


def test_bar_derivation_examples():
    assert bar_derivation(((0, 2), (0, 1), (0, 1))) == {
        ((0, 1), (0, 1), (0, 1)): Fraction(-2),
        ((0, 2), (0, 0), (0, 1)): Fraction(-1),
        ((0, 2), (0, 1), (0, 0)): Fraction(-1),
    }
    assert bar_derivation(((0, 0),)) == {}
    assert bar_derivation(((0, 2), (0, 3))) == {
        ((0, 1), (0, 3)): Fraction(-2),
        ((0, 2), (0, 2)): Fraction(-3),
    }


def test_chain_text_forms():
    assert parse_chain("[2|1|0]") == (2, 1, 0)
    assert parse_chain("[]") == ()
    assert render_chain((2, 1, 0)) == "[2|1|0]"
    assert parse_cell("[v(1)|v(0)v(2)]") == ((0, 1), (1, 2))
    with pytest.raises(ValueError):
        parse_cell("[v(1)v(2)]")  # not a normal word
    combo = anick_delta_morse((2, 3))
    assert render_combination(combo, render_chain) == "v(2)*[3] - 2*[4] - v(0)*[5]"
