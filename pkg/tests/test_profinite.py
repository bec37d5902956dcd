import json

import pytest
from hypothesis import given, strategies as st

from heisenberg_solenoid.errors import IncompatibleOperandsError, NotCoherentError
from heisenberg_solenoid.finite import FiniteHeisenberg
from heisenberg_solenoid.group import HeisenbergPoint, compose, inverse
from heisenberg_solenoid.profinite import (GroupProductElement, count_coherent,
                                           enumerate_coherent, from_profinite,
                                           group_coherence_check, phi_embed, to_profinite,
                                           v_density_witness)

big = st.integers(-10 ** 9, 10 ** 9)


@st.composite
def int_points(draw, n):
    return HeisenbergPoint(tuple(draw(st.lists(big, min_size=n, max_size=n))),
                           tuple(draw(st.lists(big, min_size=n, max_size=n))), draw(big))


@st.composite
def setups(draw):
    n = draw(st.integers(1, 2))
    return (draw(st.sampled_from([2, 3])), draw(st.integers(1, 4)),
            draw(int_points(n)), draw(int_points(n)))


def values(g):
    return tuple(int(c) for c in g.coords())


def test_embed_identity():
    w = phi_embed(HeisenbergPoint.identity(2), 3, 3)
    assert all(g.is_identity() for g in w.levels)


def test_embed_example():
    w = phi_embed(HeisenbergPoint((1,), (2,), 3), 2, 3)
    assert [values(g) for g in w.levels] == [(1, 0, 1), (1, 2, 3), (1, 2, 3)]
    assert group_coherence_check(w)


def test_coherence_examples():
    ok = GroupProductElement.from_triples(2, [((1,), (0,), 0), ((3,), (0,), 0)])
    bad = GroupProductElement.from_triples(2, [((1,), (0,), 0), ((2,), (0,), 0)])
    assert group_coherence_check(ok)
    assert not group_coherence_check(bad)
    assert group_coherence_check(GroupProductElement.from_triples(2, [((0,), (0,), 0)] * 3))


@given(setups())
def test_embed_is_homomorphism(s):
    r, L, g, h = s
    assert phi_embed(compose(g, h), r, L) == phi_embed(g, r, L) * phi_embed(h, r, L)
    assert phi_embed(inverse(g), r, L) == phi_embed(g, r, L).inverse()


@given(setups())
def test_levelwise_matches_finite_tables(s):
    # Independent arithmetic: the numpy index tables of H_n(Z/r^l Z).
    r, L, g, h = s
    w = phi_embed(g, r, L) * phi_embed(h, r, L)
    for l in range(1, L + 1):
        G = FiniteHeisenberg(g.n, r ** l)
        i = G.index_of(phi_embed(g, r, L).level(l))
        j = G.index_of(phi_embed(h, r, L).level(l))
        assert G.index_of(w.level(l)) == int(G.mul(i, j)[0])


@given(setups())
def test_radic_coordinates_agree_with_levels(s):
    r, L, g, h = s
    a, b = phi_embed(g, r, L), phi_embed(h, r, L)
    assert to_profinite(a * b) == compose(to_profinite(a), to_profinite(b))
    assert from_profinite(to_profinite(a)) == a


@given(setups())
def test_density_witness(s):
    r, L, g, _ = s
    w = phi_embed(g, r, L)
    assert phi_embed(v_density_witness(w), r, L) == w


def test_witness_at_depth_one():
    w = GroupProductElement.from_triples(5, [((1,), (2,), 3)])
    assert v_density_witness(w) == HeisenbergPoint((1,), (2,), 3)


def test_incoherent_inputs_raise():
    bad = GroupProductElement.from_triples(2, [((1,), (0,), 0), ((2,), (0,), 0)])
    with pytest.raises(NotCoherentError):
        to_profinite(bad)
    with pytest.raises(NotCoherentError):
        v_density_witness(bad)


def test_mismatched_depths():
    with pytest.raises(IncompatibleOperandsError):
        phi_embed(HeisenbergPoint((1,), (1,), 1), 2, 2) * phi_embed(HeisenbergPoint((1,), (1,), 1), 2, 3)


@pytest.mark.parametrize("L,expected", [(1, 8), (2, 64), (3, 512)])
def test_coherent_count(L, expected):
    assert count_coherent(1, 2, L) == expected == 2 ** (3 * L)


def test_enumerate_coherent_is_all_distinct():
    els = list(enumerate_coherent(1, 2, 2))
    assert len(els) == len(set(els)) == 64
    assert all(group_coherence_check(w) for w in els)


@given(setups())
def test_json_round_trip(s):
    r, L, g, _ = s
    w = phi_embed(g, r, L)
    assert GroupProductElement.from_json(json.loads(json.dumps(w.to_json()))) == w
