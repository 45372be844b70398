"""Core sequence machinery: apply/enabled/transform and their folds."""

import functools

import pytest
from hypothesis import given, strategies as st

from otcomp import kernel
from otcomp.bounds import DEFAULT_BOUNDS
from otcomp.cells import cchar, cnat
from otcomp.errors import UnknownAttribute, UnknownMethod
from otcomp.values import NOP, Cell, Method


@pytest.fixture(scope="module")
def char():
    return cchar()


# --- identity element -------------------------------------------------------

def test_nop_apply_is_identity(char):
    for st_ in char.enum_states():
        assert kernel.apply(char, NOP, st_) == st_


def test_nop_always_enabled(char):
    assert kernel.enabled(char, NOP, Cell(None))


def test_transform_against_nop_is_identity(char):
    m = Method("putchar", ("a",))
    assert kernel.transform(char, m, NOP) == m


def test_transform_of_nop_stays_nop(char):
    m = Method("putchar", ("a",))
    assert kernel.transform(char, NOP, m) == NOP


# --- method validation ------------------------------------------------------

def test_undeclared_method_rejected(char):
    with pytest.raises(UnknownMethod):
        kernel.apply(char, Method("shove", ("a",)), Cell(None))
    with pytest.raises(UnknownMethod):
        kernel.enabled(char, Method("shove", ("a",)), Cell(None))
    with pytest.raises(UnknownMethod):
        kernel.transform(char, Method("shove", ("a",)), NOP)


def test_unknown_attribute_rejected(char):
    with pytest.raises(UnknownAttribute):
        kernel.observe(char, "nope", (), Cell(None))


# --- sequence folds against independent oracles -----------------------------

def _methods(c):
    return c.enum_methods(DEFAULT_BOUNDS)


@given(st.data())
def test_apply_seq_matches_reduce_oracle(data):
    c = cnat()
    seq = data.draw(st.lists(st.sampled_from(_methods(c)), max_size=5))
    start = data.draw(st.sampled_from(c.enum_states()))
    expect = functools.reduce(lambda s, m: kernel.apply(c, m, s), seq, start)
    assert kernel.apply_seq(c, seq, start) == expect


@given(st.data())
def test_transform_seq_matches_reduce_oracle(data):
    c = cnat()
    m = data.draw(st.sampled_from(_methods(c)))
    seq = data.draw(st.lists(st.sampled_from(_methods(c)), max_size=5))
    expect = functools.reduce(lambda a, o: kernel.transform(c, a, o), seq, m)
    assert kernel.transform_seq(c, m, seq) == expect


def test_empty_sequence_is_legal_and_inert(char):
    assert kernel.legal(char, [], Cell("a"))
    assert kernel.apply_seq(char, [], Cell("a")) == Cell("a")


def test_legal_checks_intermediate_states():
    # A one-shot component: the method is enabled only on the empty cell.
    from otcomp.kernel import Component
    c = Component(
        name="once", method_ctors=frozenset({"nop", "set"}), attributes={},
        initial_state=Cell(None),
        do_fn=lambda m, s: Cell(m.args[0]),
        poss_fn=lambda m, s: s.value is None,
        it_fn=lambda m1, m2: m1,
        enum_methods_fn=lambda b: [NOP],
        enum_states_fn=lambda b: [Cell(None)])
    m = Method("set", (1,))
    assert kernel.legal(c, [m], Cell(None))
    assert not kernel.legal(c, [m, m], Cell(None))


# --- bounded observational equality -----------------------------------------

def test_obs_equal_reflexive(char):
    for s in char.enum_states():
        assert kernel.obs_equal(char, s, s, depth=2)


def test_obs_equal_distinguishes_by_attribute(char):
    assert not kernel.obs_equal(char, Cell("a"), Cell("b"), depth=0)


def test_obs_equal_distinguishes_undefined_from_defined(char):
    # The getter is undefined on the fresh cell but not on a written one.
    assert not kernel.obs_equal(char, Cell(None), Cell("a"), depth=0)


@given(st.data())
def test_obs_equal_symmetric(data):
    c = cchar()
    states = c.enum_states()
    s1 = data.draw(st.sampled_from(states))
    s2 = data.draw(st.sampled_from(states))
    assert kernel.obs_equal(c, s1, s2, 1) == kernel.obs_equal(c, s2, s1, 1)


def test_structural_equality_implies_obs_equal():
    c = cnat()
    for s in c.enum_states():
        assert kernel.obs_equal(c, s, Cell(s.value), depth=2)


def test_enumerations_are_sorted_and_deterministic(char):
    assert char.enum_states() == char.enum_states()
    assert char.enum_methods() == char.enum_methods()
