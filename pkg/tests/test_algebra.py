"""Algebra operations: worked examples plus the structural property suite
(associativity, d^2 = 0, grading laws, signed/unsigned coherence)."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from uvknot.algebra import (
    Ambient,
    alexander_scalar,
    delta_grading,
    differential,
    gen_C,
    gen_L,
    gen_R,
    gen_U,
    idem,
    is_nonzero_b,
    min_relative_weight,
    pure,
    weight_vector,
)
from uvknot.dacheck import pure_keys
from uvknot.rings import F2_RING, Fp, Z_RING

AMB = Ambient(1, 1, [(1, 2)])
AMBZ = Ambient(1, 1, [(1, 2)], Z_RING)


def test_weight_vector_examples():
    assert weight_vector({0, 2}, 1) == (1, 1)
    assert weight_vector(set(), 1) == (0, 0)
    assert weight_vector({1, 3}, 2) == (2, 1, 1, 0)


def test_min_relative_weight_examples():
    assert min_relative_weight({0, 1}, {0, 2}, 1) == (0, Fraction(1, 2))
    assert min_relative_weight({0, 2}, {0, 2}, 1) == (0, 0)
    assert min_relative_weight({0}, {2}, 1) == (Fraction(1, 2), Fraction(1, 2))


def test_is_nonzero_examples():
    assert is_nonzero_b({0}, {0}, (1, 0), 1)
    assert not is_nonzero_b({2}, {2}, (1, 0), 1)
    # non-integral difference from the minimal weight vanishes trivially
    assert not is_nonzero_b({0}, {2}, (Fraction(3, 2), Fraction(1, 2)), 1)


def test_multiply_examples():
    R1, L1, R2 = gen_R(AMB, 1), gen_L(AMB, 1), gen_R(AMB, 2)
    U1 = gen_U(AMB, 1)
    prod = R1 * L1
    assert ((0b001, 0b001, (2, 0), 0) in prod.terms)  # U1 at I_{0}
    assert prod.terms == {k: v for k, v in U1.terms.items() if k[0] == 0b001}
    assert not (R1 * R2)
    C = gen_C(AMB, (1, 2))
    assert not (C * C)


def test_differential_examples():
    amb2 = Ambient(1, 2, [(1, 2)])
    dC = differential(gen_C(amb2, (1, 2)))
    # U1 U2 at every idempotent permitting it
    assert all(k[2] == (2, 2) for k in dC.terms)
    assert dC
    assert not differential(gen_U(AMB, 1))
    ambz = Ambient(2, 2, [(1, 4), (2, 3)], Z_RING)
    d = differential(gen_C(ambz, (1, 4)) * gen_C(ambz, (2, 3)))
    for (x, y, w2, cf), c in d.terms.items():
        if w2[0]:  # U1 U4 C_{2,3} term
            assert c == 1
        else:      # - C_{1,4} U2 U3 term
            assert c == -1


def test_gradings_examples():
    key_c = (0b010, 0b010, (0, 0), 1)  # C_{1,2} at {1}
    assert delta_grading(AMB, key_c) == -1
    assert alexander_scalar(AMB, key_c, {1}) == 0
    key_u = (0b010, 0b010, (2, 0), 0)  # U1 at {1}
    assert delta_grading(AMB, key_u) == -1
    assert alexander_scalar(AMB, key_u, {1}) == -1
    key_i = (0b010, 0b010, (0, 0), 0)
    assert delta_grading(AMB, key_i) == 0
    assert alexander_scalar(AMB, key_i, {1}) == 0


def _elements(amb, max_w2=3, max_c=1):
    out = []
    for key in pure_keys(amb, max_w2, max_c):
        el = pure(amb, key[0], key[1], key[2], key[3])
        if el:
            out.append((key, el))
    return out


@pytest.mark.parametrize("ring", [F2_RING, Z_RING, Fp(3)])
def test_associativity_exhaustive_small(ring):
    amb = Ambient(1, 2, [(1, 2)], ring)
    els = _elements(amb, 3, 1)
    for (k1, a), (k2, b) in product(els, repeat=2):
        if k1[1] != k2[0]:
            continue
        ab = a * b
        if not ab:
            continue
        for (k3, c) in els:
            if k2[1] != k3[0]:
                continue
            assert (a * b) * c == a * (b * c), (k1, k2, k3)


@pytest.mark.parametrize("ring", [F2_RING, Z_RING])
def test_d_squared_zero(ring):
    amb = Ambient(2, 2, [(1, 3), (2, 4)], ring)
    for key in pure_keys(amb, 2, 2):
        el = pure(amb, key[0], key[1], key[2], key[3])
        if el:
            assert not differential(differential(el)), key


@pytest.mark.parametrize("ring", [F2_RING, Z_RING])
def test_grading_laws(ring):
    amb = Ambient(1, 2, [(1, 2)], ring)
    els = _elements(amb, 3, 1)
    up = {1}
    for (k1, a), (k2, b) in product(els, repeat=2):
        if k1[1] != k2[0]:
            continue
        ab = a * b
        for key in ab.terms:
            assert delta_grading(amb, key) == delta_grading(amb, k1) + delta_grading(amb, k2)
            assert alexander_scalar(amb, key, up) == (
                alexander_scalar(amb, k1, up) + alexander_scalar(amb, k2, up)
            )
        da = differential(a)
        for key in da.terms:
            assert delta_grading(amb, key) == delta_grading(amb, k1) - 1
            assert alexander_scalar(amb, key, up) == alexander_scalar(amb, k1, up)


def test_signed_unsigned_coherence():
    ambz = Ambient(2, 2, [(1, 4), (2, 3)], Z_RING)
    ambf = Ambient(2, 2, [(1, 4), (2, 3)], F2_RING)
    els = _elements(ambz, 2, 2)
    for (k1, a), (k2, b) in product(els, repeat=2):
        if k1[1] != k2[0]:
            continue
        prod_z = a * b
        a2 = pure(ambf, *k1[:3], k1[3])
        b2 = pure(ambf, *k2[:3], k2[3])
        prod_f = a2 * b2
        assert {k for k, c in prod_z.terms.items() if c % 2} == set(prod_f.terms)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_associativity_hypothesis(data):
    amb = Ambient(2, 2, [(1, 3), (2, 4)], Z_RING)
    keys = pure_keys(amb, 2, 1)
    k1 = data.draw(st.sampled_from(keys))
    mids = [k for k in keys if k[0] == k1[1]]
    if not mids:
        return
    k2 = data.draw(st.sampled_from(mids))
    ends = [k for k in keys if k[0] == k2[1]]
    if not ends:
        return
    k3 = data.draw(st.sampled_from(ends))
    a = pure(amb, *k1[:3], k1[3])
    b = pure(amb, *k2[:3], k2[3])
    c = pure(amb, *k3[:3], k3[3])
    assert (a * b) * c == a * (b * c)
