from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_state_vector, random_unitary
from qutritgate.errors import InvalidDimensionError, RangeError, ShapeError
from qutritgate.register import (
    PureState,
    apply_local_operator,
    basis_state,
    embed_operator,
    index_of,
    inner_product,
    labels_of,
    make_register,
    state_from_labels,
)

dims_strategy = st.lists(st.integers(min_value=2, max_value=5), min_size=1, max_size=4)


@pytest.mark.parametrize("dims,total", [([3], 3), ([3, 3, 3], 27), ([4, 4, 3], 48)])
def test_total_dim(dims, total):
    assert make_register(dims).total_dim == total


def test_invalid_dimension():
    with pytest.raises(InvalidDimensionError):
        make_register([3, 1])
    with pytest.raises(InvalidDimensionError):
        make_register([4], ["qutrit"])


def test_index_examples():
    r2 = make_register([3, 3])
    assert index_of(r2, (0, 0)) == 0
    assert index_of(r2, (1, 2)) == 1 * 3 + 2
    assert labels_of(make_register([3, 3, 3]), 26) == (2, 2, 2)


def test_index_errors():
    r = make_register([3, 3])
    with pytest.raises(RangeError):
        index_of(r, (3, 0))
    with pytest.raises(RangeError):
        index_of(r, (0,))
    with pytest.raises(RangeError):
        labels_of(r, 9)


@settings(max_examples=50, deadline=None)
@given(dims=dims_strategy, data=st.data())
def test_index_roundtrip(dims, data):
    r = make_register(dims)
    i = data.draw(st.integers(0, r.total_dim - 1))
    assert index_of(r, labels_of(r, i)) == i


def test_basis_state_examples():
    r3 = make_register([3, 3, 3])
    assert basis_state(r3, (0, 0, 0)).amplitudes[0] == 1
    s = basis_state(r3, (1, 1, 1))
    assert np.flatnonzero(s.amplitudes).tolist() == [9 + 3 + 1]
    assert np.flatnonzero(basis_state(make_register([3, 3]), (2, 1)).amplitudes).tolist() == [7]


def test_apply_identity_and_permutation():
    r = make_register([3, 3])
    psi = basis_state(r, (1, 0))
    assert np.array_equal(apply_local_operator(psi, np.eye(3), [0]).amplitudes, psi.amplitudes)
    perm = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    out = apply_local_operator(psi, perm, [0])
    assert np.allclose(out.amplitudes, basis_state(r, (2, 0)).amplitudes, atol=0)


def test_two_site_matches_dense_product(rng):
    r = make_register([3, 3])
    u = random_unitary(rng, 9)
    psi = basis_state(r, (2, 1))
    out = apply_local_operator(psi, u, [0, 1])
    assert np.allclose(out.amplitudes, u @ psi.amplitudes, atol=1e-14)
    # listed order matters: (1, 0) embeds the operator with site 1 as the major digit
    swap = np.zeros((9, 9))
    for x in range(3):
        for y in range(3):
            swap[3 * y + x, 3 * x + y] = 1
    out_rev = apply_local_operator(psi, u, [1, 0])
    assert np.allclose(out_rev.amplitudes, swap @ u @ swap @ psi.amplitudes, atol=1e-14)


def test_shape_error():
    r = make_register([3, 3])
    with pytest.raises(ShapeError):
        apply_local_operator(basis_state(r, (0, 0)), np.eye(4), [0])
    with pytest.raises(ShapeError):
        apply_local_operator(basis_state(r, (0, 0)), np.eye(9), [0, 0])


def test_inner_product_examples():
    r = make_register([3, 3, 3])
    zero = basis_state(r, (0, 0, 0))
    ghz = state_from_labels(r, {(0, 0, 0): 1, (1, 1, 1): 1})
    assert inner_product(zero, zero) == 1
    assert inner_product(zero, basis_state(r, (1, 1, 1))) == 0
    assert inner_product(zero, ghz) == pytest.approx(1 / np.sqrt(2), abs=1e-15)
    with pytest.raises(ShapeError):
        inner_product(zero, basis_state(make_register([3, 3]), (0, 0)))


@settings(max_examples=30, deadline=None)
@given(dims=st.lists(st.integers(2, 4), min_size=2, max_size=4), seed=st.integers(0, 2**31))
def test_unitary_preserves_norm(dims, seed):
    rng = np.random.default_rng(seed)
    r = make_register(dims)
    psi = PureState(random_state_vector(rng, r.total_dim), r)
    site = int(rng.integers(len(dims)))
    out = apply_local_operator(psi, random_unitary(rng, dims[site]), [site])
    assert abs(out.norm - 1) < 1e-12


@settings(max_examples=30, deadline=None)
@given(dims=st.lists(st.integers(2, 4), min_size=3, max_size=4), seed=st.integers(0, 2**31))
def test_disjoint_operators_commute(dims, seed):
    rng = np.random.default_rng(seed)
    r = make_register(dims)
    psi = PureState(random_state_vector(rng, r.total_dim), r)
    a_sites, b_sites = [0, 2], [1]
    ua = random_unitary(rng, dims[0] * dims[2])
    ub = random_unitary(rng, dims[1])
    ab = apply_local_operator(apply_local_operator(psi, ua, a_sites), ub, b_sites)
    ba = apply_local_operator(apply_local_operator(psi, ub, b_sites), ua, a_sites)
    assert np.max(np.abs(ab.amplitudes - ba.amplitudes)) < 1e-12


@settings(max_examples=30, deadline=None)
@given(dims=st.lists(st.integers(2, 5), min_size=1, max_size=4).filter(lambda d: np.prod(d) <= 200), seed=st.integers(0, 2**31))
def test_one_site_embedding_equals_kron(dims, seed):
    rng = np.random.default_rng(seed)
    r = make_register(dims)
    site = int(rng.integers(len(dims)))
    u = random_unitary(rng, dims[site])
    full = reduce(np.kron, [u if s == site else np.eye(d) for s, d in enumerate(dims)])
    psi = PureState(random_state_vector(rng, r.total_dim), r)
    assert np.max(np.abs(apply_local_operator(psi, u, [site]).amplitudes - full @ psi.amplitudes)) < 1e-12
    assert np.max(np.abs(embed_operator(r, u, [site]) - full)) < 1e-14


def test_embed_nonadjacent_matches_tensor_route(rng):
    r = make_register([3, 2, 3, 2])
    u = random_unitary(rng, 6)
    psi = PureState(random_state_vector(rng, r.total_dim), r)
    dense = embed_operator(r, u, [3, 0])
    assert np.max(np.abs(dense @ psi.amplitudes - apply_local_operator(psi, u, [3, 0]).amplitudes)) < 1e-12
