import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kreinframes import j_adjoint, j_complement, j_projection, make_subspace, q_projection, validate_symmetry
from kreinframes.errors import DimensionMismatch, NotRegular
from kreinframes.oracle import random_definite_subspace, random_regular_subspace
from kreinframes.subspace import DEGENERATE, INDEFINITE, POSITIVE, TRIVIAL, image, pinv_in_metric, whole_space

from conftest import space_from

E3 = np.eye(3)


def test_example_vectors_span_maximal_positive_plane(d3):
    M = make_subspace(d3, [np.array([1, 1, -1001.0]), np.array([10, -1 / 200, -5])])
    assert M.k == 2
    assert M.definiteness == POSITIVE
    assert M.is_maximal_definite
    np.testing.assert_allclose(M.restricted_gram, [[1002001, 5015.005], [5015.005, 124.999975]], rtol=1e-12)


def test_neutral_line_is_degenerate(d3):
    M = make_subspace(d3, [np.array([1, 1, 0.0])])
    assert M.definiteness == DEGENERATE
    assert not M.is_regular
    np.testing.assert_allclose(M.restricted_gram, [[0.0]], atol=1e-15)


def test_whole_plane_is_indefinite(d2):
    M = make_subspace(d2, [np.eye(2)[0], np.eye(2)[1]])
    assert M.definiteness == INDEFINITE and M.is_regular
    np.testing.assert_allclose(M.restricted_gram, np.diag([1, -1]))


def test_dependent_spanning_set_is_reduced(d3):
    M = make_subspace(d3, [E3[0], 2 * E3[0], E3[2]])
    assert M.k == 2
    with pytest.raises(DimensionMismatch):
        make_subspace(d3, [np.ones(2)])


def test_trivial_subspace(d3):
    M = make_subspace(d3, [])
    assert M.definiteness == TRIVIAL and M.is_trivial
    assert M.positive_margin is None and M.negative_margin is None


def test_complement_examples(d3):
    M = make_subspace(d3, [E3[0], E3[1]])
    assert j_complement(d3, M).same_span(make_subspace(d3, [E3[2]]))
    assert j_complement(d3, make_subspace(d3, [])).same_span(whole_space(d3))
    L = make_subspace(d3, [np.array([1, 1, 0.0])])
    assert j_complement(d3, L).contains(np.array([1, 1, 0.0]))


def test_j_projection_examples(d3):
    P = j_projection(d3, make_subspace(d3, [E3[0], E3[1]])).matrix
    np.testing.assert_allclose(P @ np.array([3.0, -2.0, 7.0]), [3, -2, 0])
    np.testing.assert_allclose(j_projection(d3, whole_space(d3)).matrix, E3, atol=1e-14)
    with pytest.raises(NotRegular):
        j_projection(d3, make_subspace(d3, [np.array([1, 1, 0.0])]))


def test_metric_projection_examples(d2, d3):
    np.testing.assert_allclose(q_projection(d2, None, make_subspace(d2, [np.eye(2)[0]])).matrix, np.diag([1, 0]))
    Q = q_projection(d3, validate_symmetry(d3, d3.canonical_J), make_subspace(d3, [np.array([1, 1, 0.0])])).matrix
    np.testing.assert_allclose(Q @ np.array([3.0, 1.0, 5.0]), [2, 2, 0], atol=1e-14)
    np.testing.assert_allclose(q_projection(d3, None, whole_space(d3)).matrix, E3, atol=1e-14)


def test_literal_product_identity_fails_on_a_tilted_line(d2):
    """The product of metric projections maps onto J M, so it cannot equal P_M."""
    M = make_subspace(d2, [np.array([2.0, 1.0])])
    JM = image(d2, d2.canonical_J, M)
    P = j_projection(d2, M).matrix
    QQ = q_projection(d2, None, JM).matrix @ q_projection(d2, None, M).matrix
    assert np.linalg.norm(QQ - P) > 0.1 * np.linalg.norm(P)
    np.testing.assert_allclose(pinv_in_metric(QQ, d2.j_gram), P, atol=1e-12)


@st.composite
def space_and_subspace(draw):
    n = draw(st.integers(1, 7))
    space = space_from(n, draw(st.integers(0, n)), draw(st.integers(0, 2**31)))
    return space, random_regular_subspace(space, draw(st.integers(0, 2**31)))


@given(space_and_subspace())
def test_projection_roles(sm):
    space, M = sm
    P = j_projection(space, M)
    Q = q_projection(space, None, M)
    assert P.is_valid(space) and Q.is_valid(space, space.j_gram)
    np.testing.assert_allclose(j_adjoint(space, P.matrix), P.matrix, atol=1e-7 * np.linalg.norm(P.matrix))


@given(space_and_subspace())
def test_complement_is_range_of_i_minus_p(sm):
    space, M = sm
    Mc = j_complement(space, M)
    assert M.k + Mc.k == space.dim
    assert Mc.is_regular
    I_P = np.eye(space.dim) - j_projection(space, M).matrix
    np.testing.assert_allclose(j_projection(space, Mc).matrix, I_P, atol=1e-7 * max(1, np.linalg.norm(I_P)))
    both = make_subspace(space, np.concatenate([M.basis, Mc.basis], axis=1))
    assert both.k == space.dim


@given(st.integers(1, 6), st.integers(0, 2**31), st.sampled_from("+-"))
def test_definite_subspaces_have_positive_margin(n, seed, sign):
    space = space_from(n, (n + 1) // 2 if sign == "+" else n // 2, seed)
    if (space.n_plus if sign == "+" else space.n_minus) == 0:
        return
    M = random_definite_subspace(space, seed, sign)
    assert M.is_regular and M.is_definite and M.is_maximal_definite
    assert M.margin > 0
    w = np.linalg.eigvalsh(M.restricted_gram)
    assert (w > 0).all() if sign == "+" else (w < 0).all()
