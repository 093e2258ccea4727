import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from putget.tensors import (
    DEFAULT_TOL,
    Morphism,
    TensorType,
    Tolerance,
    WireError,
    basis_effect,
    basis_state,
    cap,
    cup,
    partial_trace,
    scalar,
    swap,
)

dims = st.integers(min_value=1, max_value=4)
seeds = st.integers(min_value=0, max_value=10**6)


def rand_morphism(rng, dom: TensorType, cod: TensorType) -> Morphism:
    shape = (cod.dim, dom.dim)
    return Morphism(dom, cod, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def test_type_concatenation_and_dim():
    t = TensorType((2, 3))
    u = TensorType((4,))
    assert (t @ u).factors == (2, 3, 4)
    assert (t @ u).dim == 24
    assert TensorType.unit().dim == 1
    assert t @ TensorType.unit() == t


def test_morphism_shape_validation():
    t = TensorType((2,))
    with pytest.raises(WireError):
        Morphism(t, t, np.zeros((3, 2)))
    with pytest.raises(WireError):
        Morphism(t, t, np.zeros((2, 2, 2)))


def test_compose_boundary_mismatch():
    f = TensorType((2,)).identity()
    g = TensorType((3,)).identity()
    with pytest.raises(WireError):
        f >> g


def test_kron_convention_leftmost_most_significant():
    # |i> (x) |j> on 2 (x) 3 lands at index 3i + j
    for i in range(2):
        for j in range(3):
            v = basis_state(2, i) @ basis_state(3, j)
            expected = np.zeros(6)
            expected[3 * i + j] = 1
            assert np.allclose(v.array[:, 0], expected)


def test_cup_cap_loop_is_dimension():
    # cap . cup = sum_ii <ii|jj> = d
    for d in range(1, 9):
        loop = cup(d) >> cap(d)
        assert loop.dom == TensorType(())
        assert abs(loop.array[0, 0] - d) < 1e-12


def test_snake_equations():
    for d in range(1, 9):
        wire = TensorType((d,))
        one = wire.identity()
        left = (one @ cup(d)) >> (cap(d) @ one)
        right = (cup(d) @ one) >> (one @ cap(d))
        assert left.distance(one) < 1e-12
        assert right.distance(one) < 1e-12


@given(dims, dims, seeds)
@settings(max_examples=40, deadline=None)
def test_swap_is_natural_and_involutive(a, b, seed):
    rng = np.random.default_rng(seed)
    ta, tb = TensorType((a,)), TensorType((b,))
    f = rand_morphism(rng, ta, ta)
    g = rand_morphism(rng, tb, tb)
    s = ta.swap(tb)
    # naturality: swap ; (g (x) f) = (f (x) g) ; swap
    assert (s >> (g @ f)).distance((f @ g) >> s) < 1e-9
    assert (s >> tb.swap(ta)).distance((ta @ tb).identity()) < 1e-12


@given(dims, dims, dims, seeds)
@settings(max_examples=40, deadline=None)
def test_dagger_is_contravariant(a, b, c, seed):
    rng = np.random.default_rng(seed)
    ta, tb, tc = TensorType((a,)), TensorType((b,)), TensorType((c,))
    f = rand_morphism(rng, ta, tb)
    g = rand_morphism(rng, tb, tc)
    assert (f >> g).dagger().distance(g.dagger() >> f.dagger()) < 1e-9
    assert f.dagger().dagger().distance(f) == 0


@given(dims, dims, dims, seeds)
@settings(max_examples=40, deadline=None)
def test_tensor_respects_composition(a, b, c, seed):
    rng = np.random.default_rng(seed)
    ta, tb, tc = TensorType((a,)), TensorType((b,)), TensorType((c,))
    f1 = rand_morphism(rng, ta, tb)
    f2 = rand_morphism(rng, tb, tc)
    g1 = rand_morphism(rng, tc, ta)
    g2 = rand_morphism(rng, ta, tb)
    lhs = (f1 @ g1) >> (f2 @ g2)
    rhs = (f1 >> f2) @ (g1 >> g2)
    assert lhs.distance(rhs) < 1e-9


def test_partial_trace_full_endomap_gives_trace():
    rng = np.random.default_rng(7)
    t = TensorType((3,))
    f = rand_morphism(rng, t, t)
    traced = partial_trace(f, (0,))
    assert traced.dom == TensorType(())
    assert abs(traced.array[0, 0] - np.trace(f.array)) < 1e-12


def test_partial_trace_over_one_factor():
    rng = np.random.default_rng(8)
    a, b = TensorType((2,)), TensorType((3,))
    f = rand_morphism(rng, a, a)
    g = rand_morphism(rng, b, b)
    # tracing out the second factor of f (x) g leaves tr(g) * f
    traced = partial_trace(f @ g, (1,))
    assert traced.distance(complex(np.trace(g.array)) * f) < 1e-9


def test_partial_trace_requires_aligned_factors():
    f = Morphism(TensorType((2, 3)), TensorType((3, 2)), np.zeros((6, 6)))
    with pytest.raises(WireError):
        partial_trace(f, (0,))  # dom factor 0 is 2, cod factor 0 is 3
    g = (TensorType((2, 2))).identity()
    with pytest.raises(WireError):
        partial_trace(g, (5,))


def test_scalar_and_effects():
    z = scalar(2 + 1j)
    assert z.array.shape == (1, 1)
    picked = basis_state(4, 2) >> basis_effect(4, 2)
    missed = basis_state(4, 2) >> basis_effect(4, 1)
    assert abs(picked.array[0, 0] - 1) < 1e-12
    assert abs(missed.array[0, 0]) < 1e-12


def test_tolerance_threshold_combines_absolute_and_relative():
    tol = Tolerance(absolute=1e-9, relative=1e-6)
    assert tol.threshold(0.0) == pytest.approx(1e-9)
    assert tol.threshold(100.0) == pytest.approx(1e-9 + 1e-4)
    assert DEFAULT_TOL.threshold(1.0) == pytest.approx(2e-9)


def test_distance_and_arithmetic():
    t = TensorType((2,))
    one = t.identity()
    assert one.distance(one) == 0
    doubled = one + one
    assert doubled.distance(2.0 * one) < 1e-12
    assert (doubled - one).distance(one) < 1e-12
    assert one.norm() == pytest.approx(np.sqrt(2))


def test_swap_function_matches_method():
    a, b = TensorType((2,)), TensorType((3,))
    assert swap(a, b).distance(a.swap(b)) == 0


def test_grid_str_smoke():
    text = str(cup(2))
    assert "I" in text or "->" in text
