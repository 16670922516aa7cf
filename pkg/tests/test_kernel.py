import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neumann_eigen.grid import make_grid
from neumann_eigen.kernel import KernelSpec, assemble, kernel_value

MINUS = KernelSpec(-1, 1.0)
PLUS = KernelSpec(1, math.pi / 2)


def test_kernel_values():
    assert kernel_value(MINUS, 0, 0) == pytest.approx(1 / math.tanh(1), abs=1e-12)
    assert kernel_value(MINUS, 0.3, 0.7) == kernel_value(MINUS, 0.7, 0.3)
    assert kernel_value(PLUS, 0, 1) == pytest.approx(2 / math.pi, abs=1e-12)


@pytest.mark.parametrize("eps, omega", [(1, 1.6), (1, 0.0), (-1, -1.0), (0, 1.0), (1, math.nan)])
def test_invalid_spec(eps, omega):
    with pytest.raises(ValueError):
        KernelSpec(eps, omega)


def test_half_pi_allowed():
    KernelSpec(1, math.pi / 2)


@pytest.mark.parametrize("t, s", [(-0.1, 0.5), (0.5, 1.01)])
def test_outside_unit_square(t, s):
    with pytest.raises(ValueError):
        kernel_value(MINUS, t, s)


def test_assemble_small():
    g = make_grid(3)
    G = assemble(MINUS, g).entries
    assert G[0, 0] == pytest.approx(1 / math.tanh(1), abs=1e-12)
    assert G[0, 2] == pytest.approx(1 / math.sinh(1), abs=1e-12)


@pytest.mark.parametrize("spec", [MINUS, PLUS, KernelSpec(-1, 3.0), KernelSpec(1, 0.4)])
def test_symmetric_nonnegative(spec):
    G = assemble(spec, make_grid(257, [2 / 3])).entries
    assert np.array_equal(G, G.T)
    assert G.min() >= 0


@pytest.mark.parametrize("spec", [MINUS, PLUS, KernelSpec(-1, 2.5), KernelSpec(1, 1.0)])
def test_row_integrals(spec):
    # g = 1 has the constant solution 1/omega^2 under Neumann conditions
    K = assemble(spec, make_grid(1000, [2 / 3]))
    np.testing.assert_allclose(K.row_integrals(), 1 / spec.omega ** 2, atol=1e-4)


def test_row_integral_value_plus():
    K = assemble(PLUS, make_grid(1000, [2 / 3]))
    assert np.max(np.abs(K.row_integrals() - 4 / math.pi ** 2)) < 1e-4


@pytest.mark.parametrize("spec", [MINUS, PLUS])
def test_smoothed_functions_are_flat_at_ends(spec):
    slopes = []
    for n in (201, 401, 801):
        K = assemble(spec, make_grid(n))
        t = K.grid.nodes
        F = K.smooth(np.sin(5 * t) + t ** 2)
        h = t[1] - t[0]
        slopes.append(max(abs(F[1] - F[0]) / h, abs(F[-1] - F[-2]) / h))
    assert slopes[0] / slopes[1] > 1.8 and slopes[1] / slopes[2] > 1.8


def test_smooth_at_matches_nodes():
    K = assemble(MINUS, make_grid(50))
    g = np.cos(K.grid.nodes)
    np.testing.assert_allclose(K.smooth_at(K.grid.nodes, g), K.smooth(g), rtol=0, atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(t=st.floats(0, 1), s=st.floats(0, 1), omega=st.floats(0.05, math.pi / 2))
def test_pointwise_symmetry_and_sign(t, s, omega):
    for spec in (KernelSpec(-1, omega), KernelSpec(1, omega)):
        assert kernel_value(spec, t, s) == kernel_value(spec, s, t)
        assert kernel_value(spec, t, s) >= 0
