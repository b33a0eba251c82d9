import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magicwit.bell import (
    Behavior,
    BellInequality,
    behavior_from_state,
    catalog_cglmp,
    catalog_svetlichny_r2,
    catalog_tilted_chsh,
    correlators_from_behavior,
    evaluate,
    fourier_coefficients,
    local_bound,
)
from magicwit.errors import ResourceLimitError


def random_behavior(rng, outcomes, settings):
    table = rng.uniform(0.0, 1.0, size=outcomes + settings)
    table /= table.sum(axis=tuple(range(len(outcomes))), keepdims=True)
    return Behavior(outcomes, settings, table)


def uniform_behavior(outcomes, settings):
    table = np.full(outcomes + settings, 1.0 / np.prod(outcomes))
    return Behavior(outcomes, settings, table)


def test_inequality_validation():
    with pytest.raises(ValueError):
        BellInequality((2,), (2, 2), np.zeros((2, 2, 2)))
    with pytest.raises(ValueError):
        BellInequality((2, 2), (2, 2), np.zeros((2, 2, 2)))
    with pytest.raises(ValueError):
        BellInequality((2, 2), (2, 2), np.full((2, 2, 2, 2), np.inf))


def test_behavior_validation():
    bad = np.full((2, 2), 0.6)
    with pytest.raises(ValueError):
        Behavior((2,), (2,), bad)
    neg = np.array([[1.1, -0.1], [0.5, 0.5]])
    with pytest.raises(ValueError):
        Behavior((2,), (2,), neg)


def test_fourier_of_constant_is_delta():
    coeffs = np.ones((3, 3, 2, 2))
    form = fourier_coefficients(BellInequality((3, 3), (2, 2), coeffs))
    want = np.zeros((3, 3, 2, 2), dtype=complex)
    want[0, 0, :, :] = 1.0
    assert np.max(np.abs(form.coeffs - want)) <= 1e-12


def test_fourier_hermiticity_for_real_coefficients():
    rng = np.random.default_rng(0)
    ineq = BellInequality((3, 3), (2, 2), rng.uniform(-1, 1, size=(3, 3, 2, 2)))
    f = fourier_coefficients(ineq).coeffs
    for k1, k2 in itertools.product(range(3), repeat=2):
        assert np.allclose(f[k1, k2], np.conj(f[(-k1) % 3, (-k2) % 3]))


@pytest.mark.parametrize("outcomes", [(2, 2), (3, 3), (2, 2, 2)])
def test_dft_round_trip(outcomes):
    rng = np.random.default_rng(42)
    settings = (2,) * len(outcomes)
    for _ in range(100):
        ineq = BellInequality(outcomes, settings, rng.uniform(-1, 1, size=outcomes + settings))
        p = random_behavior(rng, outcomes, settings)
        lhs = np.sum(fourier_coefficients(ineq).coeffs * correlators_from_behavior(p))
        assert abs(lhs.imag) <= 1e-9
        assert abs(lhs.real - evaluate(ineq, p)) <= 1e-9


def test_correlators_uniform_behavior():
    c = correlators_from_behavior(uniform_behavior((3, 3), (2, 2)))
    want = np.zeros((3, 3, 2, 2), dtype=complex)
    want[0, 0] = 1.0
    assert np.max(np.abs(c - want)) <= 1e-12


def test_correlators_perfectly_correlated_qutrits():
    table = np.zeros((3, 3, 2, 2))
    for a in range(3):
        table[a, a, :, :] = 1.0 / 3.0
    c = correlators_from_behavior(Behavior((3, 3), (2, 2), table))
    for k, l in itertools.product(range(3), repeat=2):
        want = 1.0 if (k + l) % 3 == 0 else 0.0
        assert abs(c[k, l, 0, 0] - want) <= 1e-12


def test_correlators_reduce_to_parity_for_qubits():
    rng = np.random.default_rng(3)
    p = random_behavior(rng, (2, 2), (2, 2))
    c = correlators_from_behavior(p)
    for x1, x2 in itertools.product(range(2), repeat=2):
        parity = sum(
            (-1.0) ** (a1 + a2) * p.table[a1, a2, x1, x2]
            for a1, a2 in itertools.product(range(2), repeat=2)
        )
        assert abs(c[1, 1, x1, x2] - parity) <= 1e-12


def _zbasis():
    return np.eye(2, dtype=complex)


def test_behavior_from_state_computational_basis():
    p = behavior_from_state(np.array([1.0, 0.0]), [[_zbasis()]])
    assert p.table[0, 0] == pytest.approx(1.0)


def test_behavior_from_state_bell_pair_zz():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    p = behavior_from_state(bell, [[_zbasis()], [_zbasis()]])
    assert p.table[0, 0, 0, 0] == pytest.approx(0.5)
    assert p.table[1, 1, 0, 0] == pytest.approx(0.5)
    assert p.table[0, 1, 0, 0] == pytest.approx(0.0)


def _eigenbasis(op):
    _, vecs = np.linalg.eigh(op)
    return vecs[:, ::-1]


def test_behavior_from_state_chsh_optimal_angles():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    alice = [_eigenbasis(sz), _eigenbasis(sx)]
    bob = [_eigenbasis((sz + sx) / np.sqrt(2)), _eigenbasis((sz - sx) / np.sqrt(2))]
    p = behavior_from_state(bell, [alice, bob])
    assert evaluate(catalog_tilted_chsh(0.0), p) == pytest.approx(2 * np.sqrt(2))


def test_behavior_from_state_rejects_non_projective():
    skew = np.array([[1.0, 1.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        behavior_from_state(np.array([1.0, 0.0]), [[skew]])


def test_evaluate_zero_inequality():
    p = uniform_behavior((2, 2), (2, 2))
    ineq = BellInequality((2, 2), (2, 2), np.zeros((2, 2, 2, 2)))
    assert evaluate(ineq, p) == 0.0


def test_evaluate_shape_guard():
    p = uniform_behavior((2, 2), (2, 2))
    ineq = BellInequality((3, 3), (2, 2), np.zeros((3, 3, 2, 2)))
    with pytest.raises(ValueError):
        evaluate(ineq, p)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
def test_tilted_on_deterministic_zero_behavior(alpha):
    table = np.zeros((2, 2, 2, 2))
    table[0, 0, :, :] = 1.0
    p = Behavior((2, 2), (2, 2), table)
    assert evaluate(catalog_tilted_chsh(alpha), p) == pytest.approx(alpha + 2.0)


def test_tilted_correlator_weights():
    form = fourier_coefficients(catalog_tilted_chsh(0.8)).coeffs
    for x1, x2 in itertools.product(range(2), repeat=2):
        assert form[1, 1, x1, x2] == pytest.approx((-1.0) ** (x1 * x2))
        want_marginal = 0.4 if x1 == 0 else 0.0
        assert form[1, 0, x1, x2] == pytest.approx(want_marginal)
        assert form[0, 1, x1, x2] == pytest.approx(0.0)


def test_tilted_alpha_domain():
    catalog_tilted_chsh(0.0)
    catalog_tilted_chsh(2.0)
    with pytest.raises(ValueError):
        catalog_tilted_chsh(-0.1)
    with pytest.raises(ValueError):
        catalog_tilted_chsh(2.1)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
def test_local_bound_tilted(alpha):
    assert local_bound(catalog_tilted_chsh(alpha)) == pytest.approx(2.0 + alpha)


def test_local_bound_svetlichny_r2():
    assert local_bound(catalog_svetlichny_r2()) == pytest.approx(6.0)


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_local_bound_cglmp(d):
    assert local_bound(catalog_cglmp(d)) == pytest.approx(2.0)


def test_cglmp_d2_is_a_chsh_variant():
    f = fourier_coefficients(catalog_cglmp(2)).coeffs
    weights = [f[1, 1, x1, x2].real for x1, x2 in itertools.product(range(2), repeat=2)]
    assert sorted(np.abs(weights)) == pytest.approx([1.0, 1.0, 1.0, 1.0])
    assert np.prod(weights) == pytest.approx(-1.0)  # exactly one sign flip
    assert np.max(np.abs(f[0, 1])) <= 1e-12 and np.max(np.abs(f[1, 0])) <= 1e-12


def test_local_bound_budget_guard():
    ineq = BellInequality((2, 2), (2, 2), np.zeros((2, 2, 2, 2)))
    with pytest.raises(ResourceLimitError):
        local_bound(ineq, budget=3)


def _relabel(ineq, rng):
    coeffs = ineq.coeffs.copy()
    n = ineq.parties
    for party, (d, m) in enumerate(zip(ineq.outcomes, ineq.settings)):
        out_perm = rng.permutation(d)
        coeffs = np.take(coeffs, out_perm, axis=party)
        set_perm = rng.permutation(m)
        coeffs = np.take(coeffs, set_perm, axis=n + party)
    return BellInequality(ineq.outcomes, ineq.settings, coeffs)


@pytest.mark.parametrize(
    "ineq",
    [catalog_tilted_chsh(0.7), catalog_cglmp(3), catalog_svetlichny_r2()],
    ids=lambda i: i.name,
)
def test_local_bound_relabeling_invariance(ineq):
    base = local_bound(ineq)
    rng = np.random.default_rng(17)
    for _ in range(10):
        assert local_bound(_relabel(ineq, rng)) == pytest.approx(base)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_local_bound_dominates_every_deterministic_point(seed):
    rng = np.random.default_rng(seed)
    ineq = BellInequality((2, 3), (2, 2), rng.uniform(-1, 1, size=(2, 3, 2, 2)))
    bound = local_bound(ineq)
    plans_a = list(itertools.product(range(2), repeat=2))
    plans_b = list(itertools.product(range(3), repeat=2))
    for pa in plans_a:
        for pb in plans_b:
            val = sum(
                ineq.coeffs[pa[x1], pb[x2], x1, x2]
                for x1, x2 in itertools.product(range(2), repeat=2)
            )
            assert val <= bound + 1e-12
