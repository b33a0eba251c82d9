"""Bell inequalities as coefficient tensors over outcomes and settings.

The probability-form tensor I[a_1..a_n, x_1..x_n] is the canonical
representation; the correlator (Fourier) form is derived from it.  The
transform pair is fixed so that

    sum_{k,x} It[k,x] * C[k,x]  ==  sum_{a,x} I[a,x] * p(a|x)

with C[k,x] = sum_a exp(+2*pi*i * sum_j k_j a_j / d_j) p(a|x), which ties
C to the unitary observables U = sum_a omega^a M_a.  The coefficient
transform therefore carries the conjugate kernel.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from magicwit.algebra import is_unitary, require_prime
from magicwit.errors import ResourceLimitError

DEFAULT_STRATEGY_BUDGET = 1 << 24


@dataclass(frozen=True)
class BellInequality:
    """Coefficient tensor of a linear Bell functional, probability form."""

    outcomes: tuple[int, ...]
    settings: tuple[int, ...]
    coeffs: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        outs = tuple(int(x) for x in self.outcomes)
        sets = tuple(int(x) for x in self.settings)
        if not outs or len(outs) != len(sets):
            raise ValueError("outcomes and settings must list one entry per party")
        if any(x < 1 for x in outs + sets):
            raise ValueError("outcome and setting counts must be positive")
        c = np.array(self.coeffs, dtype=float)
        if c.shape != outs + sets:
            raise ValueError(f"coefficient tensor must have shape {outs + sets}, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "outcomes", outs)
        object.__setattr__(self, "settings", sets)
        object.__setattr__(self, "coeffs", c)

    @property
    def parties(self) -> int:
        return len(self.outcomes)


@dataclass(frozen=True)
class Behavior:
    """Conditional probability table p(a|x), indexed [a_1..a_n, x_1..x_n]."""

    outcomes: tuple[int, ...]
    settings: tuple[int, ...]
    table: np.ndarray

    def __post_init__(self) -> None:
        outs = tuple(int(x) for x in self.outcomes)
        sets = tuple(int(x) for x in self.settings)
        t = np.array(self.table, dtype=float)
        if t.shape != outs + sets:
            raise ValueError(f"behavior table must have shape {outs + sets}, got {t.shape}")
        if t.min() < -1e-9:
            raise ValueError("behavior has negative probabilities")
        sums = t.sum(axis=tuple(range(len(outs))))
        if np.max(np.abs(sums - 1.0)) > 1e-9:
            raise ValueError("behavior is not normalized per setting")
        t.setflags(write=False)
        object.__setattr__(self, "outcomes", outs)
        object.__setattr__(self, "settings", sets)
        object.__setattr__(self, "table", t)


@dataclass(frozen=True)
class CorrelatorForm:
    """Fourier-side coefficients It[k_1..k_n, x_1..x_n] of an inequality."""

    outcomes: tuple[int, ...]
    settings: tuple[int, ...]
    coeffs: np.ndarray


def _outcome_kernels(outcomes: Sequence[int], sign: float) -> list[np.ndarray]:
    return [
        np.exp(sign * 2j * np.pi * np.outer(np.arange(d), np.arange(d)) / d)
        for d in outcomes
    ]


def _contract_outcomes(table: np.ndarray, kernels: list[np.ndarray]) -> np.ndarray:
    out = np.asarray(table, dtype=complex)
    for axis, ker in enumerate(kernels):
        out = np.moveaxis(np.tensordot(ker, out, axes=([1], [axis])), 0, axis)
    return out


def fourier_coefficients(ineq: BellInequality) -> CorrelatorForm:
    """Correlator-form coefficients of a probability-form inequality."""
    kers = _outcome_kernels(ineq.outcomes, -1.0)
    coeffs = _contract_outcomes(ineq.coeffs, kers) / float(np.prod(ineq.outcomes))
    return CorrelatorForm(ineq.outcomes, ineq.settings, coeffs)


def correlators_from_behavior(p: Behavior) -> np.ndarray:
    """Generalized correlators C[k, x], the DFT of p over the outcome axes."""
    return _contract_outcomes(p.table, _outcome_kernels(p.outcomes, +1.0))


def evaluate(ineq: BellInequality, p: Behavior) -> float:
    """The linear functional sum_{a,x} I[a,x] p(a|x)."""
    if ineq.outcomes != p.outcomes or ineq.settings != p.settings:
        raise ValueError("inequality and behavior shapes do not match")
    return float(np.sum(ineq.coeffs * p.table))


def behavior_from_state(state, measurements) -> Behavior:
    """Born-rule behavior of projective measurements on a pure state.

    measurements[i][x] is the eigenbasis of party i's setting-x observable,
    one orthonormal column per outcome; columns must form a unitary
    (complete, orthogonal rank-1 projectors).
    """
    psi = np.asarray(getattr(state, "amplitudes", state), dtype=complex)
    outcomes = []
    settings = []
    for i, per_setting in enumerate(measurements):
        if len(per_setting) == 0:
            raise ValueError(f"party {i} has no settings")
        for x, v in enumerate(per_setting):
            v = np.asarray(v)
            if not is_unitary(v, 1e-8):
                raise ValueError(f"measurement for party {i} setting {x} is not projective")
        outcomes.append(np.asarray(per_setting[0]).shape[0])
        settings.append(len(per_setting))
    outcomes = tuple(outcomes)
    settings = tuple(settings)
    if psi.shape != (int(np.prod(outcomes)),):
        raise ValueError("state dimension does not match the measurement register")
    t = psi.reshape(outcomes)
    n = len(outcomes)
    table = np.empty(outcomes + settings)
    for xs in itertools.product(*(range(m) for m in settings)):
        amp = t
        for i, x in enumerate(xs):
            v = np.asarray(measurements[i][x], dtype=complex)
            amp = np.moveaxis(np.tensordot(v.conj().T, amp, axes=([1], [i])), 0, i)
        table[(slice(None),) * n + xs] = np.abs(amp) ** 2
    return Behavior(outcomes, settings, table)


def local_bound(ineq: BellInequality, budget: int = DEFAULT_STRATEGY_BUDGET) -> float:
    """Exact maximum over deterministic local strategies.

    The vertices of the local polytope are deterministic assignments, so by
    convexity this equals the maximum over all local hidden-variable models.
    """
    total = 1
    for d, m in zip(ineq.outcomes, ineq.settings):
        total *= d**m
    if total > budget:
        raise ResourceLimitError(f"{total} deterministic strategies exceed the budget {budget}")
    party_plans = [
        list(itertools.product(range(d), repeat=m))
        for d, m in zip(ineq.outcomes, ineq.settings)
    ]
    xs_list = list(itertools.product(*(range(m) for m in ineq.settings)))
    coeffs = ineq.coeffs
    best = -np.inf
    for plans in itertools.product(*party_plans):
        v = 0.0
        for xs in xs_list:
            a = tuple(plan[x] for plan, x in zip(plans, xs))
            v += coeffs[a + xs]
        if v > best:
            best = v
    return float(best)


def catalog_tilted_chsh(alpha: float) -> BellInequality:
    """Tilted CHSH: alpha <A_1^0> + sum_{x1,x2} (-1)^(x1 x2) <A_1^x1 A_2^x2>.

    Probability form with the marginal term spread evenly over the second
    party's settings.  Accepts 0 <= alpha <= 2; at alpha = 2 the local bound
    meets the quantum maximum and the witness gap closes.
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 2.0:
        raise ValueError("tilting parameter must lie in [0, 2]")
    c = np.zeros((2, 2, 2, 2))
    for a1, a2, x1, x2 in itertools.product(range(2), repeat=4):
        val = (-1.0) ** (x1 * x2) * (-1.0) ** (a1 + a2)
        if x1 == 0:
            val += 0.5 * alpha * (-1.0) ** a1
        c[a1, a2, x1, x2] = val
    return BellInequality((2, 2), (2, 2), c, name=f"tilted-chsh(alpha={alpha:g})")


def catalog_cglmp(d: int) -> BellInequality:
    """Two-setting d-outcome CGLMP inequality, probability form.

    Built from the correlator expansion
        sum_x sum_{l=1}^{d-1}  c_l <A_x^l B_x^(d-l)>
                             + conj(c_l) omega^(x l) <A_x^l B_(x+1 mod 2)^(d-l)>
    with c_l = sum_k alpha_k (omega^(-k l) - omega^((k+1) l)) and the CGLMP
    weights alpha_k = beta_k = 1 - 2k/(d - 1), k < floor(d/2).  Dividing the
    expansion by d lands in the standard normalization, anchored on the
    d = 3 values: deterministic local bound 2, quantum maximum 2.9149.
    The cross-term phase convention (no twist on the first setting, one
    omega^l twist on the second) is the one that reproduces those numbers;
    other readings of the setting cycling give a no-gap inequality.
    """
    require_prime(d)
    w = np.exp(2j * np.pi / d)
    cl = {
        l: sum(
            (1.0 - 2.0 * k / (d - 1)) * (w ** (-k * l) - w ** ((k + 1) * l))
            for k in range(d // 2)
        )
        for l in range(1, d)
    }
    corr = np.zeros((d, d, 2, 2), dtype=complex)
    for x in (0, 1):
        for l in range(1, d):
            corr[l, (d - l) % d, x, x] += cl[l] / d
            corr[l, (d - l) % d, x, (x + 1) % 2] += np.conj(cl[l]) * w ** (x * l) / d
    prob = _contract_outcomes(corr, _outcome_kernels((d, d), +1.0))
    if np.max(np.abs(prob.imag)) > 1e-9:
        raise AssertionError("CGLMP expansion should produce a real tensor")
    return BellInequality((d, d), (2, 2), prob.real, name=f"cglmp(d={d})")


def catalog_svetlichny_r2() -> BellInequality:
    """Three-party witness: Svetlichny polynomial plus two-body exchange terms.

    All observables are dichotomic with (-1)^a eigenvalues.  The two-body
    part pins two parties' settings and averages over the remaining party's
    setting.  The deterministic local bound is 6.
    """
    c = np.zeros((2, 2, 2, 2, 2, 2))
    sign_by_setting_sum = {0: 1.0, 1: 1.0, 2: -1.0, 3: -1.0}
    for xs in itertools.product(range(2), repeat=3):
        s = sign_by_setting_sum[sum(xs)]
        for outs in itertools.product(range(2), repeat=3):
            c[outs + xs] += s * (-1.0) ** sum(outs)
    for p, q in ((0, 1), (0, 2), (1, 2)):
        r = 3 - p - q
        for i in (0, 1):
            for xr in (0, 1):
                xs = [0, 0, 0]
                xs[p], xs[q], xs[r] = i, i ^ 1, xr
                for outs in itertools.product(range(2), repeat=3):
                    c[outs + tuple(xs)] += 0.5 * (-1.0) ** (outs[p] + outs[q])
    return BellInequality((2, 2, 2), (2, 2, 2), c, name="svetlichny-r2")
