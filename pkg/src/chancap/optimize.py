"""Capacity maximization and empirical bound checks.

``compute_ce`` maximizes the channel mutual information over input density
matrices with entropic mirror ascent: the iterate moves as
rho <- normalize(exp(log rho + eta * G)) with G the objective gradient and a
halving backtracking line search on eta, so every iterate is automatically
positive and trace one and the objective trace is monotone. The objective is
concave in rho, so restarts guard against numerical stalls rather than local
maxima.

``compute_holevo`` ascends the Holevo quantity of a pure-state ensemble by
projected gradient steps on the state vectors alternated with the
closed-form multiplicative reweighting p_i <- p_i * 2^D(out_i || out_bar).
Its result is a certified lower bound (any feasible ensemble is a witness),
not a certified maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ._kernels import (
    apply_kraus,
    apply_kraus_adjoint,
    entropy_bits,
    exp_normalized,
    log2_hermitian,
)
from .channels import QuantumChannel, complementary, tensor_channels
from .core import DensityMatrix, ket_to_dm
from .measures import Ensemble, conditional_mutual_information
from .sampling import SeededRng, random_density, random_pure_state, random_separable_tripartite

LN2 = math.log(2.0)
EIG_FLOOR = 1e-12
MIN_STEP = 1e-12
CONVERGENCE_STREAK = 5


class ConvergenceError(RuntimeError):
    """Raised when a dependent computation needs a converged optimizer run."""


@dataclass(frozen=True, eq=False)
class OptimizerReport:
    """Outcome of one capacity maximization."""

    value: float
    argmax: Union[DensityMatrix, Ensemble]
    iterations: int
    trace: tuple[tuple[int, float], ...]
    converged: bool
    restarts_used: int
    all_traces: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False, default=())


@dataclass(frozen=True)
class BoundCheckReport:
    """Sampled test of the conditional-information feedback bound."""

    samples: int
    max_conditional_qmi: float
    ce_reference: float
    violations: int
    worst_margin: float
    seed: int


@dataclass(frozen=True, eq=False)
class AdditivityReport:
    """Two-copy capacity versus twice the single-copy value."""

    ce_single: float
    ce_double: float
    gap: float
    converged: bool


def ce_objective_gradient(ch: QuantumChannel, rho: np.ndarray):
    """Channel mutual information and its gradient at an input matrix.

    Uses the complement identity S(R:Lambda Q) = S(rho) + S(Lambda rho)
    - S(Lambda_c rho): the purified joint output and the environment output
    share their spectrum, so no explicit reference system is needed. Returns
    (value_bits, gradient) where the gradient G satisfies
    d/dt f(rho + t H) = Tr[G H] for Hermitian H.
    """
    karr = ch.kraus_array
    carr = complementary(ch).kraus_array
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    value = _value_only(karr, carr, rho)
    grad, _ = _gradient(karr, carr, rho)
    return value, grad


def _gradient(karr, carr, rho):
    log_in = log2_hermitian(rho, EIG_FLOOR)
    log_out = log2_hermitian(apply_kraus(karr, rho), EIG_FLOOR)
    log_env = log2_hermitian(apply_kraus(carr, rho), EIG_FLOOR)
    grad = -log_in - apply_kraus_adjoint(karr, log_out)
    grad += apply_kraus_adjoint(carr, log_env)
    grad -= np.eye(rho.shape[0]) / LN2
    return grad, log_in


def _value_only(karr, carr, rho):
    return (
        entropy_bits(rho)
        + entropy_bits(apply_kraus(karr, rho))
        - entropy_bits(apply_kraus(carr, rho))
    )


def _mirror_ascent(karr, carr, rho0, tol, max_iter):
    """One restart of entropic mirror ascent; returns (rho, value, trace, converged)."""
    rho = rho0
    value = _value_only(karr, carr, rho)
    grad, log_in = _gradient(karr, carr, rho)
    trace = [(0, value)]
    eta = 1.0
    streak = 0
    converged = False
    for it in range(1, max_iter + 1):
        accepted = False
        while eta >= MIN_STEP:
            candidate = exp_normalized(LN2 * (log_in + eta * grad))
            cand_value = _value_only(karr, carr, candidate)
            if cand_value >= value:
                accepted = True
                break
            eta *= 0.5
        if not accepted:
            # No improving step exists at any length: stationary point of a
            # concave objective, already at the maximum within numerics.
            converged = True
            break
        rel_change = abs(cand_value - value) / max(abs(cand_value), 1e-12)
        rho, value = candidate, cand_value
        trace.append((it, value))
        streak = streak + 1 if rel_change < tol else 0
        if streak >= CONVERGENCE_STREAK:
            converged = True
            break
        grad, log_in = _gradient(karr, carr, rho)
        eta = min(eta * 2.0, 4.0)
    return rho, value, tuple(trace), converged


def compute_ce(
    ch: QuantumChannel,
    tol: float = 1e-6,
    max_iter: int = 5000,
    restarts: int = 5,
    seed: int = 0,
) -> OptimizerReport:
    """Entanglement-assisted capacity: max over inputs of S(R : Lambda Q).

    Runs ``restarts`` independent mirror-ascent climbs from Hilbert-Schmidt
    random starts (streams derived from (seed, restart index)) and reports
    the best. Convergence requires the relative objective change to stay
    below ``tol`` for five consecutive iterations.
    """
    karr = ch.kraus_array
    carr = complementary(ch).kraus_array
    best = None
    traces = []
    total_iters = 0
    for r in range(restarts):
        rng = SeededRng(seed).split("ce-restart", r)
        rho0 = random_density(rng, ch.dim_in).mat
        rho, value, trace, converged = _mirror_ascent(karr, carr, rho0, tol, max_iter)
        traces.append(trace)
        total_iters += trace[-1][0]
        if best is None or value > best[1]:
            best = (rho, value, trace, converged)
    rho, value, trace, converged = best
    return OptimizerReport(
        value=value,
        argmax=DensityMatrix(rho, (ch.dim_in,)),
        iterations=total_iters,
        trace=trace,
        converged=converged,
        restarts_used=restarts,
        all_traces=tuple(traces),
    )


def _chi_value(karr, probs, outs):
    avg = np.tensordot(probs, outs, axes=(0, 0))
    chi = entropy_bits(avg)
    for p, out in zip(probs, outs):
        if p > 0.0:
            chi -= p * entropy_bits(out)
    return chi


def _holevo_ascent(karr, dim_in, size, gen, tol, max_iter):
    psis = np.stack([random_pure_state(gen, dim_in) for _ in range(size)])
    probs = np.full(size, 1.0 / size)
    outs = np.stack([apply_kraus(karr, np.outer(v, v.conj())) for v in psis])
    value = _chi_value(karr, probs, outs)
    trace = [(0, value)]
    eta = 1.0
    streak = 0
    converged = False
    for it in range(1, max_iter + 1):
        # Gradient step on the pure-state parameters, backtracking on eta.
        avg = np.tensordot(probs, outs, axes=(0, 0))
        log_avg = log2_hermitian(avg, EIG_FLOOR)
        steps = []
        for i in range(size):
            direction = apply_kraus_adjoint(
                karr, log2_hermitian(outs[i], EIG_FLOOR) - log_avg
            )
            steps.append(probs[i] * (direction @ psis[i]))
        improved = False
        while eta >= MIN_STEP:
            cand_psis = psis + eta * np.stack(steps)
            cand_psis /= np.linalg.norm(cand_psis, axis=1)[:, None]
            cand_outs = np.stack(
                [apply_kraus(karr, np.outer(v, v.conj())) for v in cand_psis]
            )
            cand_value = _chi_value(karr, probs, cand_outs)
            if cand_value >= value:
                psis, outs, value = cand_psis, cand_outs, cand_value
                improved = True
                break
            eta *= 0.5
        # Closed-form reweighting p_i proportional to p_i * 2^D(out_i || avg).
        avg = np.tensordot(probs, outs, axes=(0, 0))
        log_avg = log2_hermitian(avg, EIG_FLOOR)
        rel_ent = np.array(
            [
                -entropy_bits(out) - float(np.vdot(out, log_avg).real)
                for out in outs
            ]
        )
        w = probs * np.exp2(rel_ent - rel_ent.max())
        cand_probs = w / w.sum()
        cand_value = _chi_value(karr, cand_probs, outs)
        if cand_value >= value:
            probs, value = cand_probs, cand_value
            improved = True
        rel_change = abs(value - trace[-1][1]) / max(abs(value), 1e-12)
        trace.append((it, value))
        streak = streak + 1 if rel_change < tol else 0
        if streak >= CONVERGENCE_STREAK or not improved:
            converged = True
            break
        eta = min(eta * 2.0, 4.0)
    return psis, probs, value, tuple(trace), converged


def compute_holevo(
    ch: QuantumChannel,
    ensemble_size: int = None,
    tol: float = 1e-6,
    max_iter: int = 5000,
    restarts: int = 5,
    seed: int = 0,
) -> OptimizerReport:
    """Best found single-use Holevo quantity over pure-state ensembles.

    The landscape is not concave in the ensemble parameters, so the value is
    a lower-bound witness for the one-shot maximum, not a certificate.
    ``ensemble_size`` defaults to dim_in squared.
    """
    size = ch.dim_in**2 if ensemble_size is None else int(ensemble_size)
    if size < 1:
        raise ValueError("ensemble_size must be >= 1")
    karr = ch.kraus_array
    best = None
    traces = []
    total_iters = 0
    for r in range(restarts):
        gen = SeededRng(seed).split("holevo-restart", r).generator()
        psis, probs, value, trace, converged = _holevo_ascent(
            karr, ch.dim_in, size, gen, tol, max_iter
        )
        traces.append(trace)
        total_iters += trace[-1][0]
        if best is None or value > best[2]:
            best = (psis, probs, value, trace, converged)
    psis, probs, value, trace, converged = best
    ensemble = Ensemble(tuple(probs), tuple(ket_to_dm(v) for v in psis))
    return OptimizerReport(
        value=value,
        argmax=ensemble,
        iterations=total_iters,
        trace=trace,
        converged=converged,
        restarts_used=restarts,
        all_traces=tuple(traces),
    )


def check_cqfb_bound(
    ch: QuantumChannel,
    n_samples: int = 1000,
    conditioner_dim: int = 2,
    seed: int = 0,
    reference_dim: int = None,
    terms: int = 8,
    ce_report: OptimizerReport = None,
    tol: float = 1e-6,
    max_iter: int = 5000,
    restarts: int = 5,
) -> BoundCheckReport:
    """Sample R:QR'-separable states and compare S(R : Lambda Q | R') to C_E.

    The conditional quantity is an upper bound on feedback-assisted rates and
    never exceeds the entanglement-assisted capacity on this state family, so
    any violation beyond 1e-6 indicates an implementation bug. The reference
    system R defaults to dimension dim_in squared.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if ce_report is None:
        ce_report = compute_ce(ch, tol=tol, max_iter=max_iter, restarts=restarts, seed=seed)
    if not ce_report.converged:
        raise ConvergenceError("capacity reference did not converge")
    d_r = ch.dim_in**2 if reference_dim is None else int(reference_dim)
    gen = SeededRng(seed).split("bound-samples").generator()
    worst = -math.inf
    violations = 0
    for _ in range(n_samples):
        rho = random_separable_tripartite(gen, d_r, ch.dim_in, conditioner_dim, terms)
        q = conditional_mutual_information(rho, ch)
        worst = max(worst, q)
        if q > ce_report.value + 1e-6:
            violations += 1
    return BoundCheckReport(
        samples=n_samples,
        max_conditional_qmi=worst,
        ce_reference=ce_report.value,
        violations=violations,
        worst_margin=worst - ce_report.value,
        seed=seed,
    )


def check_additivity(
    ch: QuantumChannel,
    tol: float = 1e-6,
    max_iter: int = 5000,
    restarts: int = 5,
    seed: int = 0,
) -> AdditivityReport:
    """Compare C_E of two parallel copies against twice the one-copy value."""
    if ch.dim_in > 3:
        raise ValueError("two-copy check limited to dim_in <= 3")
    single = compute_ce(ch, tol=tol, max_iter=max_iter, restarts=restarts, seed=seed)
    double = compute_ce(
        tensor_channels(ch, ch), tol=tol, max_iter=max_iter, restarts=restarts, seed=seed
    )
    return AdditivityReport(
        ce_single=single.value,
        ce_double=double.value,
        gap=abs(double.value - 2.0 * single.value),
        converged=single.converged and double.converged,
    )
