"""Side-by-side evaluation of negativity and the Wigner-Yanase metric.

For a qubit ``rho`` with Bloch vector ``n`` and a Pauli axis, two numbers
are computed independently:

* the negativity of ``U (rho (x) ancilla) U^dagger`` for the copy gate in
  that axis' eigenbasis, and
* the Wigner-Yanase metric of the tangent vector ``i[rho, sigma_axis]``.

Their ratio depends on ``|n|`` only. The sweep and comparison helpers
measure that ratio over the Bloch ball and set it next to the reference
coefficient ``2 sqrt(2) (1 - sqrt(2M))^(-1/2)`` (``M`` the mixedness).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import (
    KrausChannel,
    amplitude_damping,
    apply,
    apply_to_tangent,
    depolarizing,
    extend_on_second,
    identity_channel,
    phase_damping,
    random_channel,
    unitary_channel,
)
from .entanglement import (
    ancilla_state,
    cnot_in_basis,
    generate_joint_state,
    literal_x_unitary,
    negativity,
    negativity_closed_form,
)
from .geometry import (
    POSITIVITY_FLOOR,
    BoundaryError,
    PauliAxis,
    TangentVector,
    metric_eval,
    metric_wy_qubit_reference,
    mc_wigner_yanase,
    pauli,
    tangent_from_observable,
)
from .matrixcore import SIGMA_X, SIGMA_Y, SIGMA_Z, eigh, haar_unitary
from .states import BlochVector, DensityMatrix, bloch_to_density, mixedness, pure_state

RATIO_FLOOR = 1e-12
INTERIOR_MARGIN = 1e-6
SPREAD_TOL = 1e-9
CLOSED_FORM_TOL = 1e-12
MONOTONE_TOL = 1e-10
COVARIANCE_TOL = 1e-9

DEFAULT_SHELLS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)
DEFAULT_DIRECTIONS = 256
CHANNEL_FAMILIES = ("identity", "unitary", "depolarizing", "amplitude_damping", "phase_damping", "random")

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class InvariantError(RuntimeError):
    """Two independent routes to the same quantity disagree."""


@dataclass
class RelationSample:
    n: BlochVector
    axis: PauliAxis
    negativity: float
    metric: float
    sqrt_metric: float
    mixedness: float
    ratio: float | None
    shell: float


def relation_check(n: BlochVector, axis=PauliAxis.Z, shell: float | None = None) -> RelationSample:
    """Negativity and WY metric for one Bloch vector.

    Raises:
        BoundaryError: for ``|n| >= 1 - 1e-6``.
        InvariantError: if the matrix-route negativity misses the closed form.
    """
    axis = PauliAxis(axis)
    if n.norm >= 1.0 - INTERIOR_MARGIN:
        raise BoundaryError(f"relation check needs an interior state, got |n| = {n.norm:.17g}")
    rho = bloch_to_density(n)
    k = metric_eval(rho, tangent_from_observable(rho, pauli(axis)), mc_wigner_yanase())
    joint = generate_joint_state(rho, ancilla_state(axis), cnot_in_basis(axis))
    neg = negativity(joint)
    expected = negativity_closed_form(n, axis)
    if abs(neg - expected) > CLOSED_FORM_TOL:
        raise InvariantError(f"negativity {neg!r} differs from closed form {expected!r}")
    root = math.sqrt(k)
    return RelationSample(
        n=n,
        axis=axis,
        negativity=neg,
        metric=k,
        sqrt_metric=root,
        mixedness=mixedness(rho),
        ratio=neg / root if root > RATIO_FLOOR else None,
        shell=n.norm if shell is None else shell,
    )


def fibonacci_directions(count: int, axis=PauliAxis.Z) -> np.ndarray:
    """``count`` unit vectors on a Fibonacci spiral whose pole is ``axis``.

    The z-axis grid is ``(a, b, c)`` with ``c`` the polar coordinate; the x
    grid is ``(c, b, a)`` and the y grid ``(a, c, b)``, so grids for
    different axes are coordinate permutations of each other.
    """
    k = np.arange(count)
    c = 1.0 - (2.0 * k + 1.0) / count
    s = np.sqrt(1.0 - c * c)
    phi = k * _GOLDEN_ANGLE
    a, b = s * np.cos(phi), s * np.sin(phi)
    axis = PauliAxis(axis)
    if axis is PauliAxis.Z:
        cols = (a, b, c)
    elif axis is PauliAxis.X:
        cols = (c, b, a)
    else:
        cols = (a, c, b)
    return np.stack(cols, axis=1)


@dataclass
class SweepReport:
    axis: PauliAxis
    samples: list[RelationSample]
    ratio_spread_per_shell: dict[float, tuple[float, float]]
    fitted_coefficient: dict[float, float]
    excluded_per_shell: dict[float, int]

    def relative_spread(self, shell: float) -> float:
        lo, hi = self.ratio_spread_per_shell[shell]
        mean = self.fitted_coefficient[shell]
        return (hi - lo) / mean if mean > 0 else math.nan

    def max_relative_spread(self) -> float:
        spreads = [self.relative_spread(s) for s in self.fitted_coefficient]
        return max((s for s in spreads if not math.isnan(s)), default=0.0)


def sweep_bloch_ball(
    shells=DEFAULT_SHELLS, directions_per_shell: int = DEFAULT_DIRECTIONS, axis=PauliAxis.Z
) -> SweepReport:
    axis = PauliAxis(axis)
    shells = [float(r) for r in shells]
    if not shells or any(not 0.0 < r < 1.0 for r in shells):
        raise ValueError(f"shell radii must lie in (0, 1), got {shells}")
    if directions_per_shell < 8:
        raise ValueError("need at least 8 directions per shell")
    dirs = fibonacci_directions(directions_per_shell, axis)
    samples: list[RelationSample] = []
    spread: dict[float, tuple[float, float]] = {}
    fitted: dict[float, float] = {}
    excluded: dict[float, int] = {}
    for r in shells:
        shell_samples = [relation_check(BlochVector(*(r * d)), axis, shell=r) for d in dirs]
        ratios = [s.ratio for s in shell_samples if s.ratio is not None]
        excluded[r] = len(shell_samples) - len(ratios)
        if ratios:
            spread[r] = (min(ratios), max(ratios))
            fitted[r] = math.fsum(ratios) / len(ratios)
        else:
            spread[r] = (math.nan, math.nan)
            fitted[r] = math.nan
        samples.extend(shell_samples)
    return SweepReport(axis, samples, spread, fitted, excluded)


def compare_reports(a: SweepReport, b: SweepReport) -> float:
    """Largest absolute difference between two sweeps taken on matching grids."""
    if len(a.samples) != len(b.samples) or list(a.fitted_coefficient) != list(b.fitted_coefficient):
        raise ValueError("reports were taken on different grids")
    worst = 0.0
    for sa, sb in zip(a.samples, b.samples):
        for fa, fb in (
            (sa.negativity, sb.negativity),
            (sa.metric, sb.metric),
            (sa.mixedness, sb.mixedness),
            (sa.ratio or 0.0, sb.ratio or 0.0),
        ):
            worst = max(worst, abs(fa - fb))
        if (sa.ratio is None) != (sb.ratio is None):
            return math.inf
    for r in a.fitted_coefficient:
        worst = max(worst, abs(a.fitted_coefficient[r] - b.fitted_coefficient[r]))
    return worst


def reference_coefficient(mix: float) -> float:
    """Reference coefficient ``2 sqrt(2) (1 - sqrt(2 M))^(-1/2)``; compared, never trusted."""
    return 2.0 * math.sqrt(2.0) * (1.0 - math.sqrt(2.0 * mix)) ** -0.5


def oracle_coefficient(radius: float) -> float:
    """``sqrt(1 + sqrt(1 - r^2)) / (4 sqrt(2))`` from the two closed forms."""
    return math.sqrt(1.0 + math.sqrt(1.0 - radius * radius)) / (4.0 * math.sqrt(2.0))


@dataclass
class ShellComparison:
    shell: float
    mixedness: float
    measured_coefficient: float
    paper_coefficient: float
    oracle_coefficient: float
    paper_over_measured: float
    paper_relative_deviation: float
    oracle_relative_deviation: float
    reference_metric_over_measured: float


@dataclass
class ComparisonReport:
    axis: PauliAxis
    shells: list[ShellComparison] = field(default_factory=list)


def coefficient_vs_paper(report: SweepReport) -> ComparisonReport:
    if not report.samples:
        raise ValueError("empty sweep report")
    out = ComparisonReport(report.axis)
    for r, measured in report.fitted_coefficient.items():
        mix = 0.5 * (1.0 - r * r)
        paper = reference_coefficient(mix)
        oracle = oracle_coefficient(r)
        alt = [
            metric_wy_qubit_reference(_to_z_frame(s.n, report.axis)) / s.metric
            for s in report.samples
            if s.shell == r and s.metric > RATIO_FLOOR
        ]
        out.shells.append(
            ShellComparison(
                shell=r,
                mixedness=mix,
                measured_coefficient=measured,
                paper_coefficient=paper,
                oracle_coefficient=oracle,
                paper_over_measured=paper / measured,
                paper_relative_deviation=(paper - measured) / measured,
                oracle_relative_deviation=(oracle - measured) / measured,
                reference_metric_over_measured=math.fsum(alt) / len(alt) if alt else math.nan,
            )
        )
    return out


def _to_z_frame(n: BlochVector, axis: PauliAxis) -> BlochVector:
    # undo the grid permutation so the z-axis reference form applies
    if axis is PauliAxis.X:
        return BlochVector(n.nz, n.ny, n.nx)
    if axis is PauliAxis.Y:
        return BlochVector(n.nx, n.nz, n.ny)
    return n


def x_scenario_variants(n: BlochVector) -> dict[str, float]:
    """Negativity of the x-axis set-up under the ancilla/unitary readings.

    ``copy_plus``: copy gate in the +/- basis with ancilla ``|+>``.
    ``copy_zero``: same gate with ancilla ``(|+> + |->)/sqrt(2) = |0>``.
    ``literal_zero``: :func:`literal_x_unitary` with ancilla ``|0>``.
    ``sqrt_metric``: square root of the WY metric of ``i[rho, sigma_x]``.
    """
    rho = bloch_to_density(n)
    zero = pure_state([1.0, 0.0])
    copy = cnot_in_basis(PauliAxis.X)
    return {
        "copy_plus": negativity(generate_joint_state(rho, ancilla_state(PauliAxis.X), copy)),
        "copy_zero": negativity(generate_joint_state(rho, zero, copy)),
        "literal_zero": negativity(generate_joint_state(rho, zero, literal_x_unitary())),
        "sqrt_metric": math.sqrt(
            metric_eval(rho, tangent_from_observable(rho, SIGMA_X), mc_wigner_yanase())
        ),
    }


@dataclass
class MonotonicityRecord:
    sample: int
    family: str
    k_before: float
    k_transformed: float
    k_fixed: float
    trace_adjustment: float
    negativity_before: float
    negativity_after: float

    @property
    def violation_transformed(self) -> float:
        return self.k_transformed - self.k_before

    @property
    def violation_fixed(self) -> float:
        return self.k_fixed - self.k_before

    @property
    def negativity_violation(self) -> float:
        return self.negativity_after - self.negativity_before


@dataclass
class FamilySummary:
    family: str
    evaluated: int
    skipped: int
    max_violation_transformed: float
    max_violation_fixed: float
    max_negativity_violation: float
    max_covariance_deviation: float | None
    max_trace_adjustment: float


@dataclass
class MonotonicityReport:
    seed: int
    samples: int
    records: list[MonotonicityRecord]
    families: dict[str, FamilySummary]

    @property
    def max_violation_transformed(self) -> float:
        return max((f.max_violation_transformed for f in self.families.values()), default=0.0)

    @property
    def max_covariance_deviation(self) -> float:
        return max(
            (f.max_covariance_deviation for f in self.families.values() if f.max_covariance_deviation is not None),
            default=0.0,
        )

    def ok(self) -> bool:
        return self.max_violation_transformed <= MONOTONE_TOL and self.max_covariance_deviation <= COVARIANCE_TOL


def _random_interior_bloch(rng: np.random.Generator, max_radius: float = 0.95) -> BlochVector:
    d = rng.standard_normal(3)
    d /= np.linalg.norm(d)
    return BlochVector(*(max_radius * rng.uniform() ** (1.0 / 3.0) * d))


def _random_tangent(rng: np.random.Generator) -> TangentVector:
    a = rng.standard_normal(3)
    return TangentVector(a[0] * SIGMA_X + a[1] * SIGMA_Y + a[2] * SIGMA_Z)


def _draw_channel(family: str, rng: np.random.Generator) -> KrausChannel:
    if family == "identity":
        return identity_channel()
    if family == "unitary":
        return unitary_channel(haar_unitary(rng, 2))
    if family == "depolarizing":
        return depolarizing(rng.uniform())
    if family == "amplitude_damping":
        return amplitude_damping(rng.uniform())
    if family == "phase_damping":
        return phase_damping(rng.uniform())
    if family == "random":
        return random_channel(int(rng.integers(2**32)))
    raise ValueError(f"unknown channel family {family!r}")


def _worst(values) -> float:
    return float(max((max(v, 0.0) for v in values), default=0.0))


def monotonicity_scan(samples: int, seed: int = 0, families=CHANNEL_FAMILIES) -> MonotonicityReport:
    """Contractivity of the WY metric and of negativity under sampled channels.

    Each sample draws an interior state and a tangent vector, then one
    channel per family. Two readings of contractivity are recorded:
    ``K_{L(rho)}(L(A), L(A)) <= K_rho(A, A)`` (transformed) and
    ``K_{L(rho)}(A, A) <= K_rho(A, A)`` (fixed). Negativity is checked on the
    z-pipeline joint state with the channel acting on the ancilla.
    Samples whose image state falls below the positivity floor are skipped.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    families = tuple(families)
    for f in families:
        if f not in CHANNEL_FAMILIES:
            raise ValueError(f"unknown channel family {f!r}")
    rng = np.random.default_rng(seed)
    wy = mc_wigner_yanase()
    u_z, anc = cnot_in_basis(PauliAxis.Z), ancilla_state(PauliAxis.Z)
    records: list[MonotonicityRecord] = []
    skipped = dict.fromkeys(families, 0)
    for i in range(samples):
        n = _random_interior_bloch(rng)
        tangent = _random_tangent(rng)
        rho = bloch_to_density(n)
        k_before = metric_eval(rho, tangent, wy)
        joint = generate_joint_state(rho, anc, u_z)
        n_before = negativity(joint)
        for family in families:
            ch = _draw_channel(family, rng)
            out = DensityMatrix(apply(ch, rho.mat))
            if eigh(out.mat).eigenvalues[0] <= POSITIVITY_FLOOR:
                skipped[family] += 1
                continue
            mapped, removed = apply_to_tangent(ch, tangent)
            after_joint = DensityMatrix(apply(extend_on_second(ch), joint.mat))
            records.append(
                MonotonicityRecord(
                    sample=i,
                    family=family,
                    k_before=k_before,
                    k_transformed=metric_eval(out, mapped, wy),
                    k_fixed=metric_eval(out, tangent, wy),
                    trace_adjustment=removed,
                    negativity_before=n_before,
                    negativity_after=negativity(after_joint),
                )
            )
    summaries = {}
    for family in families:
        rows = [r for r in records if r.family == family]
        summaries[family] = FamilySummary(
            family=family,
            evaluated=len(rows),
            skipped=skipped[family],
            max_violation_transformed=_worst(r.violation_transformed for r in rows),
            max_violation_fixed=_worst(r.violation_fixed for r in rows),
            max_negativity_violation=_worst(r.negativity_violation for r in rows),
            max_covariance_deviation=(
                max((abs(r.violation_transformed) for r in rows), default=0.0)
                if family in ("identity", "unitary")
                else None
            ),
            max_trace_adjustment=max((r.trace_adjustment for r in rows), default=0.0),
        )
    return MonotonicityReport(seed, samples, records, summaries)
