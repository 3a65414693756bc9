"""Reception statistics: received ratio, consecutive-loss histogram,
position-update probability, distance-binned ratios, the analytic ALOHA
throughput prediction, and the noise-floor calibration search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frames import AirframeKind
from .packets import SCHEDULES, PacketKind, packet_duration_s
from .scenario import Aircraft, ScenarioConfig
from .aloha import ReceptionOutcome, Verdict


class InsufficientDataError(ValueError):
    """Raised when a metric is undefined for the given input size."""


class CalibrationError(RuntimeError):
    """Raised when the noise-floor search cannot reach its target."""


def _received_flags(outcomes) -> np.ndarray:
    """Normalise outcome sequences to a boolean received-flag array.

    Accepts ReceptionOutcome objects, Verdict values (or their integer
    codes, 0 = received), or plain booleans meaning "received".
    """
    flags = []
    for item in outcomes:
        if isinstance(item, ReceptionOutcome):
            flags.append(item.verdict is Verdict.RECEIVED)
        elif isinstance(item, (bool, np.bool_)):
            flags.append(bool(item))
        elif isinstance(item, (Verdict, int, np.integer)):
            flags.append(int(item) == int(Verdict.RECEIVED))
        else:
            raise TypeError(f"cannot interpret outcome {item!r}")
    return np.asarray(flags, dtype=bool)


def received_ratio(outcomes) -> float:
    """Fraction of packets received, as an exact ratio of counts."""
    flags = _received_flags(outcomes)
    if flags.size == 0:
        raise InsufficientDataError("received ratio is undefined for an empty outcome set")
    return int(flags.sum()) / flags.size


def loss_run_histogram(outcomes) -> dict[int, int]:
    """Histogram of maximal runs of consecutive losses, by run length.

    Input must be the time-ordered position-packet outcomes of one aircraft;
    leading and trailing runs count.
    """
    lost = ~_received_flags(outcomes)
    hist: dict[int, int] = {}
    run = 0
    for flag in lost:
        if flag:
            run += 1
        elif run:
            hist[run] = hist.get(run, 0) + 1
            run = 0
    if run:
        hist[run] = hist.get(run, 0) + 1
    return hist


@dataclass(frozen=True)
class UpdateProbabilityResult:
    """Sliding-window position-update probability against a deadline."""

    deadline_s: float
    window_k: int
    probability: float
    failed_windows: int
    total_windows: int


def update_probability(
    outcomes,
    deadline_s: float,
    nominal_interval_s: float = 0.5,
) -> UpdateProbabilityResult:
    """Probability that a deadline-sized window contains a received packet.

    The deadline maps to K = ceil(deadline / nominal interval) consecutive
    generation slots; a window fails iff all K packets in it were lost, and
    the probability is 1 - failed/total over all N-K+1 sliding windows.
    """
    if deadline_s <= 0:
        raise ValueError(f"deadline_s must be > 0, got {deadline_s}")
    lost = ~_received_flags(outcomes)
    k = math.ceil(deadline_s / nominal_interval_s)
    n = lost.size
    if n < k:
        raise InsufficientDataError(f"need at least {k} packets for a {deadline_s}s deadline, got {n}")
    window_losses = np.convolve(lost.astype(np.int64), np.ones(k, dtype=np.int64), mode="valid")
    failed = int((window_losses == k).sum())
    total = n - k + 1
    return UpdateProbabilityResult(
        deadline_s=deadline_s,
        window_k=k,
        probability=1.0 - failed / total,
        failed_windows=failed,
        total_windows=total,
    )


def failed_windows_from_runs(hist: dict[int, int], window_k: int) -> int:
    """Failed-window count implied by a loss-run histogram.

    A run of length L contributes max(0, L - K + 1) all-lost windows.
    """
    return sum(max(0, length - window_k + 1) * count for length, count in hist.items())


@dataclass(frozen=True)
class DistanceBin:
    """Received ratio of one aircraft class within one distance bin."""

    aircraft_class: AirframeKind
    lo_km: float
    hi_km: float
    center_km: float
    n_aircraft: int
    generated: int
    received: int

    @property
    def ratio(self) -> float:
        return self.received / self.generated


def distance_binned_ratio(
    fleet: list[Aircraft],
    generated_by_aircraft: np.ndarray,
    received_by_aircraft: np.ndarray,
    bin_width_km: float = 2.5,
) -> list[DistanceBin]:
    """Per-class received ratio by distance bin; empty bins are omitted."""
    if bin_width_km <= 0:
        raise ValueError(f"bin_width_km must be > 0, got {bin_width_km}")
    rows: list[DistanceBin] = []
    for cls in AirframeKind:
        members = [a for a in fleet if a.kind is cls]
        if not members:
            continue
        buckets: dict[int, list[Aircraft]] = {}
        for a in members:
            # bins are half-open (lo, hi], matching the (0, radius] distance range
            idx = math.ceil(a.distance_km / bin_width_km) - 1
            buckets.setdefault(idx, []).append(a)
        for idx in sorted(buckets):
            group = buckets[idx]
            gen = int(sum(generated_by_aircraft[a.id] for a in group))
            rec = int(sum(received_by_aircraft[a.id] for a in group))
            if gen == 0:
                continue
            rows.append(
                DistanceBin(
                    aircraft_class=cls,
                    lo_km=idx * bin_width_km,
                    hi_km=(idx + 1) * bin_width_km,
                    center_km=(idx + 0.5) * bin_width_km,
                    n_aircraft=len(group),
                    generated=gen,
                    received=rec,
                )
            )
    return rows


def aloha_expected_ratio(config: ScenarioConfig, kind: PacketKind | None = None) -> float:
    """Analytic unslotted-ALOHA received ratio under a Poisson load model.

    A packet of duration Ti survives collisions with probability
    exp(-sum_j lambda_j (Ti + Tj)), where lambda_j is the fleet emission
    rate of kind j excluding the packet's own emitter. Channel errors are
    not modelled, so this predicts collision-only scenarios.
    """
    config.validate()
    n = config.n_planes + config.n_uavs
    kinds = [k for k in PacketKind if k in config.enabled_kinds]
    rates = {k: SCHEDULES[k].rate_hz for k in kinds}
    exposure = {
        i: sum((n - 1) * rates[j] * (packet_duration_s(i) + packet_duration_s(j)) for j in kinds)
        for i in kinds
    }
    survival = {i: math.exp(-exposure[i]) for i in kinds}
    if kind is not None:
        if kind not in survival:
            raise ValueError(f"kind {kind} is not enabled in this config")
        return survival[kind]
    total_rate = sum(rates.values())
    return sum(rates[i] * survival[i] for i in kinds) / total_rate


@dataclass(frozen=True)
class CalibrationResult:
    """Outcome of the noise-floor bisection search."""

    noise_floor_dbm: float
    achieved_ratio: float
    target_ratio: float
    n_reps: int
    iterations: int
    evaluations: tuple[tuple[float, float], ...]


def calibrate_noise_floor(
    target_ratio: float,
    base_config: ScenarioConfig,
    n_reps: int = 10,
    bracket: tuple[float, float] = (-120.0, -75.0),
    tolerance_points: float = 0.5,
    max_iters: int = 60,
) -> CalibrationResult:
    """Bisect the noise floor until the replicated mean received ratio
    matches the target within the tolerance (in percentage points).

    Every evaluation reuses the same replication seeds, which makes the
    measured ratio exactly non-increasing in the floor; monotonicity is
    asserted across all evaluations. Raises CalibrationError when the
    target lies outside what the bracket can reach.
    """
    from .engine import run_replicated

    if not 0.0 < target_ratio < 1.0:
        raise ValueError(f"target_ratio must be in (0, 1), got {target_ratio}")
    quiet, loud = bracket
    if quiet >= loud:
        raise ValueError(f"bracket must be (quiet, loud) with quiet < loud, got {bracket}")
    tol = tolerance_points / 100.0
    evaluations: list[tuple[float, float]] = []

    def mean_ratio(floor: float) -> float:
        cfg = base_config.with_overrides(noise_floor_dbm=floor, channel_errors_enabled=True)
        result = run_replicated(cfg, n_reps)
        ratio = result.summary["received_ratio"]["mean"]
        evaluations.append((floor, ratio))
        for (f_a, r_a) in evaluations:
            for (f_b, r_b) in evaluations:
                if f_a < f_b and r_a < r_b:
                    raise CalibrationError(
                        f"received ratio is not monotone in the noise floor: "
                        f"ratio({f_a})={r_a:.6f} < ratio({f_b})={r_b:.6f}"
                    )
        return ratio

    r_quiet = mean_ratio(quiet)
    if abs(r_quiet - target_ratio) <= tol:
        return CalibrationResult(quiet, r_quiet, target_ratio, n_reps, 1, tuple(evaluations))
    r_loud = mean_ratio(loud)
    if abs(r_loud - target_ratio) <= tol:
        return CalibrationResult(loud, r_loud, target_ratio, n_reps, 2, tuple(evaluations))
    if not (r_loud < target_ratio < r_quiet):
        raise CalibrationError(
            f"target ratio {target_ratio:.4f} unreachable in bracket "
            f"[{quiet}, {loud}] dBm: ratio({quiet})={r_quiet:.4f}, ratio({loud})={r_loud:.4f}"
        )
    for iteration in range(3, max_iters + 1):
        mid = 0.5 * (quiet + loud)
        r_mid = mean_ratio(mid)
        if abs(r_mid - target_ratio) <= tol:
            return CalibrationResult(mid, r_mid, target_ratio, n_reps, iteration, tuple(evaluations))
        if r_mid > target_ratio:
            quiet = mid  # still too quiet: move toward the loud end
        else:
            loud = mid
    raise CalibrationError(
        f"no floor within {tolerance_points} points of {target_ratio:.4f} "
        f"after {max_iters} evaluations (bracket narrowed to [{quiet}, {loud}])"
    )
