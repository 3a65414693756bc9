"""Simulation engine: merge all aircraft timelines, apply the channel,
resolve receiver-side collisions and distil the run report.

State only changes at packet boundaries and aircraft are quasi-static with
no retransmission, so the engine batch-generates every timeline and resolves
the merged, time-sorted schedule in one sweep. This is observationally
equivalent to popping an incremental event queue and is the reference
strategy; EventQueue is provided for streaming consumers.

A run is a pure function of its config (seed included): reports serialize
to byte-identical JSON across repeated runs.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import metrics
from .aloha import Verdict, collision_mask
from .channel import LinkBudget, aircraft_link_state, corruption_probability
from .frames import AirframeKind
from .packets import KIND_INDEX, KIND_ORDER, PacketKind, SCHEDULES, packet_duration_s
from .scenario import Aircraft, ScenarioConfig, build_fleet
from .seeding import channel_rng, replication_seed, traffic_rng
from .traffic import emission_times

SCHEMA_RUN = "sim1090/run-report/v1"
SCHEMA_REPLICATED = "sim1090/replicated-report/v1"

_N_KINDS = len(KIND_ORDER)
_N_VERDICTS = len(Verdict)


class EventQueue:
    """Min-heap of emission events with the total order (time, emitter, kind).

    The tie-break makes simultaneous events pop in a documented, reproducible
    order.
    """

    def __init__(self) -> None:
        self._heap: list[tuple[float, int, int]] = []
        self._last: float = -math.inf

    def __len__(self) -> int:
        return len(self._heap)

    def push(self, start_s: float, emitter_id: int, kind: PacketKind) -> None:
        heapq.heappush(self._heap, (start_s, emitter_id, KIND_INDEX[kind]))

    def peek_time(self) -> float:
        return self._heap[0][0]

    def pop(self) -> tuple[float, int, PacketKind]:
        start_s, emitter_id, kind_idx = heapq.heappop(self._heap)
        if start_s < self._last:
            raise AssertionError("event queue popped out of time order")
        self._last = start_s
        return start_s, emitter_id, KIND_ORDER[kind_idx]


def _fmt6(x: float) -> float:
    """Round to 6 significant digits for stable, diffable output."""
    return float(f"{x:.6g}")


@dataclass(frozen=True, eq=False)
class RunReport:
    """Outcome tallies and tracked-aircraft metrics of one run.

    Reports compare by serialized form: two runs agree iff their
    to_json_bytes() are equal.
    """

    config: ScenarioConfig
    fleet: tuple[Aircraft, ...]
    #: int64 tally of shape (n_aircraft, n_kinds, n_verdicts)
    counts: np.ndarray = field(repr=False)
    pos_loss_runs: dict[int, int]
    update: metrics.UpdateProbabilityResult | None
    #: time-ordered lost flags of the tracked aircraft's POS packets
    tracked_pos_lost: np.ndarray = field(repr=False)

    @property
    def seed(self) -> int:
        return self.config.seed

    @property
    def generated_total(self) -> int:
        return int(self.counts.sum())

    @property
    def received_total(self) -> int:
        return int(self.counts[:, :, Verdict.RECEIVED].sum())

    @property
    def received_ratio(self) -> float:
        return self.received_total / self.generated_total

    def verdict_total(self, verdict: Verdict) -> int:
        return int(self.counts[:, :, verdict].sum())

    def generated_by_aircraft(self) -> np.ndarray:
        return self.counts.sum(axis=(1, 2))

    def received_by_aircraft(self) -> np.ndarray:
        return self.counts[:, :, Verdict.RECEIVED].sum(axis=1)

    def class_ratio(self, cls: AirframeKind) -> float | None:
        ids = [a.id for a in self.fleet if a.kind is cls]
        if not ids:
            return None
        gen = int(self.counts[ids].sum())
        rec = int(self.counts[ids][:, :, Verdict.RECEIVED].sum())
        return rec / gen if gen else None

    def distance_bins(self, bin_width_km: float = 2.5) -> list[metrics.DistanceBin]:
        return metrics.distance_binned_ratio(
            list(self.fleet),
            self.generated_by_aircraft(),
            self.received_by_aircraft(),
            bin_width_km,
        )

    # --- serialization ---

    def to_dict(self) -> dict:
        per_aircraft = []
        for a in self.fleet:
            c = self.counts[a.id]
            per_aircraft.append(
                {
                    "id": a.id,
                    "class": str(a.kind),
                    "distance_km": _fmt6(a.distance_km),
                    "address": a.address,
                    "generated": int(c.sum()),
                    "received": int(c[:, Verdict.RECEIVED].sum()),
                    "lost_collision": int(c[:, Verdict.LOST_COLLISION].sum()),
                    "lost_corrupted": int(c[:, Verdict.LOST_CORRUPTED].sum()),
                    "lost_below_sensitivity": int(c[:, Verdict.LOST_BELOW_SENSITIVITY].sum()),
                }
            )
        cfg = self.config
        doc = {
            "schema": SCHEMA_RUN,
            "seed": cfg.seed,
            "config": {
                "n_planes": cfg.n_planes,
                "n_uavs": cfg.n_uavs,
                "plane_radius_km": cfg.plane_radius_km,
                "uav_radius_km": cfg.uav_radius_km,
                "plane_power_dbm": cfg.plane_power_dbm,
                "uav_power_dbm": cfg.uav_power_dbm,
                "sensitivity_dbm": cfg.sensitivity_dbm,
                "freq_mhz": cfg.freq_mhz,
                "bandwidth_hz": cfg.bandwidth_hz,
                "noise_floor_dbm": cfg.noise_floor_dbm,
                "duration_s": cfg.duration_s,
                "seed": cfg.seed,
                "enabled_kinds": [k.value for k in KIND_ORDER if k in cfg.enabled_kinds],
                "channel_errors_enabled": cfg.channel_errors_enabled,
                "ber_mode": cfg.ber_mode,
                "deadline_s": cfg.deadline_s,
                "tracked_aircraft": cfg.tracked_aircraft,
                "area_uniform": cfg.area_uniform,
            },
            "generated": self.generated_total,
            "received": self.received_total,
            "received_ratio": _fmt6(self.received_ratio) if self.generated_total else None,
            "verdict_totals": {
                "received": self.received_total,
                "lost_collision": self.verdict_total(Verdict.LOST_COLLISION),
                "lost_corrupted": self.verdict_total(Verdict.LOST_CORRUPTED),
                "lost_below_sensitivity": self.verdict_total(Verdict.LOST_BELOW_SENSITIVITY),
            },
            "per_class": {
                str(cls): (None if self.class_ratio(cls) is None else _fmt6(self.class_ratio(cls)))
                for cls in AirframeKind
            },
            "per_aircraft": per_aircraft,
            "tracked_aircraft": cfg.tracked_aircraft,
            "pos_loss_runs": {str(k): v for k, v in sorted(self.pos_loss_runs.items())},
            "update_probability": None
            if self.update is None
            else {
                "deadline_s": _fmt6(self.update.deadline_s),
                "window_k": self.update.window_k,
                "probability": _fmt6(self.update.probability),
                "failed_windows": self.update.failed_windows,
                "total_windows": self.update.total_windows,
            },
            "distance_bins": [
                {
                    "class": str(b.aircraft_class),
                    "lo_km": _fmt6(b.lo_km),
                    "hi_km": _fmt6(b.hi_km),
                    "center_km": _fmt6(b.center_km),
                    "n_aircraft": b.n_aircraft,
                    "generated": b.generated,
                    "received": b.received,
                    "received_ratio": _fmt6(b.ratio),
                }
                for b in self.distance_bins()
            ],
        }
        return doc

    def to_json_bytes(self) -> bytes:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")).encode("ascii")

    def to_csv(self) -> str:
        """All report tables as one sectioned CSV document."""
        lines = ["# sim1090 run-summary v1", "key,value"]
        doc = self.to_dict()
        lines.append(f"seed,{doc['seed']}")
        lines.append(f"generated,{doc['generated']}")
        lines.append(f"received,{doc['received']}")
        ratio = doc["received_ratio"]
        lines.append(f"received_ratio,{'' if ratio is None else f'{ratio:.6g}'}")
        for name, count in doc["verdict_totals"].items():
            lines.append(f"{name},{count}")
        for cls, ratio in doc["per_class"].items():
            lines.append(f"{cls}_received_ratio,{'' if ratio is None else f'{ratio:.6g}'}")
        if self.update is not None:
            lines.append(f"update_probability,{self.update.probability:.6g}")
            lines.append(f"update_window_k,{self.update.window_k}")
            lines.append(f"update_failed_windows,{self.update.failed_windows}")
            lines.append(f"update_total_windows,{self.update.total_windows}")

        lines.append("# sim1090 aircraft-outcomes v1")
        lines.append(
            "aircraft_id,class,distance_km,kind,generated,received,"
            "lost_collision,lost_corrupted,lost_below_sensitivity"
        )
        for a in self.fleet:
            for kind in KIND_ORDER:
                c = self.counts[a.id, KIND_INDEX[kind]]
                if c.sum() == 0:
                    continue
                lines.append(
                    f"{a.id},{a.kind},{a.distance_km:.6g},{kind},{int(c.sum())},"
                    f"{int(c[Verdict.RECEIVED])},{int(c[Verdict.LOST_COLLISION])},"
                    f"{int(c[Verdict.LOST_CORRUPTED])},{int(c[Verdict.LOST_BELOW_SENSITIVITY])}"
                )

        lines.append("# sim1090 pos-loss-runs v1")
        lines.append("consecutive_losses,occurrences")
        for length, count in sorted(self.pos_loss_runs.items()):
            lines.append(f"{length},{count}")

        lines.append("# sim1090 distance-bins v1")
        lines.append("class,lo_km,hi_km,center_km,n_aircraft,generated,received,received_ratio")
        for b in self.distance_bins():
            lines.append(
                f"{b.aircraft_class},{b.lo_km:.6g},{b.hi_km:.6g},{b.center_km:.6g},"
                f"{b.n_aircraft},{b.generated},{b.received},{b.ratio:.6g}"
            )
        return "\n".join(lines) + "\n"


def run(config: ScenarioConfig) -> RunReport:
    """Simulate one scenario: fleet, timelines, channel, collisions, metrics."""
    config.validate()
    fleet = build_fleet(config)
    link = LinkBudget.from_config(config)
    kinds = [k for k in KIND_ORDER if k in config.enabled_kinds]
    errors_on = config.channel_errors_enabled

    starts, kind_codes, emitters, corrupted, gated = [], [], [], [], []
    for a in fleet:
        t_rng = traffic_rng(config.seed, a.id)
        c_rng = channel_rng(config.seed, a.id)
        if errors_on:
            state = aircraft_link_state(a, link)
        for kind in kinds:
            times = emission_times(kind, config.duration_s, t_rng)
            n = times.size
            starts.append(times)
            kind_codes.append(np.full(n, KIND_INDEX[kind], dtype=np.int8))
            emitters.append(np.full(n, a.id, dtype=np.int32))
            if errors_on:
                p_bad = corruption_probability(state.pe_bit, kind, link.ber_mode)
                corrupted.append(c_rng.uniform(0.0, 1.0, n) >= 1.0 - p_bad)
                gated.append(np.full(n, state.below_sensitivity))
            else:
                corrupted.append(np.zeros(n, dtype=bool))
                gated.append(np.zeros(n, dtype=bool))

    start = np.concatenate(starts) if starts else np.empty(0)
    kind_code = np.concatenate(kind_codes) if kind_codes else np.empty(0, dtype=np.int8)
    emitter = np.concatenate(emitters) if emitters else np.empty(0, dtype=np.int32)
    is_bad = np.concatenate(corrupted) if corrupted else np.empty(0, dtype=bool)
    is_gated = np.concatenate(gated) if gated else np.empty(0, dtype=bool)
    duration = np.array([packet_duration_s(k) for k in KIND_ORDER])[kind_code]

    # documented total event order: (time, emitter, kind)
    order = np.lexsort((kind_code, emitter, start))
    start, kind_code, emitter = start[order], kind_code[order], emitter[order]
    is_bad, is_gated, duration = is_bad[order], is_gated[order], duration[order]

    n_aircraft = len(fleet)
    generated_matrix = np.zeros((n_aircraft, _N_KINDS), dtype=np.int64)
    np.add.at(generated_matrix, (emitter, kind_code), 1)

    verdict = np.full(start.size, int(Verdict.RECEIVED), dtype=np.int8)
    verdict[is_gated] = int(Verdict.LOST_BELOW_SENSITIVITY)
    audible = ~is_gated
    hit = collision_mask(start[audible], duration[audible], emitter[audible])
    audible_idx = np.flatnonzero(audible)
    verdict[audible_idx[hit]] = int(Verdict.LOST_COLLISION)
    lone_corrupt = audible.copy()
    lone_corrupt[audible_idx[hit]] = False
    verdict[lone_corrupt & is_bad] = int(Verdict.LOST_CORRUPTED)

    flat = (emitter.astype(np.int64) * _N_KINDS + kind_code) * _N_VERDICTS + verdict
    counts = np.bincount(flat, minlength=n_aircraft * _N_KINDS * _N_VERDICTS).reshape(
        n_aircraft, _N_KINDS, _N_VERDICTS
    )

    # conservation: the verdict partition must reproduce the generated tallies
    if counts.sum() != start.size or not np.array_equal(counts.sum(axis=2), generated_matrix):
        raise AssertionError("outcome partition does not match generated packet counts")

    tracked = config.tracked_aircraft
    pos_mask = (emitter == tracked) & (kind_code == KIND_INDEX[PacketKind.POS])
    tracked_pos_lost = verdict[pos_mask] != int(Verdict.RECEIVED)
    pos_hist = metrics.loss_run_histogram(~tracked_pos_lost)
    lost_total = int(tracked_pos_lost.sum())
    if sum(length * count for length, count in pos_hist.items()) != lost_total:
        raise AssertionError("loss-run histogram does not account for every lost packet")

    update = None
    window_k = math.ceil(config.deadline_s / SCHEDULES[PacketKind.POS].mean_interval_s)
    if tracked_pos_lost.size >= window_k:
        update = metrics.update_probability(
            ~tracked_pos_lost,
            config.deadline_s,
            SCHEDULES[PacketKind.POS].mean_interval_s,
        )

    return RunReport(
        config=config,
        fleet=tuple(fleet),
        counts=counts,
        pos_loss_runs=pos_hist,
        update=update,
        tracked_pos_lost=tracked_pos_lost,
    )


@dataclass(frozen=True)
class ReplicationResult:
    """Reports of independent replications plus order-independent summary."""

    reports: tuple[RunReport, ...]
    summary: dict[str, dict[str, float]]


def summarize_reports(reports) -> dict[str, dict[str, float]]:
    """Mean and population std of each metric; order-independent by fsum."""
    reports = list(reports)

    def stats(values):
        n = len(values)
        mean = math.fsum(values) / n
        var = math.fsum((v - mean) ** 2 for v in values) / n
        return {"mean": mean, "std": math.sqrt(var)}

    summary = {"received_ratio": stats([r.received_ratio for r in reports])}
    for cls, name in ((AirframeKind.PLANE, "plane_received_ratio"), (AirframeKind.UAV, "uav_received_ratio")):
        values = [r.class_ratio(cls) for r in reports]
        if all(v is not None for v in values):
            summary[name] = stats(values)
    updates = [r.update for r in reports]
    if all(u is not None for u in updates):
        summary["update_probability"] = stats([u.probability for u in updates])
    return summary


def run_replicated(config: ScenarioConfig, n_reps: int) -> ReplicationResult:
    """Run n_reps independent replications; replication k reseeds from (seed, k)."""
    if n_reps < 1:
        raise ValueError(f"n_reps must be >= 1, got {n_reps}")
    config.validate()
    reports = tuple(
        run(config.with_overrides(seed=replication_seed(config.seed, k)))
        for k in range(n_reps)
    )
    return ReplicationResult(reports=reports, summary=summarize_reports(reports))


def replicated_to_dict(config: ScenarioConfig, result: ReplicationResult) -> dict:
    return {
        "schema": SCHEMA_REPLICATED,
        "base_seed": config.seed,
        "n_reps": len(result.reports),
        "summary": {
            metric: {"mean": _fmt6(s["mean"]), "std": _fmt6(s["std"])}
            for metric, s in result.summary.items()
        },
        "replications": [
            {
                "seed": r.seed,
                "received_ratio": _fmt6(r.received_ratio),
                "update_probability": None if r.update is None else _fmt6(r.update.probability),
            }
            for r in result.reports
        ],
    }
