"""Receiver-side unslotted-ALOHA resolution.

Any time overlap between packets from different emitters destroys every
packet in the overlap cluster; there is no capture. Overlap is transitive:
a chain A-B, B-C dies as one cluster even if A and C are disjoint. A
cluster whose packets all share one emitter loses nothing, since one
transmitter cannot jam itself (contention is between aircraft). Intervals
are half-open, so packets meeting exactly at a boundary do not collide.
Verdict precedence is below-sensitivity > collision > corrupted, so each
packet lands in exactly one loss bucket.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .traffic import Transmission


class Verdict(enum.IntEnum):
    RECEIVED = 0
    LOST_COLLISION = 1
    LOST_CORRUPTED = 2
    LOST_BELOW_SENSITIVITY = 3

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class ReceptionOutcome:
    transmission: Transmission
    verdict: Verdict


def cluster_ids(starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Cluster index per packet for start-sorted half-open intervals.

    A packet joins the current cluster while its start precedes the running
    maximum end; otherwise it opens a new cluster.
    """
    starts = np.asarray(starts, dtype=float)
    ends = np.asarray(ends, dtype=float)
    if starts.size == 0:
        return np.empty(0, dtype=np.int64)
    if np.any(np.diff(starts) < 0):
        raise ValueError("transmissions must be sorted by start time")
    running_end = np.maximum.accumulate(ends)
    new_cluster = np.empty(starts.size, dtype=bool)
    new_cluster[0] = True
    new_cluster[1:] = starts[1:] >= running_end[:-1]
    return np.cumsum(new_cluster) - 1


def collision_mask(starts: np.ndarray, durations: np.ndarray, emitters: np.ndarray) -> np.ndarray:
    """True for every packet whose cluster spans at least two emitters."""
    starts = np.asarray(starts, dtype=float)
    emitters = np.asarray(emitters)
    ids = cluster_ids(starts, starts + np.asarray(durations, dtype=float))
    if ids.size == 0:
        return np.empty(0, dtype=bool)
    first_index = np.unique(ids, return_index=True)[1]
    foreign = emitters != emitters[first_index][ids]
    mixed = np.bincount(ids, weights=foreign) > 0
    return mixed[ids]


def overlap_clusters(transmissions: list[Transmission]) -> list[list[Transmission]]:
    """Partition a start-sorted timeline into maximal overlap chains."""
    ids = cluster_ids(
        np.array([tx.start_s for tx in transmissions]),
        np.array([tx.end_s for tx in transmissions]),
    )
    clusters: list[list[Transmission]] = [[] for _ in range(int(ids[-1]) + 1)] if len(transmissions) else []
    for tx, cid in zip(transmissions, ids):
        clusters[int(cid)].append(tx)
    return clusters


def resolve(transmissions: list[Transmission]) -> list[ReceptionOutcome]:
    """Assign one verdict per transmission.

    Input must be start-sorted and free of below-sensitivity packets (those
    never reach the receiver and cannot collide). Every member of a
    multi-emitter cluster is a collision loss, corrupted or not; outside
    collisions a corrupted packet is a corruption loss and an intact packet
    is received.
    """
    if any(tx.below_sensitivity for tx in transmissions):
        raise ValueError("below-sensitivity packets must be excluded before resolve()")
    collided = collision_mask(
        np.array([tx.start_s for tx in transmissions]),
        np.array([tx.duration_s for tx in transmissions]),
        np.array([tx.emitter_id for tx in transmissions]),
    )
    out = []
    for tx, hit in zip(transmissions, collided):
        if hit:
            verdict = Verdict.LOST_COLLISION
        elif tx.corrupted:
            verdict = Verdict.LOST_CORRUPTED
        else:
            verdict = Verdict.RECEIVED
        out.append(ReceptionOutcome(tx, verdict))
    return out


def outcomes_to_csv(outcomes: list[ReceptionOutcome]) -> str:
    """Debug CSV rendering of resolved outcomes."""
    lines = ["# sim1090 outcomes v1", "emitter_id,kind,start_s,verdict"]
    for oc in outcomes:
        tx = oc.transmission
        lines.append(f"{tx.emitter_id},{tx.kind},{tx.start_s:.9g},{oc.verdict}")
    return "\n".join(lines) + "\n"
