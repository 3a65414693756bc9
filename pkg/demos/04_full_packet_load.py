"""One full-load run: 200 planes, all six packet kinds, collisions only.

Prints the aggregate outcome partition, the tracked aircraft's
consecutive-loss table and its position-update probability against the
3-second terminal deadline.
"""

from sim1090.cli import load_preset
from sim1090.engine import run

report = run(load_preset("fig4.scn"))
doc = report.to_dict()

print(f"generated packets: {doc['generated']}")
print(f"received ratio:    {doc['received_ratio']:.4f}")
print("outcome partition:")
for verdict, count in doc["verdict_totals"].items():
    print(f"  {verdict:24s} {count:9d}")

print(f"\ntracked aircraft {doc['tracked_aircraft']} consecutive POS losses:")
print(f"{'run length':>11s} {'occurrences':>12s}")
for length, count in sorted(report.pos_loss_runs.items()):
    print(f"{length:11d} {count:12d}")

up = report.update
print(
    f"\nupdate probability (deadline {up.deadline_s:.0f}s, window of {up.window_k} packets): "
    f"{up.probability:.4f}  ({up.failed_windows} failed of {up.total_windows} windows)"
)
