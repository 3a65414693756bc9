"""Channel load versus fleet density, collision loss only.

Sweeps the plane count with position + identification broadcasts enabled
and compares the simulated received ratio against the analytic unslotted
random-access prediction exp(-sum_j lambda_j (Ti + Tj)).
"""

from sim1090 import PacketKind, ScenarioConfig, aloha_expected_ratio
from sim1090.engine import run_replicated

KINDS = frozenset({PacketKind.POS, PacketKind.ID})
REPS = 5

print(f"{'planes':>7s} {'simulated':>10s} {'analytic':>9s} {'gap_pts':>8s}")
for n in (50, 100, 150, 200):
    cfg = ScenarioConfig(
        n_planes=n, enabled_kinds=KINDS, channel_errors_enabled=False, seed=1
    )
    mean = run_replicated(cfg, REPS).summary["received_ratio"]["mean"]
    oracle = aloha_expected_ratio(cfg)
    print(f"{n:7d} {mean:10.4f} {oracle:9.4f} {abs(mean - oracle) * 100:8.2f}")

print("\nthe received ratio falls as density grows; short of saturation the")
print("Poisson-load prediction tracks the simulation within a fraction of a point")
