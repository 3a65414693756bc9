"""Channel errors versus distance.

Calibrates the noise floor so the full-load scenario lands on a 48.66%
aggregate received ratio (reduced replication count to keep the demo
quick), then prints the per-distance-bin received ratio profile: flat
collision-limited loss near the station, error-dominated decline far out.
"""

from collections import defaultdict

from sim1090 import calibrate_noise_floor
from sim1090.cli import load_preset
from sim1090.engine import run_replicated

BASE = load_preset("fig5.scn")
REPS = 3

cal = calibrate_noise_floor(0.4866, BASE, n_reps=REPS)
print(
    f"calibrated noise floor: {cal.noise_floor_dbm:.2f} dBm "
    f"(achieved {cal.achieved_ratio:.4f} in {cal.iterations} evaluations)"
)

result = run_replicated(BASE.with_overrides(noise_floor_dbm=cal.noise_floor_dbm), REPS)
pooled = defaultdict(lambda: [0, 0])
for report in result.reports:
    for b in report.distance_bins(bin_width_km=5.0):
        pooled[b.lo_km][0] += b.generated
        pooled[b.lo_km][1] += b.received

print(f"\n{'bin_km':>12s} {'received_ratio':>15s}")
for lo in sorted(pooled):
    gen, rec = pooled[lo]
    print(f"{lo:5.1f}-{lo + 5.0:5.1f} {rec / gen:15.4f}")
print("\nloss beyond ~45 km runs above 60%: distant emitters fade into the noise")
