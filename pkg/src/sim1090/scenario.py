"""Experiment description and deterministic fleet generation.

A scenario is a flat `key = value` text document (``#`` starts a comment).
Every key except ``n_planes`` has a default. Example::

    # two hundred planes, full packet mix, channel errors on
    n_planes = 200
    n_uavs = 20
    seed = 1
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Iterable

from .frames import AirframeKind
from .packets import PacketKind
from .seeding import MAX_SEED, fleet_rng

BER_MODES = ("approx_eq5", "exact_eq4", "per_bit")

ALL_KINDS = frozenset(PacketKind)


class ValidationError(ValueError):
    """Raised when a config violates its invariants; lists every violation."""

    def __init__(self, problems: Iterable[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one experiment."""

    n_planes: int
    n_uavs: int = 0
    plane_radius_km: float = 50.0
    uav_radius_km: float = 5.0
    plane_power_dbm: float = 44.0
    uav_power_dbm: float = 30.0
    sensitivity_dbm: float = -93.0
    freq_mhz: float = 1090.0
    bandwidth_hz: float = 1e6
    noise_floor_dbm: float = -90.0
    duration_s: float = 500.0
    seed: int = 1
    enabled_kinds: frozenset[PacketKind] = ALL_KINDS
    channel_errors_enabled: bool = True
    ber_mode: str = "approx_eq5"
    deadline_s: float = 3.0
    tracked_aircraft: int = 0
    area_uniform: bool = False

    def problems(self) -> list[str]:
        """All invariant violations, empty when the config is valid."""
        out = []
        if self.n_planes < 0:
            out.append(f"n_planes must be >= 0, got {self.n_planes}")
        if self.n_uavs < 0:
            out.append(f"n_uavs must be >= 0, got {self.n_uavs}")
        if self.n_planes + self.n_uavs < 1:
            out.append("fleet must contain at least one aircraft")
        if not 0 < self.uav_radius_km <= self.plane_radius_km:
            out.append(
                "radii must satisfy 0 < uav_radius_km <= plane_radius_km, got "
                f"uav_radius_km={self.uav_radius_km} plane_radius_km={self.plane_radius_km}"
            )
        if self.duration_s <= 0:
            out.append(f"duration_s must be > 0, got {self.duration_s}")
        if self.bandwidth_hz <= 0:
            out.append(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")
        if self.freq_mhz <= 0:
            out.append(f"freq_mhz must be > 0, got {self.freq_mhz}")
        if not self.enabled_kinds:
            out.append("enabled_kinds must not be empty")
        if self.ber_mode not in BER_MODES:
            out.append(f"ber_mode must be one of {BER_MODES}, got {self.ber_mode!r}")
        if self.deadline_s <= 0:
            out.append(f"deadline_s must be > 0, got {self.deadline_s}")
        if not 0 <= self.seed <= MAX_SEED:
            out.append(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.tracked_aircraft < max(1, self.n_planes + self.n_uavs):
            out.append(
                f"tracked_aircraft={self.tracked_aircraft} outside fleet "
                f"of {self.n_planes + self.n_uavs}"
            )
        return out

    def validate(self) -> "ScenarioConfig":
        problems = self.problems()
        if problems:
            raise ValidationError(problems)
        return self

    def with_overrides(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class Aircraft:
    """One emitter, reduced to a scalar line-of-sight distance to the station."""

    id: int
    kind: AirframeKind
    distance_km: float
    power_dbm: float
    address: int


def _draw_distances(rng, n: int, radius_km: float, area_uniform: bool):
    # u in [0,1) so distances land in the half-open (0, radius] range
    u = rng.uniform(0.0, 1.0, n)
    if area_uniform:
        return radius_km * (1.0 - u) ** 0.5
    return radius_km * (1.0 - u)


def build_fleet(config: ScenarioConfig) -> list[Aircraft]:
    """Deterministically generate the aircraft population of a config.

    Distances are uniform in d over (0, radius] per class (or uniform over
    the disk area with ``area_uniform``), drawn from the fleet stream of the
    config seed; addresses are sequential from a seed-derived 24-bit base.
    """
    config.validate()
    rng = fleet_rng(config.seed)
    plane_d = _draw_distances(rng, config.n_planes, config.plane_radius_km, config.area_uniform)
    uav_d = _draw_distances(rng, config.n_uavs, config.uav_radius_km, config.area_uniform)
    base = int(rng.integers(0, 1 << 24))
    fleet = []
    for i in range(config.n_planes):
        fleet.append(
            Aircraft(
                id=i,
                kind=AirframeKind.PLANE,
                distance_km=float(plane_d[i]),
                power_dbm=config.plane_power_dbm,
                address=(base + i) % (1 << 24),
            )
        )
    for j in range(config.n_uavs):
        i = config.n_planes + j
        fleet.append(
            Aircraft(
                id=i,
                kind=AirframeKind.UAV,
                distance_km=float(uav_d[j]),
                power_dbm=config.uav_power_dbm,
                address=(base + i) % (1 << 24),
            )
        )
    return fleet


# --- scenario text parsing ---

_INT_KEYS = {"n_planes", "n_uavs", "seed", "tracked_aircraft"}
_FLOAT_KEYS = {
    "plane_radius_km",
    "uav_radius_km",
    "plane_power_dbm",
    "uav_power_dbm",
    "sensitivity_dbm",
    "freq_mhz",
    "bandwidth_hz",
    "noise_floor_dbm",
    "duration_s",
    "deadline_s",
}
_BOOL_KEYS = {"channel_errors_enabled", "area_uniform"}
_KNOWN_KEYS = (
    _INT_KEYS | _FLOAT_KEYS | _BOOL_KEYS | {"enabled_kinds", "ber_mode"}
)

_BOOL_WORDS = {
    "true": True, "yes": True, "on": True, "1": True,
    "false": False, "no": False, "off": False, "0": False,
}


def _parse_value(key: str, raw: str, lineno: int):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _BOOL_KEYS:
            word = raw.lower()
            if word not in _BOOL_WORDS:
                raise ValueError(raw)
            return _BOOL_WORDS[word]
        if key == "enabled_kinds":
            names = [part.strip() for part in raw.replace(",", " ").split()]
            if not names:
                raise ValueError("empty kind list")
            return frozenset(PacketKind(name.upper()) for name in names)
        if key == "ber_mode":
            if raw not in BER_MODES:
                raise ValueError(raw)
            return raw
    except ValueError:
        raise ValidationError(
            [f"line {lineno}: bad value for {key}: {raw!r}"]
        ) from None
    raise AssertionError(f"unhandled key {key}")


def loads_scenario(text: str) -> ScenarioConfig:
    """Parse scenario text into a validated config."""
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValidationError([f"line {lineno}: expected 'key = value', got {stripped!r}"])
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ValidationError([f"line {lineno}: unknown key {key!r}"])
        if key in values:
            raise ValidationError([f"line {lineno}: duplicate key {key!r}"])
        values[key] = _parse_value(key, raw, lineno)
    if "n_planes" not in values:
        raise ValidationError(["missing required key n_planes"])
    return ScenarioConfig(**values).validate()


def load_scenario(path) -> ScenarioConfig:
    """Read and parse a scenario file."""
    with open(path, "r", encoding="utf-8") as fh:
        return loads_scenario(fh.read())


def dumps_scenario(config: ScenarioConfig) -> str:
    """Render a config back to scenario text (all keys explicit)."""
    lines = []
    for f in fields(ScenarioConfig):
        value = getattr(config, f.name)
        if f.name == "enabled_kinds":
            ordered = [k.value for k in PacketKind if k in value]
            value = ",".join(ordered)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"
