"""Scenario parsing, validation and deterministic fleet generation."""

import numpy as np
import pytest
from scipy import stats

from sim1090.frames import AirframeKind
from sim1090.packets import PacketKind
from sim1090.scenario import (
    ScenarioConfig,
    ValidationError,
    build_fleet,
    dumps_scenario,
    loads_scenario,
)


class TestLoadScenario:
    def test_empty_document_requires_n_planes(self):
        with pytest.raises(ValidationError, match="n_planes"):
            loads_scenario("")

    def test_defaults(self):
        cfg = loads_scenario("n_planes = 200")
        assert cfg.n_uavs == 0
        assert cfg.plane_radius_km == 50.0
        assert cfg.uav_radius_km == 5.0
        assert cfg.plane_power_dbm == 44.0
        assert cfg.uav_power_dbm == 30.0
        assert cfg.sensitivity_dbm == -93.0
        assert cfg.freq_mhz == 1090.0
        assert cfg.bandwidth_hz == 1e6
        assert cfg.duration_s == 500.0
        assert cfg.deadline_s == 3.0
        assert cfg.tracked_aircraft == 0
        assert cfg.enabled_kinds == frozenset(PacketKind)
        assert cfg.ber_mode == "approx_eq5"

    def test_uav_fleet_document(self):
        cfg = loads_scenario("n_planes = 200\nn_uavs = 20\n")
        assert (cfg.n_planes, cfg.n_uavs) == (200, 20)

    def test_comments_and_blank_lines(self):
        cfg = loads_scenario("# a comment\n\nn_planes = 1  # trailing\n")
        assert cfg.n_planes == 1

    def test_unknown_key_named(self):
        with pytest.raises(ValidationError, match="bogus_key"):
            loads_scenario("n_planes = 1\nbogus_key = 3\n")

    def test_type_mismatch_named(self):
        with pytest.raises(ValidationError, match="n_planes"):
            loads_scenario("n_planes = many")

    def test_negative_duration_rejected(self):
        with pytest.raises(ValidationError, match="duration_s"):
            loads_scenario("n_planes = 1\nduration_s = -1\n")

    def test_kind_list_parsing(self):
        cfg = loads_scenario("n_planes = 1\nenabled_kinds = POS,ID\n")
        assert cfg.enabled_kinds == frozenset({PacketKind.POS, PacketKind.ID})

    def test_bad_kind_rejected(self):
        with pytest.raises(ValidationError, match="enabled_kinds"):
            loads_scenario("n_planes = 1\nenabled_kinds = POS,XYZ\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ValidationError, match="duplicate"):
            loads_scenario("n_planes = 1\nn_planes = 2\n")

    def test_dump_load_round_trip(self):
        cfg = ScenarioConfig(n_planes=7, n_uavs=3, seed=42, ber_mode="per_bit",
                             enabled_kinds=frozenset({PacketKind.POS, PacketKind.SMAG}))
        assert loads_scenario(dumps_scenario(cfg)) == cfg


class TestValidation:
    def test_empty_fleet_rejected(self):
        with pytest.raises(ValidationError, match="at least one aircraft"):
            ScenarioConfig(n_planes=0, n_uavs=0).validate()

    def test_radius_ordering(self):
        with pytest.raises(ValidationError, match="radii"):
            ScenarioConfig(n_planes=1, uav_radius_km=60.0).validate()

    def test_empty_kinds_rejected(self):
        with pytest.raises(ValidationError, match="enabled_kinds"):
            ScenarioConfig(n_planes=1, enabled_kinds=frozenset()).validate()

    def test_all_problems_listed(self):
        with pytest.raises(ValidationError) as err:
            ScenarioConfig(n_planes=-1, n_uavs=0, duration_s=0).validate()
        text = str(err.value)
        assert "n_planes" in text and "duration_s" in text


class TestBuildFleet:
    def test_plane_only_fleet(self):
        cfg = ScenarioConfig(n_planes=200, n_uavs=0, seed=1)
        fleet = build_fleet(cfg)
        assert len(fleet) == 200
        assert all(a.kind is AirframeKind.PLANE for a in fleet)
        assert all(0 < a.distance_km <= 50.0 for a in fleet)
        assert all(a.power_dbm == 44.0 for a in fleet)

    def test_single_uav_boundary_fleet(self):
        fleet = build_fleet(ScenarioConfig(n_planes=0, n_uavs=1))
        assert len(fleet) == 1
        uav = fleet[0]
        assert uav.kind is AirframeKind.UAV
        assert 0 < uav.distance_km <= 5.0
        assert uav.power_dbm == 30.0

    def test_deterministic_element_by_element(self):
        cfg = ScenarioConfig(n_planes=50, n_uavs=10, seed=7)
        assert build_fleet(cfg) == build_fleet(cfg)

    def test_different_seeds_differ(self):
        a = build_fleet(ScenarioConfig(n_planes=50, seed=1))
        b = build_fleet(ScenarioConfig(n_planes=50, seed=2))
        assert a != b

    def test_addresses_distinct_and_24_bit(self):
        fleet = build_fleet(ScenarioConfig(n_planes=200, n_uavs=40, seed=3))
        addresses = [a.address for a in fleet]
        assert len(set(addresses)) == len(addresses)
        assert all(0 <= addr < (1 << 24) for addr in addresses)

    def test_ids_sequential(self):
        fleet = build_fleet(ScenarioConfig(n_planes=3, n_uavs=2, seed=3))
        assert [a.id for a in fleet] == [0, 1, 2, 3, 4]

    def test_invalid_config_rejected(self):
        with pytest.raises(ValidationError):
            build_fleet(ScenarioConfig(n_planes=0, n_uavs=0))

    def test_distance_distribution_uniform(self):
        # Kolmogorov-Smirnov at 1% significance over 10^5 pooled draws
        draws = []
        for seed in range(500):
            fleet = build_fleet(ScenarioConfig(n_planes=200, seed=seed))
            draws.extend(a.distance_km for a in fleet)
        pooled = np.array(draws) / 50.0
        assert len(pooled) == 100_000
        assert stats.kstest(pooled, "uniform").pvalue > 0.01

    def test_area_uniform_option(self):
        # area-uniform distances concentrate toward the rim: CDF is (d/R)^2
        draws = []
        for seed in range(100):
            fleet = build_fleet(ScenarioConfig(n_planes=200, seed=seed, area_uniform=True))
            draws.extend(a.distance_km for a in fleet)
        pooled = (np.array(draws) / 50.0) ** 2
        assert stats.kstest(pooled, "uniform").pvalue > 0.01
