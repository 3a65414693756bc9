"""Codec tests: bit-exact field layout, round-trips, width policing."""

import numpy as np
import pytest

from sim1090.frames import (
    FRAME_BITS,
    FRAME_BYTES,
    FIELD_WIDTHS,
    AirframeKind,
    SquitterFrame,
    from_hex,
    identity_frame,
    pack,
    to_hex,
    unpack,
)
from sim1090.packets import PacketKind, on_air_bits, packet_duration_s


class TestPack:
    def test_total_width_is_112_bits(self):
        assert sum(w for _, w in FIELD_WIDTHS) == FRAME_BITS == 112
        assert len(pack(SquitterFrame(17, 0, 0, 0, 0))) == FRAME_BYTES

    def test_df17_only_sets_leading_bits(self):
        # 17 = 10001b in the top five bits, everything else zero
        raw = pack(SquitterFrame(df=17, ca_cf=0, aa=0, me=0, pi=0))
        word = int.from_bytes(raw, "big")
        assert word >> (FRAME_BITS - 5) == 0b10001
        assert word & ((1 << (FRAME_BITS - 5)) - 1) == 0

    def test_all_zero_frame(self):
        assert pack(SquitterFrame(0, 0, 0, 0, 0)) == bytes(FRAME_BYTES)

    def test_field_positions(self):
        # each field occupies its own bit range, most significant bit first
        raw = pack(SquitterFrame(df=1, ca_cf=1, aa=1, me=1, pi=1))
        word = int.from_bytes(raw, "big")
        expected = (1 << 107) | (1 << 104) | (1 << 80) | (1 << 24) | 1
        assert word == expected

    @pytest.mark.parametrize("field,maxval", [
        ("df", 31), ("ca_cf", 7), ("aa", (1 << 24) - 1), ("me", (1 << 56) - 1), ("pi", (1 << 24) - 1),
    ])
    def test_width_limits(self, field, maxval):
        ok = {"df": 0, "ca_cf": 0, "aa": 0, "me": 0, "pi": 0}
        pack(SquitterFrame(**{**ok, field: maxval}))
        with pytest.raises(ValueError, match=field):
            pack(SquitterFrame(**{**ok, field: maxval + 1}))
        with pytest.raises(ValueError, match=field):
            pack(SquitterFrame(**{**ok, field: -1}))


class TestUnpack:
    def test_zero_bits(self):
        assert unpack(bytes(14)) == SquitterFrame(0, 0, 0, 0, 0)

    def test_df18_leading_bits(self):
        # 18 = 10010b
        raw = (0b10010 << 107).to_bytes(14, "big")
        assert unpack(raw).df == 18

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError, match="14 bytes"):
            unpack(bytes(13))
        with pytest.raises(ValueError, match="14 bytes"):
            unpack(bytes(15))

    def test_round_trip_random_frames(self):
        # acceptance-grade property: 10^4 random frames, both directions
        rng = np.random.default_rng(2024)
        for _ in range(10_000):
            frame = SquitterFrame(
                df=int(rng.integers(0, 32)),
                ca_cf=int(rng.integers(0, 8)),
                aa=int(rng.integers(0, 1 << 24)),
                me=int(rng.integers(0, 1 << 56)),
                pi=int(rng.integers(0, 1 << 24)),
            )
            raw = pack(frame)
            assert unpack(raw) == frame
            assert pack(unpack(raw)) == raw

    def test_round_trip_random_bitstrings(self):
        rng = np.random.default_rng(99)
        for _ in range(1000):
            raw = rng.bytes(14)
            assert pack(unpack(raw)) == raw


class TestHex:
    def test_28_digits(self):
        text = to_hex(SquitterFrame(17, 5, 0x4840D6, 0x202CC371C32CE0, 0x576098))
        assert len(text) == 28
        assert from_hex(text) == SquitterFrame(17, 5, 0x4840D6, 0x202CC371C32CE0, 0x576098)

    def test_bad_hex_length(self):
        with pytest.raises(ValueError):
            from_hex("8D4840D6")


class TestAirframeKind:
    def test_bijective_df_mapping(self):
        assert AirframeKind.PLANE.df == 17
        assert AirframeKind.UAV.df == 18
        for kind in AirframeKind:
            assert AirframeKind.from_df(kind.df) is kind

    def test_unmapped_df_rejected(self):
        with pytest.raises(ValueError):
            AirframeKind.from_df(11)

    def test_identity_frame_carries_class_and_address(self):
        frame = identity_frame(AirframeKind.UAV, address=0xABCDEF)
        assert frame.df == 18 and frame.aa == 0xABCDEF
        assert unpack(pack(frame)) == frame


class TestOnAirBits:
    @pytest.mark.parametrize("kind", [k for k in PacketKind if k is not PacketKind.SMAG])
    def test_extended_squitters_are_120_bits(self, kind):
        # 112-bit body plus the 8-bit control string
        assert on_air_bits(kind) == FRAME_BITS + 8 == 120
        assert packet_duration_s(kind) == pytest.approx(120e-6)

    def test_smag_is_64_bits(self):
        assert on_air_bits(PacketKind.SMAG) == 64
        assert packet_duration_s(PacketKind.SMAG) == pytest.approx(64e-6)
