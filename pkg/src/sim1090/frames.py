"""Bit-exact codec for the 112-bit extended squitter frame.

Field layout, in order, most significant bit first within each field:

    DF      5 bits   downlink format; 17 = transponder emitter (plane),
                     18 = non-transponder emitter (UAV)
    CA/CF   3 bits   capability (DF 17) or encoding format (DF 18)
    AA     24 bits   emitter address
    ME     56 bits   message payload, carried opaque
    PI     24 bits   parity/identity, carried opaque (no parity is computed)

Packed frames are 14 bytes; they render to and from 28-digit hex strings
for test vectors and logging.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

FRAME_BITS = 112
FRAME_BYTES = FRAME_BITS // 8

#: (field name, width in bits), in serialization order.
FIELD_WIDTHS: tuple[tuple[str, int], ...] = (
    ("df", 5),
    ("ca_cf", 3),
    ("aa", 24),
    ("me", 56),
    ("pi", 24),
)


class AirframeKind(enum.Enum):
    """Emitter class; maps one-to-one onto the frame's downlink format."""

    PLANE = "plane"
    UAV = "uav"

    @property
    def df(self) -> int:
        return 17 if self is AirframeKind.PLANE else 18

    @classmethod
    def from_df(cls, df: int) -> "AirframeKind":
        if df == 17:
            return cls.PLANE
        if df == 18:
            return cls.UAV
        raise ValueError(f"df={df} does not identify an airframe class (expected 17 or 18)")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SquitterFrame:
    """One 112-bit frame, fields as plain unsigned integers."""

    df: int
    ca_cf: int
    aa: int
    me: int
    pi: int


def _check_width(name: str, value: int, width: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"field {name} must be an integer, got {type(value).__name__}")
    if value < 0 or value >> width:
        raise ValueError(f"field {name}={value} exceeds its {width}-bit width")


def pack(frame: SquitterFrame) -> bytes:
    """Serialize a frame to its 14-byte (112-bit) wire form.

    Raises ValueError if any field exceeds its declared width.
    """
    word = 0
    for name, width in FIELD_WIDTHS:
        value = getattr(frame, name)
        _check_width(name, value, width)
        word = (word << width) | value
    return word.to_bytes(FRAME_BYTES, "big")


def unpack(bits: bytes) -> SquitterFrame:
    """Inverse of pack. Input must be exactly 14 bytes."""
    if not isinstance(bits, (bytes, bytearray)):
        raise ValueError(f"expected bytes, got {type(bits).__name__}")
    if len(bits) != FRAME_BYTES:
        raise ValueError(f"frame must be exactly {FRAME_BYTES} bytes, got {len(bits)}")
    word = int.from_bytes(bits, "big")
    values = {}
    for name, width in reversed(FIELD_WIDTHS):
        values[name] = word & ((1 << width) - 1)
        word >>= width
    return SquitterFrame(**values)


def to_hex(frame: SquitterFrame) -> str:
    """28-digit uppercase hex rendering of the packed frame."""
    return pack(frame).hex().upper()


def from_hex(text: str) -> SquitterFrame:
    """Parse a 28-digit hex string back into a frame."""
    raw = bytes.fromhex(text)
    if len(raw) != FRAME_BYTES:
        raise ValueError(f"hex frame must be {2 * FRAME_BYTES} digits, got {len(text)}")
    return unpack(raw)


def identity_frame(kind: AirframeKind, address: int, me: int = 0, pi: int = 0) -> SquitterFrame:
    """Frame carrying an emitter's class (via DF) and address (via AA)."""
    _check_width("aa", address, 24)
    return SquitterFrame(df=kind.df, ca_cf=0, aa=address, me=me, pi=pi)
