"""Free-space link budget and PSK bit-error model.

Powers are carried in dBm and losses in dB; signal-to-noise ratios are
linear. The per-packet corruption decision follows the good/bad draw rule:
a packet is recorded bad with probability equal to the bit error rate
(modes ``approx_eq5`` and ``exact_eq4``), or with the length-scaled
probability 1-(1-Pe)^bits in the physically-motivated ``per_bit`` mode.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate
from scipy.special import erfc, ndtr

from .packets import PacketKind, on_air_bits
from .scenario import BER_MODES, Aircraft, ScenarioConfig
from .traffic import Transmission


class QuadratureError(RuntimeError):
    """Raised when the exact bit-error integral fails to converge."""


@dataclass(frozen=True)
class LinkBudget:
    """Receiver-side radio parameters shared by every packet of a run."""

    freq_mhz: float
    noise_floor_dbm: float
    sensitivity_dbm: float
    ber_mode: str = "approx_eq5"
    psk_order: int = 8

    def __post_init__(self) -> None:
        if self.freq_mhz <= 0:
            raise ValueError(f"freq_mhz must be > 0, got {self.freq_mhz}")
        m = self.psk_order
        if m < 2 or m & (m - 1):
            raise ValueError(f"psk_order must be a power of two >= 2, got {m}")
        if self.ber_mode not in BER_MODES:
            raise ValueError(f"ber_mode must be one of {BER_MODES}, got {self.ber_mode!r}")

    @classmethod
    def from_config(cls, config: ScenarioConfig) -> "LinkBudget":
        return cls(
            freq_mhz=config.freq_mhz,
            noise_floor_dbm=config.noise_floor_dbm,
            sensitivity_dbm=config.sensitivity_dbm,
            ber_mode=config.ber_mode,
        )


def path_loss_db(d_km, f_mhz):
    """Free-space propagation loss: 32.44 + 20 lg d + 20 lg f (km, MHz)."""
    d = np.asarray(d_km, dtype=float)
    f = np.asarray(f_mhz, dtype=float)
    if np.any(d <= 0) or np.any(f <= 0):
        raise ValueError(f"distance and frequency must be positive, got d={d_km} f={f_mhz}")
    out = 32.44 + 20.0 * np.log10(d) + 20.0 * np.log10(f)
    return float(out) if out.ndim == 0 else out


def received_power_dbm(tx_power_dbm, loss_db):
    """Demodulator input power: transmit power minus propagation loss."""
    return tx_power_dbm - loss_db


def passes_sensitivity(s_dbm: float, a_dbm: float) -> bool:
    """Inclusive gate: a packet enters the receiver iff S >= A."""
    return s_dbm >= a_dbm


def snr_linear(s_dbm, n_dbm):
    """Linear signal-to-noise power ratio from dBm inputs."""
    return 10.0 ** ((np.asarray(s_dbm, dtype=float) - n_dbm) / 10.0)


def ber_mpsk_approx(r, m: int = 8):
    """Closed-form M-PSK bit-error approximation: erfc(sqrt(r*sin(pi/M))).

    Evaluated exactly as written, with the sine inside the square root.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("snr ratio must be >= 0")
    if m < 2:
        raise ValueError(f"psk order must be >= 2, got {m}")
    out = np.clip(erfc(np.sqrt(r * math.sin(math.pi / m))), 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def _phase_error_density(theta: float, r: float) -> float:
    # density of the received-phase error at offset theta for linear SNR r
    c = math.cos(theta)
    return (
        math.exp(-r)
        + math.sqrt(4.0 * math.pi * r) * c * math.exp(-r * math.sin(theta) ** 2) * ndtr(math.sqrt(2.0 * r) * c)
    ) / (2.0 * math.pi)


def ber_mpsk_exact(r: float, m: int = 8) -> float:
    """Exact M-PSK error probability by adaptive quadrature.

    Integrates the received-phase error density over the decision-failure
    region |theta| > pi/M (the complement form avoids cancellation at high
    SNR). Absolute tolerance 1e-6; non-convergence raises QuadratureError.
    """
    if r < 0:
        raise ValueError(f"snr ratio must be >= 0, got {r}")
    if m < 2:
        raise ValueError(f"psk order must be >= 2, got {m}")
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            half, abserr = integrate.quad(
                _phase_error_density, math.pi / m, math.pi, args=(float(r),),
                epsabs=5e-8, limit=200,
            )
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(f"phase-density quadrature did not converge for r={r}, m={m}: {exc}") from exc
    if 2.0 * abserr > 1e-6:
        raise QuadratureError(
            f"phase-density quadrature error {2.0 * abserr:.3g} exceeds 1e-6 for r={r}, m={m}"
        )
    return min(max(2.0 * half, 0.0), 1.0)


def bit_error_rate(r: float, link: LinkBudget) -> float:
    """Per-bit error probability under the link's configured mode."""
    if link.ber_mode == "exact_eq4":
        return ber_mpsk_exact(r, link.psk_order)
    # the per_bit mode length-scales the closed-form bit error rate
    return ber_mpsk_approx(r, link.psk_order)


def corruption_probability(pe_bit: float, kind: PacketKind, mode: str) -> float:
    """Probability that one packet of `kind` is recorded bad.

    The good/bad draw modes use Pe directly; per_bit scales by packet length.
    """
    if not 0.0 <= pe_bit <= 1.0:
        raise ValueError(f"pe_bit must be in [0, 1], got {pe_bit}")
    if mode not in BER_MODES:
        raise ValueError(f"unknown ber mode {mode!r}")
    if mode == "per_bit":
        return 1.0 - (1.0 - pe_bit) ** on_air_bits(kind)
    return pe_bit


class LinkState(NamedTuple):
    """Per-aircraft channel constants (quasi-static for the whole run)."""

    rx_power_dbm: float
    below_sensitivity: bool
    pe_bit: float


def aircraft_link_state(aircraft: Aircraft, link: LinkBudget) -> LinkState:
    """Chain loss -> received power -> sensitivity gate -> SNR -> Pe."""
    loss = path_loss_db(aircraft.distance_km, link.freq_mhz)
    s = received_power_dbm(aircraft.power_dbm, loss)
    gated = not passes_sensitivity(s, link.sensitivity_dbm)
    r = snr_linear(s, link.noise_floor_dbm)
    pe = bit_error_rate(float(r), link)
    return LinkState(rx_power_dbm=float(s), below_sensitivity=gated, pe_bit=pe)


def classify_transmission(
    tx: Transmission,
    aircraft: Aircraft,
    link: LinkBudget,
    rng: np.random.Generator,
) -> Transmission:
    """Annotate one transmission with received power, gate and corruption.

    Draws one uniform i from the aircraft's channel stream; the packet is
    bad iff i >= 1 - P_corrupt. Corrupted packets still occupy air time.
    """
    state = aircraft_link_state(aircraft, link)
    p_bad = corruption_probability(state.pe_bit, tx.kind, link.ber_mode)
    i = float(rng.uniform())
    return Transmission(
        emitter_id=tx.emitter_id,
        kind=tx.kind,
        start_s=tx.start_s,
        duration_s=tx.duration_s,
        rx_power_dbm=state.rx_power_dbm,
        corrupted=i >= 1.0 - p_bad,
        below_sensitivity=state.below_sensitivity,
    )


def classify_timeline(
    transmissions: list[Transmission],
    aircraft: Aircraft,
    link: LinkBudget,
    rng: np.random.Generator,
    channel_errors_enabled: bool = True,
) -> list[Transmission]:
    """Annotate a whole timeline of one aircraft.

    Uniform draws are consumed per kind in declaration order (one per
    packet), matching the engine's stream discipline. With channel errors
    disabled nothing is drawn, nothing is corrupted and the gate passes.
    """
    from dataclasses import replace as _replace

    from .packets import KIND_ORDER

    if not channel_errors_enabled:
        return [_replace(tx, rx_power_dbm=None, corrupted=False, below_sensitivity=False)
                for tx in transmissions]
    state = aircraft_link_state(aircraft, link)
    annotated: dict[int, Transmission] = {}
    for kind in KIND_ORDER:
        idx = [i for i, tx in enumerate(transmissions) if tx.kind is kind]
        if not idx:
            continue
        p_bad = corruption_probability(state.pe_bit, kind, link.ber_mode)
        draws = rng.uniform(0.0, 1.0, len(idx))
        for j, i_tx in enumerate(idx):
            tx = transmissions[i_tx]
            annotated[i_tx] = _replace(
                tx,
                rx_power_dbm=state.rx_power_dbm,
                corrupted=bool(draws[j] >= 1.0 - p_bad),
                below_sensitivity=state.below_sensitivity,
            )
    return [annotated[i] for i in range(len(transmissions))]
