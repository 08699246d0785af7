"""
Receiver budgets: SNR loss from folded out-of-band noise, ADC dynamic range and
the hardware resource reduction of sub-Nyquist operation.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import config
from models.data_models import AdcSpec, RadarParams
from utils.errors import ConfigurationError


def snr_loss_db(q_factor: float, stopband_atten_db: float) -> float:
    """10 log10(1 + 2 q 10^(-A/10)): noise folded in from 2q stopband images."""
    if q_factor < 1:
        raise ConfigurationError(f"Subsampling factor must be >= 1, got {q_factor}")
    if math.isinf(stopband_atten_db) and stopband_atten_db > 0:
        return 0.0
    return 10.0 * math.log10(1.0 + 2.0 * q_factor * 10.0 ** (-stopband_atten_db / 10.0))


def _bandwidth_gain_db(adc: AdcSpec) -> float:
    if adc.BW <= 0:
        raise ConfigurationError(f"Reference bandwidth must be positive, got {adc.BW}")
    return 10.0 * math.log10((adc.f_s / 2.0) / adc.BW)


def dynamic_range(adc: AdcSpec) -> Tuple[float, float]:
    """
    (DR in dB, lower limit in dBm).

    DR = 6.02 E_NoB - 1.76 + 10 log10((f_s/2) / BW), the processing gain of
    measuring in BW rather than the full Nyquist zone adding to the SQNR.
    The lower limit sits DR below the negative saturation rail.
    """
    dr = 6.02 * adc.E_NoB - 1.76 + _bandwidth_gain_db(adc)
    return dr, -adc.P_sat - dr


def dynamic_range_floor(adc: AdcSpec, *, ideal_bits: bool = False) -> float:
    """
    Lower limit in dBm evaluated term by term from the saturation level:
    P_sat - 1.76 - 6.02 E_NoB - gain with effective bits, or
    P_sat - 6.02 b - gain with the ideal bit count.
    """
    if ideal_bits:
        return adc.P_sat - 6.02 * adc.b - _bandwidth_gain_db(adc)
    return adc.P_sat - 1.76 - 6.02 * adc.E_NoB - _bandwidth_gain_db(adc)


def prototype_adc() -> AdcSpec:
    return AdcSpec(
        P_sat=config.ADC_SATURATION_DBM,
        b=config.ADC_BITS,
        E_NoB=config.ADC_EFFECTIVE_BITS,
        f_s=config.ADC_SAMPLE_RATE_HZ,
        BW=config.ADC_REFERENCE_BW_HZ,
    )


@dataclass(frozen=True)
class ResourceRow:
    comparison: str
    resource: str
    reference: float
    reduced: float

    @property
    def reduction_pct(self) -> float:
        return 100.0 * (1.0 - self.reduced / self.reference)


def resource_reduction(
    params: RadarParams,
    *,
    occupied_bandwidth: float,
    sample_rate: float,
    reduced_tx: int,
    reduced_rx: int,
    reference_tx: Optional[int] = None,
    reference_rx: Optional[int] = None,
    guard: float = config.GUARD_BAND_HZ,
    comparison: str = "",
) -> List[ResourceRow]:
    """
    Nyquist reference versus sub-Nyquist cognitive operation.

    Per-transmitter figures use the slot width B_h, the signal bandwidth
    B_h - guard and the Nyquist rate 2 B_h against the occupied subbands and the
    ADC rate; totals multiply by the transmitter count.
    """
    reference_tx = params.T if reference_tx is None else reference_tx
    reference_rx = params.R if reference_rx is None else reference_rx
    if min(reduced_tx, reduced_rx, reference_tx, reference_rx) < 1:
        raise ConfigurationError("Element counts must be positive")
    if occupied_bandwidth <= 0 or sample_rate <= 0:
        raise ConfigurationError("Occupied bandwidth and sample rate must be positive")

    signal_bw = params.B_h - guard
    mhz = 1e-6
    rows = [
        ("transmit bandwidth per Tx (MHz)", params.B_h * mhz, occupied_bandwidth * mhz),
        ("signal bandwidth per Tx (MHz)", signal_bw * mhz, occupied_bandwidth * mhz),
        ("sampling rate per channel (MHz)", 2.0 * params.B_h * mhz, sample_rate * mhz),
        ("antenna elements", reference_tx + reference_rx, reduced_tx + reduced_rx),
        ("receive channels", reference_tx * reference_rx, reduced_tx * reduced_rx),
        ("total transmit bandwidth (MHz)", reference_tx * params.B_h * mhz, reduced_tx * occupied_bandwidth * mhz),
        ("total signal bandwidth (MHz)", reference_tx * signal_bw * mhz, reduced_tx * occupied_bandwidth * mhz),
    ]
    return [ResourceRow(comparison, name, float(ref), float(red)) for name, ref, red in rows]


def prototype_resource_tables(
    params: RadarParams,
    occupied_bandwidth: float,
    *,
    sample_rate: float = config.ADC_SAMPLE_RATE_HZ,
    guard: float = config.GUARD_BAND_HZ,
) -> List[ResourceRow]:
    """Thinned Mode 3 against the Nyquist TxR array, and Mode 4 against the 20x20 reference."""
    common = dict(occupied_bandwidth=occupied_bandwidth, sample_rate=sample_rate, guard=guard)
    mode3 = resource_reduction(
        params,
        reduced_tx=params.T // 2,
        reduced_rx=params.R // 2,
        comparison="mode3_vs_mode1",
        **common,
    )
    mode4 = resource_reduction(
        params,
        reduced_tx=params.T,
        reduced_rx=params.R,
        reference_tx=config.REFERENCE_ARRAY_SIZE,
        reference_rx=config.REFERENCE_ARRAY_SIZE,
        comparison="mode4_vs_20x20",
        **common,
    )
    return mode3 + mode4
