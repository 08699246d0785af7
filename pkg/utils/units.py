"""Unit conversions used at I/O boundaries (meters, m/s, dB)."""

import config


def wavelength(carrier_hz: float) -> float:
    return config.SPEED_OF_LIGHT / carrier_hz


def delay_to_range(delay_s: float) -> float:
    return config.SPEED_OF_LIGHT * delay_s / 2.0


def range_to_delay(range_m: float) -> float:
    return 2.0 * range_m / config.SPEED_OF_LIGHT


def doppler_to_velocity(doppler_hz: float, carrier_hz: float) -> float:
    """v = f_D * c / (2 f_c)."""
    return doppler_hz * config.SPEED_OF_LIGHT / (2.0 * carrier_hz)


def velocity_to_doppler(velocity_mps: float, carrier_hz: float) -> float:
    return 2.0 * velocity_mps * carrier_hz / config.SPEED_OF_LIGHT


def normalized_to_meters(position: float, carrier_hz: float) -> float:
    """Element positions are stored in wavelengths."""
    return position * wavelength(carrier_hz)


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)
