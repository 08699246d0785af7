"""FDM carrier plan: transmitter m occupies slot tx_slots[m], centered offset f_m = slot * B_h."""
import config
from models.data_models import ArrayConfig, RadarParams, TxPlan
from utils.errors import ConfigurationError


def build_tx_plan(params: RadarParams, array: ArrayConfig, guard: float = config.GUARD_BAND_HZ) -> TxPlan:
    slots = tuple(int(s) for s in array.tx_slots)
    if any(b <= a for a, b in zip(slots, slots[1:])):
        raise ConfigurationError(f"FDM slots must be strictly increasing, got {slots}")
    if slots and (slots[0] < 0 or slots[-1] >= params.T):
        raise ConfigurationError(f"FDM slots {slots} outside 0..{params.T - 1}")
    if not 0.0 <= guard < params.B_h:
        raise ConfigurationError(f"Guard band {guard:g} Hz must lie in [0, B_h)")
    return TxPlan(f_m=tuple(slot * params.B_h for slot in slots), guard=guard, slots=slots)
