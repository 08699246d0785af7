"""
Doppler focusing.

    Phi[m, q, u, k] = sum_p y[m, q, p, k] exp(-j 2 pi nu_u p tau),
    nu_u = -1/(2 tau) + u / (P tau)

exp(-j 2 pi nu_u p tau) = (-1)^p exp(-j 2 pi u p / P), so the sum is an FFT over
the pulse axis of the sign-alternated coefficients.
"""
import numpy as np

from models.data_models import CoefficientTensor, FocusedTensor, RadarParams

PULSE_AXIS = 2


def focus_frequencies(params: RadarParams) -> np.ndarray:
    return -1.0 / (2.0 * params.tau) + np.arange(params.P) / (params.P * params.tau)


def doppler_focus(tensor: CoefficientTensor) -> FocusedTensor:
    params = tensor.params
    P = tensor.data.shape[PULSE_AXIS]
    alternating = np.where(np.arange(P) % 2 == 0, 1.0, -1.0)[np.newaxis, np.newaxis, :, np.newaxis]
    data = np.fft.fft(tensor.data * alternating, axis=PULSE_AXIS)
    return FocusedTensor(
        data=data,
        kappa=tensor.kappa,
        params=params,
        gamma=tensor.gamma,
        frequencies=focus_frequencies(params),
    )
