"""Complex special functions used by the analytic propagators."""

from .control import DEFAULT_CONTROL, SeriesControl
from .gamma import gamma_complex, log_gamma, rgamma
from .hyp2f1 import gauss_2f1, gauss_2f1_dz, gauss_2f1_grid, gauss_2f1_pair
from .lambertw import lambert_w_m1
from .pcf import REGIMES, pcf_d, pcf_d_derivative, pcf_d_regime

__all__ = [
    "DEFAULT_CONTROL",
    "REGIMES",
    "SeriesControl",
    "gamma_complex",
    "gauss_2f1",
    "gauss_2f1_dz",
    "gauss_2f1_grid",
    "gauss_2f1_pair",
    "lambert_w_m1",
    "log_gamma",
    "pcf_d",
    "pcf_d_derivative",
    "pcf_d_regime",
    "rgamma",
]
