"""Artificial-noise-aided secure multicast precoding simulator.

Library plus CLI for directional-modulation transmission over steering-vector
channels: group precoder designs with artificial-noise projection, Monte-Carlo
BER and secrecy sum-rate experiments, and closed-form complexity counts.
"""

from .arrays import (
    AngleErrorModel,
    ArrayConfig,
    GroupLayout,
    build_channels,
    channel_matrix,
    perturb_angles,
    perturb_layout,
    stacked_desired_channel,
    steering_vector,
)
from .complexity import FlopsQuery, flops, polynomial_flops, scaling_exponent
from .config import ConfigError, ExperimentConfig, default_config, load_config
from .metrics import (
    BerPoint,
    SinrReport,
    SsrPoint,
    ber_at_angle,
    secrecy_sum_rate,
    sinr_desired,
    sinr_eve,
    sinr_report,
)
from .precoding import (
    SCHEMES,
    NoiseLoading,
    SchemeDesign,
    anlnr_projector,
    anlnr_value,
    bd_precoder,
    design_scheme,
    max_grp_precoder,
    nsp_an_projector,
    null_space_basis,
    slnr_precoder,
    slnr_value,
)
from .signals import (
    NormFactors,
    PowerProfile,
    norm_factors,
    qpsk_demodulate,
    qpsk_modulate,
    receive,
    scheme_loadings,
    transmit_signal,
)

__version__ = "0.1.0"
