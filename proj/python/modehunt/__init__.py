"""Mode hunting with Kolmogorov and persistence signatures.

Signals are sequences of floats read as step functions on the grid i/n.
"""

from ._core import (
    confidence_band,
    delta_ratio,
    detection_bound,
    deviation_bound,
    generate_signal,
    gevl_constants,
    kolmogorov_distance,
    kolmogorov_signatures,
    merge_trace,
    mode_ci,
    mode_count,
    mode_estimate,
    monotone_sup_fit,
    observe,
    persistence_pairs,
    persistence_signatures,
    signature_oracle,
    sup_distance,
    taut_derivative,
    taut_string,
    tau,
    tau_gauss,
)

__all__ = [
    "confidence_band",
    "delta_ratio",
    "detection_bound",
    "deviation_bound",
    "generate_signal",
    "gevl_constants",
    "kolmogorov_distance",
    "kolmogorov_signatures",
    "merge_trace",
    "mode_ci",
    "mode_count",
    "mode_estimate",
    "monotone_sup_fit",
    "observe",
    "persistence_pairs",
    "persistence_signatures",
    "signature_oracle",
    "sup_distance",
    "taut_derivative",
    "taut_string",
    "tau",
    "tau_gauss",
]
