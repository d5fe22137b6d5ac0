"""Generating functions as truncated series and the recurrence synthesizer."""

from .products import (
    GF_NAMES,
    Factor,
    GFCheck,
    InfProductSpec,
    asc1_base,
    asc1_from_gf,
    asc2_base,
    asc2_base_from_gf,
    asc2_from_gf,
    dual_q_hahn_eq3,
    gf_family_series,
    product_series,
    q_vandermonde_step,
    verify_gf_identity,
)
from .synth import (
    REFERENCE,
    GIS_RECURRENCE,
    OrderProbe,
    RecurrenceCheck,
    SynthRecurrence,
    convolve_p1,
    convolve_p1_base,
    convolve_p2,
    convolve_p2_base,
    degrees,
    expected_depth_p1,
    expected_depth_p2,
    gis_polys,
    order_probe,
    predicted_tail,
    synth_from_family,
    synth_p1,
    synth_p2,
    verify_recurrence,
)

__all__ = [
    "REFERENCE",
    "Factor",
    "GFCheck",
    "GF_NAMES",
    "GIS_RECURRENCE",
    "InfProductSpec",
    "OrderProbe",
    "RecurrenceCheck",
    "SynthRecurrence",
    "asc1_base",
    "asc1_from_gf",
    "asc2_base",
    "asc2_base_from_gf",
    "asc2_from_gf",
    "convolve_p1",
    "convolve_p1_base",
    "convolve_p2",
    "convolve_p2_base",
    "degrees",
    "dual_q_hahn_eq3",
    "expected_depth_p1",
    "expected_depth_p2",
    "gf_family_series",
    "gis_polys",
    "order_probe",
    "predicted_tail",
    "product_series",
    "q_vandermonde_step",
    "synth_from_family",
    "synth_p1",
    "synth_p2",
    "verify_gf_identity",
    "verify_recurrence",
]
