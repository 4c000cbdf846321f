"""Exact characteristic numbers, Hirzebruch genera and the total-Betti-3 classification checks."""

from .numerics import (
    RationalInterval,
    bernoulli,
    interval_ops,
    pi_enclosure,
    zeta_even_coeff,
)
from .series import (
    GenusKind,
    GradedPolynomial,
    Partition,
    PowerSeries,
    genus_coefficient,
    multiplicative_sequence,
    partitions_of,
    q_series,
    series_arith,
)
from .charnum import (
    ChernData,
    GenusReport,
    PontryaginData,
    chern_numbers_equal,
    chern_to_pontryagin,
    euler_char,
    fixture_cpn,
    genera,
    product_chern_data,
    validate,
    verify_class_identity,
)

__all__ = [
    "RationalInterval",
    "bernoulli",
    "interval_ops",
    "pi_enclosure",
    "zeta_even_coeff",
    "GenusKind",
    "GradedPolynomial",
    "Partition",
    "PowerSeries",
    "genus_coefficient",
    "multiplicative_sequence",
    "partitions_of",
    "q_series",
    "series_arith",
    "ChernData",
    "GenusReport",
    "PontryaginData",
    "chern_numbers_equal",
    "chern_to_pontryagin",
    "euler_char",
    "fixture_cpn",
    "genera",
    "product_chern_data",
    "validate",
    "verify_class_identity",
]
