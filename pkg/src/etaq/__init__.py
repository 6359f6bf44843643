"""Eta-quotients on Gamma_0(N): modularity, cusp orders, spaces of forms, and
exact decompositions of weight-2 newforms."""

__version__ = "0.1.0"

from .etaquot import EtaQuotient, classify, cusp_orders_all, is_modular, nebentypus, q_expansion, weight
from .gamma0 import dim_cusp_forms, level_profile, sturm_bound
from .qseries import FracSeries

__all__ = [
    "EtaQuotient",
    "FracSeries",
    "classify",
    "cusp_orders_all",
    "dim_cusp_forms",
    "is_modular",
    "level_profile",
    "nebentypus",
    "q_expansion",
    "sturm_bound",
    "weight",
]
