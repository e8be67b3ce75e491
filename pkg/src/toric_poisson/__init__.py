"""Quadratic Poisson structures, momentum data and modular fields on smooth toric varieties."""

from .charts import VertexChart, atlas, chart_data, transition_map
from .documents import load_document
from .moment import modular_field_cpn, modular_zero_locus, solve_zero_locus
from .poisson import KAPPA, QuadraticBivector, bivector_at
from .polytope import LatticePolytope, check_delzant, from_h_rep, from_vertices
from .verify import CheckReport, SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "KAPPA",
    "CheckReport",
    "LatticePolytope",
    "QuadraticBivector",
    "SuiteConfig",
    "VertexChart",
    "atlas",
    "bivector_at",
    "chart_data",
    "check_delzant",
    "from_h_rep",
    "from_vertices",
    "load_document",
    "modular_field_cpn",
    "modular_zero_locus",
    "run_suite",
    "solve_zero_locus",
    "transition_map",
]
