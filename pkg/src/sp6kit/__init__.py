"""Exact computational toolkit: symplectic ideal membership and a
supersingular-prime census for rational elliptic curves."""

__version__ = "0.1.0"

from .census import CurveQ, census_pair, is_supersingular, trace_ap  # noqa: E402
from .groebner import (  # noqa: E402
    DEGREVLEX,
    LEX,
    GroebnerBasis,
    buchberger,
    group_basis,
    is_member,
    normal_form,
)
from .mpoly import MPoly, parse  # noqa: E402
from .relations import build_relations, verify_identities  # noqa: E402
from .symplectic import g_polynomial, random_symplectic, sp_generators  # noqa: E402

__all__ = [
    "__version__",
    "CurveQ",
    "census_pair",
    "is_supersingular",
    "trace_ap",
    "DEGREVLEX",
    "LEX",
    "GroebnerBasis",
    "buchberger",
    "group_basis",
    "is_member",
    "normal_form",
    "MPoly",
    "parse",
    "build_relations",
    "verify_identities",
    "g_polynomial",
    "random_symplectic",
    "sp_generators",
]
