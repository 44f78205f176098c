"""Exact exponents of finite-dimensional Hopf algebras."""

from .constructions import (
    FiniteGroupTable,
    cyclic_group,
    dual_group_algebra,
    group_algebra,
    klein_four,
    named_group,
    symmetric_group,
    sweedler,
    taft,
)
from .coradical import (
    coradical_filtration,
    is_dual_chevalley,
    loewy_length,
    simple_decomposition,
)
from .deform import drinfeld_double, smash_s2, twist
from .exponent import brute_force_exponent, exponent, exponent0, exponent_2i, find_pivotal, grouplikes
from .fields import make_field, parse_field
from .hopf import HopfAlgebra, coopposite, dual, opposite, tensor, verify_axioms
from .io import parse_document, serialize
from .theorems import run_suite

__version__ = "0.1.0"
