"""Codes over Z_k, their weight enumerators, MacWilliams transforms and theta series."""

from .code import (
    Code,
    CodeReport,
    classify,
    code_from_generators,
    direct_sum,
    dual_code,
    format_code,
    four_squares,
    inner_product,
    parse_code,
    type2_code,
    weights,
    whole_space,
    zero_code,
)
from .cyclo import CycInt, as_integer, char_sum, cyclotomic_polynomial, eta_pow
from .cyclolattice import reduce_mod_B, theta_cyclolattice, theta_j, trace_form, verify_theorem4
from .errors import InputError, InvariantError, ResourceError, ZkError
from .qseries import CycSeries, QSeries, eval_series
from .theta import (
    a_series,
    check_lemma1,
    check_prop3,
    check_T_invariance,
    compose,
    lattice,
    theta_construction_a,
    verify_prop1,
    verify_theorem1,
    verify_theorem2,
)
from .wenum import (
    SymWeightEnumerator,
    WeightEnumerator,
    cwe,
    genus_cwe,
    macwilliams_transform,
    symmetrize,
    verify_macwilliams,
)

__version__ = "0.1.0"
