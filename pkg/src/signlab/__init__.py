"""signlab: a certified laboratory for sign degree and approximate degree.

Everything degree-related is exact (rational LP with independent certificate
verification); only the adversary-bound module uses floating point.  See the
README for the command-line surface and file formats.
"""

from .boolfn import (
    ZERO_DEGREE,
    BoolFunction,
    FourierExpansion,
    RationalTable,
    and_function,
    character_eval,
    constant,
    degree,
    fourier_transform,
    inner_product,
    l1_norm,
    or_function,
    pure_high_degree,
    xor_function,
)
from .composition import (
    ComposedFunction,
    CompositionReport,
    check_supermultiplicativity,
    compose_functions,
    compose_witnesses,
    iterate_compose,
    mu_factor,
)
from .degreelp import (
    ALPHA_INFINITY,
    Alpha,
    DegreeCertificate,
    DualWitness,
    SignRepresentation,
    WitnessCheck,
    approx_degree,
    best_correlation,
    brute_force_degree_at_most,
    extract_dual_witness,
    is_degree_at_most,
    load_witness,
    save_witness,
    sign_degree,
    verify_dual_witness,
    zero_degree_witness,
)
from .errors import SignLabError
from .formula import (
    build_balanced_and_or,
    build_minsky_papert,
    count_formulas,
    de_morgan_dual,
    enumerate_formulas,
    formula_to_text,
    parse,
    size,
    to_function,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_INFINITY",
    "Alpha",
    "BoolFunction",
    "ComposedFunction",
    "CompositionReport",
    "DegreeCertificate",
    "DualWitness",
    "FourierExpansion",
    "RationalTable",
    "SignLabError",
    "SignRepresentation",
    "WitnessCheck",
    "ZERO_DEGREE",
    "and_function",
    "approx_degree",
    "best_correlation",
    "brute_force_degree_at_most",
    "build_balanced_and_or",
    "build_minsky_papert",
    "character_eval",
    "check_supermultiplicativity",
    "compose_functions",
    "compose_witnesses",
    "constant",
    "count_formulas",
    "de_morgan_dual",
    "degree",
    "enumerate_formulas",
    "extract_dual_witness",
    "formula_to_text",
    "fourier_transform",
    "inner_product",
    "is_degree_at_most",
    "iterate_compose",
    "l1_norm",
    "load_witness",
    "mu_factor",
    "or_function",
    "parse",
    "pure_high_degree",
    "save_witness",
    "sign_degree",
    "size",
    "to_function",
    "verify_dual_witness",
    "xor_function",
    "zero_degree_witness",
    "__version__",
]
