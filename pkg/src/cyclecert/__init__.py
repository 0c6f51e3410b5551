"""Certifying Hamiltonicity for 2K2-free graphs.

Core entry points: solve (graph -> checkable certificate),
verify_certificate, toughness_exact, find_induced_2k2, find_two_factor.
"""
from .errors import (
    CycleCertError,
    GenerationFailed,
    InducedTwoK2Found,
    InvalidAssembly,
    Not2K2Free,
    ParseError,
    TooLarge,
    TooSmall,
)
from .factor import find_two_factor
from .generate import (
    GenSpec,
    enumerate_2k2_free,
    gen_cochordal,
    gen_complete_multipartite,
    gen_random_2k2_rejection,
    gen_split,
    generate,
)
from .graph import Graph, OrientedCycle, OrientedPath, TwoFactor
from .recognize import (
    find_induced_2k2,
    independence_number,
    is_t_tough,
    toughness_exact,
)
from .report import RunReport, run_sweep
from .solve import (
    Certificate,
    certificate_from_json,
    certificate_to_json,
    solve,
    to_dot,
    verify_certificate,
)
from .witness import ToughnessWitness, verify_witness

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CycleCertError",
    "GenSpec",
    "GenerationFailed",
    "Graph",
    "InducedTwoK2Found",
    "InvalidAssembly",
    "Not2K2Free",
    "OrientedCycle",
    "OrientedPath",
    "ParseError",
    "RunReport",
    "TooLarge",
    "TooSmall",
    "ToughnessWitness",
    "TwoFactor",
    "certificate_from_json",
    "certificate_to_json",
    "enumerate_2k2_free",
    "find_induced_2k2",
    "find_two_factor",
    "gen_cochordal",
    "gen_complete_multipartite",
    "gen_random_2k2_rejection",
    "gen_split",
    "generate",
    "independence_number",
    "is_t_tough",
    "run_sweep",
    "solve",
    "to_dot",
    "toughness_exact",
    "verify_certificate",
    "verify_witness",
    "__version__",
]
