"""LRPC codes over Galois rings Z_{p^r}[x]/(h).

Layers, from the bottom up: chain-ring and Galois-ring arithmetic, linear
algebra over chain rings (Smith and Howell forms), submodules of R_{q,m},
code construction, the syndrome-space decoder, analytic failure bounds and a
Monte Carlo simulation harness.
"""

from .bounds import (
    BoundInputs,
    IntermediateRingWarning,
    bound_intersection_failure,
    bound_overall_failure,
    bound_overall_success,
    bound_product_failure,
    bound_syndrome_failure,
    intermediate_ring_ok,
)
from .chain_ring import ChainRing
from .code import CodeParams, LrpcCode, generate, degenerate_code
from .decoder import Conditions, DecodeOutcome, FailureReason, check_conditions, decode, erasure_decode
from .errors import *  # noqa: F401,F403
from .galois_ring import GaloisRing, make_galois_ring
from .linalg import count_full_free_rank, free_rank, howell_form, left_kernel, rank, snf, solve_unique
from .sim import SimConfig, SimRow, run_sweep, run_trial
from .submodule import Submodule, intersect, product_module, random_free_submodule, random_vector_with_support

__version__ = "0.1.0"
