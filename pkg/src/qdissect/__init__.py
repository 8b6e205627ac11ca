"""Exact and modular q-series engine for eta-quotient dissections and
partition congruences."""

__version__ = "0.1.0"

from .congruence import (  # noqa: E402
    P33,
    CongruenceClaim,
    check_claim,
    legendre,
    quadratic_criterion,
    scan,
    theorem1_suite,
    theorem2_claims,
    theorem3_suite,
)
from .dissect import build_pdissection, residue_support, verify_identity, verify_pdissection  # noqa: E402
from .etalang import EtaExpr, eta_series, evaluate, parse, theta_series  # noqa: E402
from .series import EXACT, Ring, Series  # noqa: E402
