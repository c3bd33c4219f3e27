"""Unit interval orders, chromatic symmetric functions and Escher sequences."""

import json

from ._core import (
    ConfigError,
    InternalError,
    Uio,
    all_suites,
    calibrate,
    check,
    check_round_trip,
    convention_names,
    count_eschers,
    count_full_corrects,
    disjoint_pair_count,
    e_coefficients,
    enumerate_eschers,
    generate_all,
    is_escher,
    m_coeff_U,
    phi,
    psi,
    s_coefficients,
    sink_histogram,
    verify_gnechrom,
)
from ._core import _run_sweep


def run_sweep(n, suites=None, lam=None, jobs=1, convention="default"):
    """Run a verification sweep; returns (report dict, exit status)."""
    text, status = _run_sweep(n, list(suites or all_suites()), lam, jobs, convention)
    return json.loads(text), status


__all__ = [
    "ConfigError",
    "InternalError",
    "Uio",
    "all_suites",
    "calibrate",
    "check",
    "check_round_trip",
    "convention_names",
    "count_eschers",
    "count_full_corrects",
    "disjoint_pair_count",
    "e_coefficients",
    "enumerate_eschers",
    "generate_all",
    "is_escher",
    "m_coeff_U",
    "phi",
    "psi",
    "run_sweep",
    "s_coefficients",
    "sink_histogram",
    "verify_gnechrom",
]
