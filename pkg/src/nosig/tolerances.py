"""Numerical tolerances used across the package."""

HERMITICITY_TOL = 1e-10
EIG_TOL = 1e-12
EQUALITY_TOL = 1e-10

NORM_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10
ZERO_PROBABILITY = 1e-14

SIGNALLING_THRESHOLD = 1e-9


def as_dict():
    return {
        "hermiticity": HERMITICITY_TOL,
        "eigensolver": EIG_TOL,
        "equality": EQUALITY_TOL,
        "norm": NORM_TOL,
        "trace": TRACE_TOL,
        "psd": PSD_TOL,
        "zero_probability": ZERO_PROBABILITY,
    }
