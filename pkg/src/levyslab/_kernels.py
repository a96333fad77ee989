"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The backend is picked once at import time from the LEVYSLAB_BACKEND
environment variable: "numba" (default) compiles the loops with @njit,
"numpy" forces the vectorized fallback. Both implementations are exported
so they can be benchmarked against each other (benchmarks/bench_backends.py).
"""

import os
import warnings

import numpy as np


def causal_conv_numpy(x, w):
    """out[i] = sum_{j<=i} w[j] * x[i-j], truncated to len(x)."""
    n = x.shape[0]
    return np.convolve(x, w)[:n]


def ml_horner_numpy(z, coefs):
    """Evaluate sum_k coefs[k] * z**k by Horner over a complex batch."""
    out = np.full(z.shape, coefs[-1], dtype=np.complex128)
    for k in range(coefs.shape[0] - 2, -1, -1):
        out *= z
        out += coefs[k]
    return out


causal_conv_numba = None
ml_horner_numba = None

_requested = os.environ.get("LEVYSLAB_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    warnings.warn(
        f"LEVYSLAB_BACKEND={_requested!r} not recognised, using 'numba'",
        stacklevel=1,
    )
    _requested = "numba"

BACKEND = "numpy"
if _requested == "numba":
    try:
        from numba import njit

        @njit(cache=True)
        def _causal_conv_jit(x, w):
            n = x.shape[0]
            m = w.shape[0]
            out = np.zeros(n, dtype=x.dtype)
            for i in range(n):
                jmax = i + 1 if i + 1 < m else m
                acc = out[i]
                for j in range(jmax):
                    acc += w[j] * x[i - j]
                out[i] = acc
            return out

        @njit(cache=True)
        def _ml_horner_jit(z, coefs):
            npts = z.shape[0]
            K = coefs.shape[0]
            out = np.empty(npts, dtype=np.complex128)
            for i in range(npts):
                acc = coefs[K - 1] + 0j
                for k in range(K - 2, -1, -1):
                    acc = acc * z[i] + coefs[k]
                out[i] = acc
            return out

        causal_conv_numba = _causal_conv_jit
        ml_horner_numba = _ml_horner_jit
        BACKEND = "numba"
    except ImportError:
        warnings.warn("numba unavailable, falling back to numpy kernels", stacklevel=1)

if BACKEND == "numba":
    causal_conv = causal_conv_numba
    ml_horner = ml_horner_numba
else:
    causal_conv = causal_conv_numpy
    ml_horner = ml_horner_numpy


def backend_name():
    return BACKEND
