"""Backend selection for the trellis kernels.

The numba backend is used by default. Set FLUCTHMM_DISABLE_NUMBA=1 before
import to force the pure-numpy fallback; it is also selected automatically
when numba cannot be imported. Both backends implement identical contracts
(see numpy_backend's docstring for the scaling convention).
"""

import os

ENV_FLAG = "FLUCTHMM_DISABLE_NUMBA"


def numba_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


if numba_disabled():
    from . import numpy_backend as _backend

    BACKEND_NAME = "numpy"
else:
    try:
        from . import numba_backend as _backend

        BACKEND_NAME = "numba"
    except ImportError:
        from . import numpy_backend as _backend

        BACKEND_NAME = "numpy"

forward_scaled = _backend.forward_scaled
backward_scaled = _backend.backward_scaled
posterior_xi = _backend.posterior_xi
viterbi_path = _backend.viterbi_path


def warmup():
    """Run every kernel once on a tiny instance.

    With the numba backend this triggers (or loads the cached) JIT
    compilation up front, keeping it out of timed sections.
    """
    import numpy as np

    pi = np.array([0.5, 0.5])
    trans = np.array([[0.7, 0.3], [0.4, 0.6]])
    obs = np.array([[0.2, 0.5], [0.6, 0.1], [0.3, 0.3]])
    alpha, scale, fail = forward_scaled(pi, trans, obs)
    beta = backward_scaled(trans, obs, scale)
    posterior_xi(alpha, beta, trans, obs, scale)
    viterbi_path(np.log(pi), np.log(trans), np.log(obs))
    return BACKEND_NAME
