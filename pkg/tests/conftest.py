import numpy as np
from hypothesis import HealthCheck, settings

settings.register_profile(
    "zsort",
    deadline=None,  # first calls hit JIT compilation
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("zsort")


def stable_sort_oracle(keys, payload=None):
    """Reference stable sort built on Python's Timsort (key-only comparison).

    Independent of the package's compiled kernels; used as the ground truth
    for small and medium instances.
    """
    keys = np.asarray(keys, dtype=np.int64)
    order = sorted(range(keys.size), key=lambda i: keys[i])
    idx = np.array(order, dtype=np.int64)
    out_keys = keys[idx] if keys.size else keys.copy()
    if payload is None:
        return out_keys, None
    payload = np.asarray(payload)
    return out_keys, payload[idx] if keys.size else payload.copy()
