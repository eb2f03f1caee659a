"""Order-preserving map over worker processes."""
import os
from concurrent.futures import ProcessPoolExecutor

THREADS_ENV = "OHMIC_PROBE_THREADS"


def worker_count(requested=None) -> int:
    env = os.environ.get(THREADS_ENV)
    cap = int(env) if env else None
    n = requested if requested is not None else (cap or 1)
    if cap is not None:
        n = min(n, cap)
    return max(1, int(n))


def ordered_map(fn, items, workers=None):
    items = list(items)
    n = worker_count(workers)
    if n == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
