"""Order-stable parallel map gated by the CUBEMILL_THREADS env var.

CUBEMILL_THREADS unset or "1" runs sequentially; "0" means one worker per CPU;
any other positive integer is used verbatim. Results always come back in input
order, so callers stay byte-deterministic regardless of the setting.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count():
    raw = os.environ.get("CUBEMILL_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def parallel_map(fn, items):
    """Map ``fn`` over ``items`` preserving order, possibly on worker threads."""
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
