"""Ordered map over enumeration roots, optionally in worker processes."""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from functools import partial


def imap_roots(func, payload, roots, workers: int = 1):
    """Yield ``func(payload, r)`` for each root, in ``roots`` order.

    With ``workers > 1`` the calls run in a process pool; the yield order is
    unchanged, so a reduction over the results does not depend on the worker
    count.
    """
    roots = list(roots)
    if workers <= 1 or len(roots) <= 1:
        for r in roots:
            yield func(payload, r)
        return
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        ctx = None
    workers = min(workers, len(roots))
    chunk = max(1, len(roots) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        yield from pool.map(partial(func, payload), roots, chunksize=chunk)
