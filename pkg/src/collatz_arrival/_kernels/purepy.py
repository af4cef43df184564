"""Pure-Python kernels: the portable twin of the compiled extension.

Same contracts as ``_fast``; arbitrary-precision, so it never overflows.
Used as the import-time fallback, as the per-call fallback when the
compiled kernels would leave 64-bit range, and as the benchmark baseline.
"""

from __future__ import annotations

from typing import List, Tuple

from ..errors import ResourceLimitError

STATUS_HIT = 0
STATUS_CYCLE = 1
STATUS_BUDGET = 2
STATUS_LIMIT = 3


def orbit_summary(
    k: int, h: int, sign: int, max_steps: int, state_limit: int
) -> Tuple[int, int, int, int, int, int]:
    """Scan the orbit of k until it hits 1, repeats a state, or runs out.

    Returns (status, hit_step, max_state, distinct_states, cycle_entry,
    cycle_length); fields that do not apply are -1.
    """
    seen = {}
    n = k
    mx = 0
    t = 0
    while True:
        if n > state_limit:
            return (STATUS_LIMIT, -1, mx, len(seen), -1, -1)
        if n == 1:
            return (STATUS_HIT, t, max(mx, 1), len(seen) + 1, -1, -1)
        first = seen.get(n)
        if first is not None:
            return (STATUS_CYCLE, -1, mx, len(seen), first, t - first)
        seen[n] = t
        if n > mx:
            mx = n
        if t == max_steps:
            return (STATUS_BUDGET, -1, mx, len(seen), -1, -1)
        n = h * n + sign if n % 2 else n // 2
        t += 1


def iterate_triples(
    k: int, i: int, h: int, sign: int, index_limit: int
) -> List[Tuple[int, int, int]]:
    """Apply the series step operator i times to the seed monomial at k.

    The series state is a list of (index, wb_exp, wf_exp) triples, one per
    accumulated term; each step moves every live triple through the
    backward (even index, halve, bump wb_exp) or forward (odd index,
    h*n+sign, bump wf_exp) branch and re-injects the seed.
    """
    ns = [k]
    bs = [0]
    fs = [0]
    for it in range(1, i + 1):
        for j, n in enumerate(ns):
            if n % 2:
                n = h * n + sign
                if n > index_limit:
                    raise ResourceLimitError(
                        f"series index exceeded guard limit at iteration {it}",
                        step=it,
                        value=n,
                    )
                ns[j] = n
                fs[j] += 1
            else:
                ns[j] = n // 2
                bs[j] += 1
        ns.append(k)
        bs.append(0)
        fs.append(0)
    return list(zip(ns, bs, fs))


def first_arrival(k: int, h: int, sign: int, max_i: int, index_limit: int) -> int:
    """Smallest iteration whose series carries mass at index 1, or -1.

    Same operator walk as iterate_triples, stopping as soon as a term
    lands on index 1.
    """
    if k == 1:
        return 0
    ns = [k]
    for it in range(1, max_i + 1):
        found = False
        for j, n in enumerate(ns):
            if n % 2:
                n = h * n + sign
                if n > index_limit:
                    raise ResourceLimitError(
                        f"series index exceeded guard limit at iteration {it}",
                        step=it,
                        value=n,
                    )
            else:
                n //= 2
                if n == 1:
                    found = True
            ns[j] = n
        if found:
            return it
        ns.append(k)
    return -1
