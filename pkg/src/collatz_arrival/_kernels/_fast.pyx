# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: 64-bit twins of ``purepy``.

Any value that would leave signed 64-bit range raises OverflowError; the
dispatcher in ``_kernels`` then retries the call on the pure-Python twin,
which is arbitrary-precision.
"""

from cython.operator cimport dereference
from libc.stdint cimport INT64_MAX, int64_t

from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

from collatz_arrival.errors import ResourceLimitError

STATUS_HIT = 0
STATUS_CYCLE = 1
STATUS_BUDGET = 2
STATUS_LIMIT = 3


def orbit_summary(int64_t k, int64_t h, int64_t sign,
                  int64_t max_steps, int64_t state_limit):
    cdef unordered_map[int64_t, int64_t] seen
    cdef unordered_map[int64_t, int64_t].iterator hit
    cdef int64_t n = k, mx = 0, t = 0
    cdef int64_t odd_cap = (INT64_MAX - 1) // h
    while True:
        if n > state_limit:
            return (STATUS_LIMIT, -1, mx, <int64_t>seen.size(), -1, -1)
        if n == 1:
            return (STATUS_HIT, t, mx if mx > 1 else 1,
                    <int64_t>seen.size() + 1, -1, -1)
        hit = seen.find(n)
        if hit != seen.end():
            return (STATUS_CYCLE, -1, mx, <int64_t>seen.size(),
                    dereference(hit).second, t - dereference(hit).second)
        seen[n] = t
        if n > mx:
            mx = n
        if t == max_steps:
            return (STATUS_BUDGET, -1, mx, <int64_t>seen.size(), -1, -1)
        if n & 1:
            if n > odd_cap:
                raise OverflowError("orbit state left 64-bit range")
            n = h * n + sign
        else:
            n >>= 1
        t += 1


def iterate_triples(int64_t k, int64_t i, int64_t h, int64_t sign,
                    int64_t index_limit):
    cdef vector[int64_t] ns
    cdef vector[int64_t] bs
    cdef vector[int64_t] fs
    cdef int64_t odd_cap = (INT64_MAX - 1) // h
    cdef int64_t it, n
    cdef size_t j, width
    ns.push_back(k); bs.push_back(0); fs.push_back(0)
    for it in range(1, i + 1):
        width = ns.size()
        for j in range(width):
            n = ns[j]
            if n & 1:
                if n > odd_cap:
                    raise OverflowError("series index left 64-bit range")
                n = h * n + sign
                if n > index_limit:
                    raise ResourceLimitError(
                        f"series index exceeded guard limit at iteration {it}",
                        step=it, value=n)
                ns[j] = n
                fs[j] += 1
            else:
                ns[j] = n >> 1
                bs[j] += 1
        ns.push_back(k); bs.push_back(0); fs.push_back(0)
    return [(ns[j], bs[j], fs[j]) for j in range(ns.size())]


def first_arrival(int64_t k, int64_t h, int64_t sign, int64_t max_i,
                  int64_t index_limit):
    cdef vector[int64_t] ns
    cdef int64_t odd_cap = (INT64_MAX - 1) // h
    cdef int64_t it, n
    cdef size_t j, width
    cdef bint found
    if k == 1:
        return 0
    ns.push_back(k)
    for it in range(1, max_i + 1):
        width = ns.size()
        found = False
        for j in range(width):
            n = ns[j]
            if n & 1:
                if n > odd_cap:
                    raise OverflowError("series index left 64-bit range")
                n = h * n + sign
                if n > index_limit:
                    raise ResourceLimitError(
                        f"series index exceeded guard limit at iteration {it}",
                        step=it, value=n)
            else:
                n >>= 1
                if n == 1:
                    found = True
            ns[j] = n
        if found:
            return it
        ns.push_back(k)
    return -1
