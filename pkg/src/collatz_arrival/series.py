"""Arrival series: the receiver-side view of the dynamics.

A series is a sparse map from state index to a weight polynomial. The
step operator moves mass from index 2n to n (backward, one w_b factor)
and from odd m to h*m+sign (forward, one w_f factor), then re-injects
the seed monomial x^k. Iterating it accumulates, at index n, one
monomial per visit of n by the departure orbit — which is exactly what
the verification harness checks against the trajectory oracle.

Everything here is exact and symbolic; floats appear only in
``SparseSeries.evaluate``, which exists for plot data.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Dict, Iterable, Tuple

from .algebra import Fraction, WeightPoly, WeightValues
from .dynamics import COLLATZ, DEFAULT_GUARD, DynamicsSpec, Guard
from .errors import ContractionError, EvaluationOverflowError, ResourceLimitError

__all__ = [
    "SparseSeries",
    "seed_series",
    "backward_image",
    "forward_image",
    "advance",
    "iterate",
    "from_triples",
    "neumann_tail_bound",
]


class SparseSeries:
    """A truncated arrival series: seed k, iteration count i, coefficient map."""

    __slots__ = ("k", "i", "spec", "_coeffs")

    def __init__(
        self,
        k: int,
        i: int,
        spec: DynamicsSpec,
        coeffs: Dict[int, WeightPoly],
        _validated: bool = False,
    ):
        if not _validated:
            if k < 1:
                raise ValueError(f"seed must be a positive integer, got {k}")
            if i < 0:
                raise ValueError(f"iteration count must be nonnegative, got {i}")
            for n, poly in coeffs.items():
                if n < 1:
                    raise ValueError(f"series index must be positive, got {n}")
                if not poly:
                    raise ValueError(f"zero polynomial stored at index {n}")
        self.k = k
        self.i = i
        self.spec = spec
        self._coeffs = dict(coeffs)

    @property
    def coeffs(self):
        return MappingProxyType(self._coeffs)

    def indices(self):
        return sorted(self._coeffs)

    def coefficient(self, n: int) -> WeightPoly:
        """Stored polynomial at index n; the zero polynomial if absent."""
        if n < 1:
            raise ValueError(f"series index must be positive, got {n}")
        return self._coeffs.get(n, WeightPoly.zero())

    def derivative_at_zero(self) -> WeightPoly:
        """The coefficient at index 1 — the slope of the series at 0."""
        return self.coefficient(1)

    def evaluate(self, x, values: WeightValues) -> complex:
        """Binary64 value of the series at x.

        Real x is kept on the real axis, so the imaginary part of the
        result is exactly 0.0.
        """
        if isinstance(x, complex) and x.imag == 0.0:
            x = x.real
        if isinstance(x, complex):
            total = 0j
            for n in self.indices():
                total += self._term_value(n, values) * _cpow(x, n)
            if not (math.isfinite(total.real) and math.isfinite(total.imag)):
                raise EvaluationOverflowError(
                    f"series value not finite at x={x!r}", x=x
                )
            return total
        xr = float(x)
        total = 0.0
        for n in self.indices():
            total += self._term_value(n, values) * _rpow(xr, n)
        if not math.isfinite(total):
            raise EvaluationOverflowError(f"series value not finite at x={xr!r}", x=xr)
        return complex(total, 0.0)

    def _term_value(self, n: int, values: WeightValues) -> float:
        try:
            return float(self._coeffs[n].evaluate(values))
        except OverflowError:
            raise EvaluationOverflowError(
                f"coefficient at index {n} does not fit binary64", index=n
            ) from None

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "i": self.i,
            "spec": {"h": self.spec.h, "sign": self.spec.sign},
            "coeffs": [
                {"n": n, "poly": self._coeffs[n].render()} for n in self.indices()
            ],
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseSeries):
            return NotImplemented
        return (
            self.k == other.k
            and self.i == other.i
            and self.spec == other.spec
            and self._coeffs == other._coeffs
        )

    def __repr__(self) -> str:
        return (
            f"SparseSeries(k={self.k}, i={self.i}, spec={self.spec}, "
            f"{len(self._coeffs)} indices)"
        )


def _rpow(x: float, n: int) -> float:
    try:
        return x**n
    except OverflowError:
        raise EvaluationOverflowError(f"x**n overflows for x={x!r}, n={n}", x=x, index=n) from None


def _cpow(x: complex, n: int) -> complex:
    try:
        return x**n
    except OverflowError:
        raise EvaluationOverflowError(f"x**n overflows for x={x!r}, n={n}", x=x, index=n) from None


def seed_series(k: int, spec: DynamicsSpec = COLLATZ) -> SparseSeries:
    """The iteration-zero series: the single monomial x^k."""
    if k < 1:
        raise ValueError(f"seed must be a positive integer, got {k}")
    return SparseSeries(k, 0, spec, {k: WeightPoly.one()}, _validated=True)


def backward_image(series: SparseSeries) -> SparseSeries:
    """Even-index extraction: output at n is the input at 2n.

    No weight shift and no iteration bump; this is one constituent of
    ``advance``.
    """
    out = {n // 2: poly for n, poly in series._coeffs.items() if n % 2 == 0}
    return SparseSeries(series.k, series.i, series.spec, out, _validated=True)


def forward_image(series: SparseSeries) -> SparseSeries:
    """Odd-index reindexing: mass at odd m moves to h*m+sign.

    Even indices are annihilated; no weight shift, no iteration bump.
    """
    spec = series.spec
    out = {
        spec.h * n + spec.sign: poly
        for n, poly in series._coeffs.items()
        if n % 2
    }
    return SparseSeries(series.k, series.i, spec, out, _validated=True)


def advance(series: SparseSeries) -> SparseSeries:
    """One application of the step operator plus seed re-injection."""
    out = {
        n: poly.shift_backward()
        for n, poly in backward_image(series)._coeffs.items()
    }
    for n, poly in forward_image(series)._coeffs.items():
        shifted = poly.shift_forward()
        acc = out.get(n)
        out[n] = shifted if acc is None else acc + shifted
    seed = WeightPoly.one()
    acc = out.get(series.k)
    out[series.k] = seed if acc is None else acc + seed
    return SparseSeries(series.k, series.i + 1, series.spec, out, _validated=True)


def iterate(
    k: int,
    i: int,
    spec: DynamicsSpec = COLLATZ,
    guard: Guard = DEFAULT_GUARD,
) -> SparseSeries:
    """i applications of the step operator to the seed monomial x^k."""
    guard.check_steps(i)
    series = seed_series(k, spec)
    for it in range(1, i + 1):
        series = advance(series)
        top = max(series._coeffs)
        if top > guard.max_state:
            raise ResourceLimitError(
                f"series index exceeded guard limit at iteration {it}",
                step=it,
                value=top,
            )
    return series


def from_triples(
    k: int,
    i: int,
    spec: DynamicsSpec,
    triples: Iterable[Tuple[int, int, int]],
) -> SparseSeries:
    """Materialize a series from kernel (index, wb_exp, wf_exp) triples."""
    acc: Dict[int, dict] = {}
    for n, p, q in triples:
        acc.setdefault(n, {})[(p, q)] = 1
    coeffs = {n: WeightPoly(terms) for n, terms in acc.items()}
    return SparseSeries(k, i, spec, coeffs, _validated=True)


def neumann_tail_bound(values: WeightValues, i: int) -> Fraction:
    """Geometric bound (|w_b|+|w_f|)^(i+1) on the next iterate's change.

    Valid on |x| <= 1 under the contraction condition; rejects weights
    that violate it.
    """
    if i < 0:
        raise ValueError(f"iteration count must be nonnegative, got {i}")
    total = values.contraction_sum()
    if total >= 1:
        raise ContractionError(
            f"contraction condition |w_b| + |w_f| < 1 violated: "
            f"|{values.w_b}| + |{values.w_f}| = {total}"
        )
    return total ** (i + 1)
