"""Exact arithmetic in the two formal weights w_b and w_f.

Every coefficient in the arrival series is a polynomial in the backward
weight w_b and the forward weight w_f with exact rational coefficients.
Keeping the weights formal makes "this coefficient is nonzero" mean
"this state is reachable" with no numeric cancellation caveats; numbers
enter only when a polynomial is evaluated at concrete weight values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Tuple, Union

Scalar = Fraction
ScalarLike = Union[Fraction, int]


class Monomial(NamedTuple):
    """w_b^wb_exp * w_f^wf_exp."""

    wb_exp: int
    wf_exp: int

    @property
    def degree(self) -> int:
        return self.wb_exp + self.wf_exp


class WeightValues(NamedTuple):
    """Concrete rational values for the two weights."""

    w_b: Fraction
    w_f: Fraction

    @classmethod
    def of(cls, w_b, w_f) -> "WeightValues":
        return cls(Fraction(w_b), Fraction(w_f))

    def contraction_sum(self) -> Fraction:
        return abs(self.w_b) + abs(self.w_f)

    def is_contraction(self) -> bool:
        return self.contraction_sum() < 1


def _sort_key(item: Tuple[Monomial, Fraction]):
    mon = item[0]
    return (mon[0] + mon[1], mon[0])


class WeightPoly:
    """Sparse polynomial in w_b, w_f over the rationals.

    The zero polynomial is the empty term map; stored coefficients are
    never zero, so structural equality of the maps is polynomial equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping, Iterable, None] = None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for mon, coef in items:
                mon = Monomial(*mon)
                if mon.wb_exp < 0 or mon.wf_exp < 0:
                    raise ValueError(f"negative exponent in monomial {mon}")
                coef = Fraction(coef)
                if coef:
                    acc = data.get(mon)
                    total = coef if acc is None else acc + coef
                    if total:
                        data[mon] = total
                    elif acc is not None:
                        del data[mon]
        self._terms = data

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "WeightPoly":
        return cls()

    @classmethod
    def constant(cls, value: ScalarLike) -> "WeightPoly":
        return cls({Monomial(0, 0): Fraction(value)})

    @classmethod
    def term(cls, wb_exp: int, wf_exp: int, coef: ScalarLike = 1) -> "WeightPoly":
        return cls({Monomial(wb_exp, wf_exp): Fraction(coef)})

    @classmethod
    def one(cls) -> "WeightPoly":
        return cls.constant(1)

    # -- mapping access ----------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, mon) -> Fraction:
        return self._terms.get(Monomial(*mon), Fraction(0))

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- ring operations ---------------------------------------------

    def __add__(self, other: "WeightPoly") -> "WeightPoly":
        if not isinstance(other, WeightPoly):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        data = dict(self._terms)
        for mon, coef in other._terms.items():
            total = data.get(mon, 0) + coef
            if total:
                data[mon] = total
            else:
                data.pop(mon, None)
        return _wrap(data)

    def __neg__(self) -> "WeightPoly":
        return _wrap({mon: -coef for mon, coef in self._terms.items()})

    def __sub__(self, other: "WeightPoly") -> "WeightPoly":
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["WeightPoly", ScalarLike]) -> "WeightPoly":
        if isinstance(other, WeightPoly):
            data = {}
            for (p1, q1), c1 in self._terms.items():
                for (p2, q2), c2 in other._terms.items():
                    mon = Monomial(p1 + p2, q1 + q2)
                    total = data.get(mon, 0) + c1 * c2
                    if total:
                        data[mon] = total
                    else:
                        data.pop(mon, None)
            return _wrap(data)
        coef = Fraction(other)
        if not coef:
            return WeightPoly()
        return _wrap({mon: c * coef for mon, c in self._terms.items()})

    __rmul__ = __mul__

    def shift_backward(self) -> "WeightPoly":
        """Multiply by w_b: every exponent pair (p, q) becomes (p+1, q)."""
        return _wrap({Monomial(p + 1, q): c for (p, q), c in self._terms.items()})

    def shift_forward(self) -> "WeightPoly":
        """Multiply by w_f: every exponent pair (p, q) becomes (p, q+1)."""
        return _wrap({Monomial(p, q + 1): c for (p, q), c in self._terms.items()})

    def evaluate(self, values: WeightValues) -> Fraction:
        """Exact value at concrete weights."""
        total = Fraction(0)
        for (p, q), coef in self._terms.items():
            total += coef * values.w_b**p * values.w_f**q
        return total

    # -- comparison / display ----------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def sorted_terms(self):
        """Terms by (total degree, w_b exponent) descending — the render order."""
        return sorted(self._terms.items(), key=_sort_key, reverse=True)

    def render(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for mon, coef in self.sorted_terms():
            body = _monomial_body(mon)
            mag = abs(coef)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag}*{body}"
            if not out:
                out.append(("-" if coef < 0 else "") + piece)
            else:
                out.append((" - " if coef < 0 else " + ") + piece)
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"WeightPoly({dict(self.sorted_terms())!r})"


def _wrap(data: dict) -> WeightPoly:
    poly = WeightPoly.__new__(WeightPoly)
    poly._terms = data
    return poly


def _monomial_body(mon: Monomial) -> str:
    parts = []
    if mon.wb_exp:
        parts.append("w_b" if mon.wb_exp == 1 else f"w_b^{mon.wb_exp}")
    if mon.wf_exp:
        parts.append("w_f" if mon.wf_exp == 1 else f"w_f^{mon.wf_exp}")
    return "*".join(parts)
