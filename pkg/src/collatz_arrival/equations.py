"""Linear equations among arrival coefficients, and chain elimination.

Matching the coefficient of x^(2m) on both sides of the squared series
identity gives, for every m >= 1,

    a_m = w_b*a_(2m) + w_f*a_s + delta(m == k),

where the forward term is present only when s = (m - sign)/h is a
positive odd integer (an even s has no odd preimage under n -> h*n+sign).
Back-substituting along the doubling chain a_1 -> a_2 -> a_4 -> ...
yields identities such as (1 - w_b^2*w_f)*a_1 = w_b^3*a_8 that reduce
"the slope at 0 is nonzero" to a single far coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import WeightPoly, WeightValues
from .dynamics import COLLATZ, DynamicsSpec

__all__ = [
    "LinearEquation",
    "ChainRelation",
    "forward_source",
    "generate_equations",
    "render_equation",
    "table_lines",
    "eliminate_chain",
    "weight_condition_ok",
    "K5_TABLE_VARIANTS",
]


@dataclass(frozen=True)
class LinearEquation:
    """a_m = w_b*a_backward + [w_f*a_forward] + constant."""

    m: int
    backward_index: int
    forward_index: Optional[int]
    constant: int  # 1 iff m equals the seed


@dataclass(frozen=True)
class ChainRelation:
    """lhs_poly * a_1 = sum of coef*a_index terms + rhs_constant.

    ``anchored`` is False when the elimination exhausted its depth without
    meeting any forward term or seed constant (the relation is then just a
    bare doubling chain).
    """

    lhs_poly: WeightPoly
    rhs_terms: List[Tuple[WeightPoly, int]]
    rhs_constant: WeightPoly
    anchored: bool

    def render(self) -> str:
        lhs = "a_1" if self.lhs_poly == WeightPoly.one() else f"({self.lhs_poly})*a_1"
        parts = [_coef_times_index(poly, n) for poly, n in self.rhs_terms]
        if self.rhs_constant:
            c = self.rhs_constant
            parts.append(str(c) if c.is_monomial() else f"({c})")
        rhs = " + ".join(parts) if parts else "0"
        return f"{lhs} = {rhs}"


def _coef_times_index(poly: WeightPoly, n: int) -> str:
    if poly == WeightPoly.one():
        return f"a_{n}"
    if poly.is_monomial():
        return f"{poly}*a_{n}"
    return f"({poly})*a_{n}"


def forward_source(m: int, spec: DynamicsSpec = COLLATZ) -> Optional[int]:
    """The odd s with h*s+sign = m, when it exists."""
    d = m - spec.sign
    if d <= 0 or d % spec.h:
        return None
    s = d // spec.h
    return s if s % 2 else None


def generate_equations(
    k: int, m_max: int, spec: DynamicsSpec = COLLATZ
) -> List[LinearEquation]:
    """One coefficient-matching equation per m in 1..m_max."""
    if k < 1 or m_max < 1:
        raise ValueError("seed and m_max must be positive integers")
    return [
        LinearEquation(
            m=m,
            backward_index=2 * m,
            forward_index=forward_source(m, spec),
            constant=1 if m == k else 0,
        )
        for m in range(1, m_max + 1)
    ]


def render_equation(eq: LinearEquation) -> str:
    out = f"a_{eq.m} = w_b*a_{eq.backward_index}"
    if eq.forward_index is not None:
        out += f" + w_f*a_{eq.forward_index}"
    if eq.constant:
        out += f" + {eq.constant}"
    return out


# Equation-table entries for k=5 that circulate with an extra forward term.
# The indicator rejects both sources: (7-1)/3 = 2 and (13-1)/3 = 4 are even,
# and even numbers have no odd preimage under n -> 3n+1.
K5_TABLE_VARIANTS: Dict[int, str] = {
    7: "w_f*a_2 + w_b*a_14",
    13: "w_f*a_4 + w_b*a_26",
}


def _variant_note(m: int, variant: str, eq: LinearEquation, spec: DynamicsSpec) -> str:
    s = (m - spec.sign) // spec.h
    return (
        f"# m={m}: variant listing shows a_{m} = {variant}; forward source "
        f"({m}-{spec.sign})/{spec.h} = {s} is even, so the derived equation is "
        f"{render_equation(eq)}"
    )


def table_lines(
    k: int, m_max: int, spec: DynamicsSpec = COLLATZ, fmt: str = "text"
) -> List[str]:
    """Equation table rows plus '#' discrepancy notes where applicable."""
    if fmt not in ("text", "csv"):
        raise ValueError(f"unknown table format {fmt!r}")
    lines = []
    if fmt == "csv":
        lines.append("m,equation,forward_index,constant")
    flag_variants = k == 5 and spec == COLLATZ
    for eq in generate_equations(k, m_max, spec):
        if fmt == "text":
            lines.append(render_equation(eq))
        else:
            fwd = "" if eq.forward_index is None else str(eq.forward_index)
            lines.append(f"{eq.m},{render_equation(eq)},{fwd},{eq.constant}")
        if flag_variants and eq.m in K5_TABLE_VARIANTS:
            lines.append(_variant_note(eq.m, K5_TABLE_VARIANTS[eq.m], eq, spec))
    return lines


def eliminate_chain(
    k: int, spec: DynamicsSpec = COLLATZ, depth: int = 3
) -> ChainRelation:
    """Back-substitute the doubling chain starting from the equation for a_1.

    Forward terms that point back at a_1 fold into the left-hand factor;
    other forward terms and seed constants accumulate on the right. The
    walk stops at ``depth`` substitutions, or earlier once the seed
    constant is absorbed at a chain head beyond 1.
    """
    if depth < 1:
        raise ValueError(f"depth must be a positive integer, got {depth}")
    if k < 1:
        raise ValueError(f"seed must be a positive integer, got {k}")
    lhs = WeightPoly.one()
    rhs: Dict[int, WeightPoly] = {}
    constant = WeightPoly.zero()
    carry = WeightPoly.one()  # coefficient attached to the current chain head
    head = 1
    anchored = False
    for _ in range(depth):
        eq = LinearEquation(
            m=head,
            backward_index=2 * head,
            forward_index=forward_source(head, spec),
            constant=1 if head == k else 0,
        )
        if eq.constant:
            constant += carry
            anchored = True
        if eq.forward_index is not None:
            folded = carry.shift_forward()
            if eq.forward_index == 1:
                lhs -= folded
            else:
                acc = rhs.get(eq.forward_index)
                rhs[eq.forward_index] = folded if acc is None else acc + folded
            anchored = True
        absorbed = bool(eq.constant) and head > 1
        carry = carry.shift_backward()
        head = eq.backward_index
        if absorbed:
            break
    acc = rhs.get(head)
    rhs[head] = carry if acc is None else acc + carry
    terms = [(poly, n) for n, poly in sorted(rhs.items())]
    return ChainRelation(lhs, terms, constant, anchored)


def weight_condition_ok(values: WeightValues) -> bool:
    """True iff w_b^2 * w_f != 1, exactly."""
    return values.w_b**2 * values.w_f != 1
