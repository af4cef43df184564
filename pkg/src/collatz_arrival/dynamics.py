"""Departure-side dynamics: the brute-force trajectory oracle.

This module is deliberately plain Python over arbitrary-precision ints.
It is the reference every series-side computation is checked against,
so it stays simple and unaccelerated; the fast kernels live elsewhere
and are themselves validated against these functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import ResourceLimitError

__all__ = [
    "DynamicsSpec",
    "Guard",
    "Trajectory",
    "COLLATZ",
    "DEFAULT_GUARD",
    "step",
    "departure",
    "hitting_time",
    "detect_cycle",
]


@dataclass(frozen=True)
class DynamicsSpec:
    """The h*n+sign / n/2 dynamics family; h=3, sign=+1 is the Collatz map."""

    h: int = 3
    sign: int = 1

    def __post_init__(self):
        if self.h < 3 or self.h % 2 == 0:
            # h=1 with sign=-1 would map 1 -> 0, leaving the positive integers.
            raise ValueError(f"multiplier must be an odd integer >= 3, got {self.h}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")


COLLATZ = DynamicsSpec(3, 1)


@dataclass(frozen=True)
class Guard:
    """Resource limits for orbit and series computations.

    Divergent orbits of the generalized dynamics must fail loudly instead
    of exhausting memory, so state magnitude and step count are capped.
    """

    max_state: int = 10**10000
    max_steps: int = 10**7

    def check_steps(self, steps: int):
        if steps > self.max_steps:
            raise ResourceLimitError(
                f"step budget {steps} exceeds guard limit {self.max_steps}",
                step=steps,
            )

    def check_state(self, state: int, step_index: int):
        if state > self.max_state:
            raise ResourceLimitError(
                f"state at step {step_index} exceeds guard magnitude limit "
                f"(~10^{len(str(self.max_state)) - 1})",
                step=step_index,
                value=state,
            )


DEFAULT_GUARD = Guard()


@dataclass
class Trajectory:
    """A departure-sequence prefix: states, visit map, and cycle info."""

    start: int
    spec: DynamicsSpec
    states: List[int]
    visits: Dict[int, List[int]] = field(repr=False)
    cycle: Optional[Tuple[int, int]] = None  # (entry_step, cycle_length)

    @property
    def parities(self) -> List[str]:
        return ["even" if s % 2 == 0 else "odd" for s in self.states]

    def __len__(self) -> int:
        return len(self.states)


def step(n: int, spec: DynamicsSpec = COLLATZ) -> int:
    """One application of the map: h*n+sign on odd n, n/2 on even n."""
    if n < 1:
        raise ValueError(f"state must be a positive integer, got {n}")
    if n % 2:
        return spec.h * n + spec.sign
    return n // 2


def departure(
    k: int,
    spec: DynamicsSpec = COLLATZ,
    steps: int = 0,
    guard: Guard = DEFAULT_GUARD,
) -> Trajectory:
    """Compute steps+1 states of the orbit of k, with visit map and cycle.

    The cycle field records the first repeated state: entry step is its
    first occurrence, the period is the gap to its reoccurrence.
    """
    if k < 1:
        raise ValueError(f"start value must be a positive integer, got {k}")
    guard.check_steps(steps)
    states = [k]
    visits: Dict[int, List[int]] = {k: [0]}
    cycle = None
    n = k
    for t in range(1, steps + 1):
        n = step(n, spec)
        guard.check_state(n, t)
        states.append(n)
        slots = visits.setdefault(n, [])
        if slots and cycle is None:
            cycle = (slots[0], t - slots[0])
        slots.append(t)
    return Trajectory(start=k, spec=spec, states=states, visits=visits, cycle=cycle)


def hitting_time(
    k: int,
    target: int,
    spec: DynamicsSpec = COLLATZ,
    max_steps: int = 10**4,
    guard: Guard = DEFAULT_GUARD,
) -> Optional[int]:
    """Smallest i <= max_steps with orbit state equal to target, else None."""
    if k < 1 or target < 1:
        raise ValueError("start and target must be positive integers")
    guard.check_steps(max_steps)
    n = k
    for i in range(max_steps + 1):
        if n == target:
            return i
        n = step(n, spec)
        guard.check_state(n, i + 1)
    return None


def detect_cycle(
    k: int,
    spec: DynamicsSpec = COLLATZ,
    max_steps: int = 10**4,
    guard: Guard = DEFAULT_GUARD,
) -> Optional[Tuple[int, int]]:
    """First repeated state within budget, as (entry_step, cycle_length)."""
    if k < 1:
        raise ValueError(f"start value must be a positive integer, got {k}")
    guard.check_steps(max_steps)
    seen: Dict[int, int] = {}
    n = k
    for t in range(max_steps + 1):
        first = seen.get(n)
        if first is not None:
            return (first, t - first)
        seen[n] = t
        n = step(n, spec)
        guard.check_state(n, t + 1)
    return None
