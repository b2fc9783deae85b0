"""The order induced by an objective on a gauge space, and descent to minimal elements.

Orientation used throughout: ``leq_phi(x, y)`` holds iff

    phi(y) + d(y, x) <= phi(x)   for every gauge member d,

so ``lower_section(x) = {y : leq_phi(x, y)}`` is the set S_phi(x) of points
that improve on x by at least their distance to x.  A point z is minimal
when its lower section is ``{z}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .extended import INF, is_finite
from .instance import Instance, Objective
from .spaces import HypothesisError
from .topology import separation_class


def ineq_holds(phi: Objective, d, x: int, y: int) -> bool:
    """phi(y) + d(y, x) <= phi(x) under the extended-real conventions."""
    rhs = phi(x)
    if rhs is INF:
        return True
    lhs = phi(y)
    if lhs is INF:
        return False
    return lhs + d(y, x) <= rhs


@dataclass(frozen=True)
class PhiOrder:
    instance: Instance
    phi: Objective

    def leq_phi(self, x: int, y: int) -> bool:
        return all(ineq_holds(self.phi, d, x, y) for d in self.instance.gauge)

    def lower_section(self, x: int) -> list:
        return [y for y in range(self.instance.n) if self.leq_phi(x, y)]

    def is_minimal(self, z: int) -> bool:
        return self.lower_section(z) == [z]

    def relation(self) -> frozenset:
        n = self.instance.n
        return frozenset((x, y) for x in range(n) for y in range(n) if self.leq_phi(x, y))


@dataclass
class DescentTrace:
    """The strictly descending chain visited by :func:`minimal_element`."""

    start: int
    steps: list = field(default_factory=list)  # points visited after start
    values: list = field(default_factory=list)  # phi along start + steps

    def chain(self) -> list:
        return [self.start] + list(self.steps)


def check_descent_hypotheses(order: PhiOrder, start: int) -> None:
    inst, phi = order.instance, order.phi
    if not phi.proper:
        raise HypothesisError(f"objective {phi.name!r} is not proper", witness=phi.name)
    if not is_finite(phi(start)):
        raise HypothesisError(f"start point {inst.name(start)!r} is outside dom {phi.name}", witness=inst.name(start))
    sep = separation_class(inst.gauge)
    if sep.value != "T1":
        raise HypothesisError(
            f"gauge topology is {sep.value}, descent needs T1", witness=[inst.name(i) for i in sep.witness]
        )


def minimal_element(order: PhiOrder, start: int, check: bool = True) -> tuple:
    """Walk down ``<=_phi`` from ``start`` to a minimal element.

    Each step moves to the point of S_phi(x) minus {x} with the least phi
    value, ties going to the smaller index.  Under T1 phi drops strictly at
    every step, so the walk ends after at most n - 1 moves.
    """
    if check:
        check_descent_hypotheses(order, start)
    phi = order.phi
    x = start
    trace = DescentTrace(start, values=[phi(start)])
    for _ in range(order.instance.n):
        below = [y for y in order.lower_section(x) if y != x]
        if not below:
            return x, trace
        x = min(below, key=lambda y: (phi(y), y))
        trace.steps.append(x)
        trace.values.append(phi(x))
    raise HypothesisError("descent did not terminate; the order has a cycle")


def leq_phi(instance: Instance, phi: Objective, x, y) -> bool:
    return PhiOrder(instance, phi).leq_phi(instance.idx(x), instance.idx(y))


def lower_section(instance: Instance, phi: Objective, x) -> list:
    return PhiOrder(instance, phi).lower_section(instance.idx(x))
