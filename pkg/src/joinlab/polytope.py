"""Joining polytopes: exact linear programming over invariant joinings.

For an action on one space, the polytope of order-n tensors with
nonnegative entries, diagonal invariance under every generator and fully
independent m-faces always contains the product measure; whether it
contains anything else is decided exactly by scanning every coordinate
with a max and a min LP.  Vertices come back as tensors and are
re-verified through the joining defect checks, an independent code path
from the LP itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import InvalidInputError, ResourceLimitError
from .joinings import (
    JoiningTensor,
    diagonal_invariance_defect,
    face_independence_defect,
    product_joining,
)
from .rationals import as_fraction
from .simplex import RationalSimplex
from .spaces import ActionGenerators, index_to_tuple, iter_tuples, tuple_to_index

SIZE_CAP = 65536
ORDER_CAP = 4


@dataclass(frozen=True)
class PolytopeSpec:
    """Order-n joining polytope of an action with independent m-faces."""

    action: ActionGenerators
    order: int
    independence: int

    def __post_init__(self):
        if not isinstance(self.order, int) or not 2 <= self.order <= ORDER_CAP:
            raise InvalidInputError(
                f"order must be an int in 2..{ORDER_CAP}, got {self.order!r}"
            )
        if (
            not isinstance(self.independence, int)
            or not 1 <= self.independence < self.order
        ):
            raise InvalidInputError(
                f"independence must satisfy 1 <= m < {self.order}, "
                f"got {self.independence!r}"
            )
        if self.action.space.atom_count ** self.order > SIZE_CAP:
            raise ResourceLimitError(
                f"{self.action.space.atom_count}^{self.order} tensor entries "
                f"exceed the cap of {SIZE_CAP}"
            )

    @property
    def size(self) -> int:
        return self.action.space.atom_count ** self.order

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.action.space.atom_count,) * self.order


@dataclass(frozen=True)
class LpOutcome:
    status: str
    optimum: Fraction | None
    witness: JoiningTensor | None


@dataclass(frozen=True)
class TrivialityCertificate:
    """trivial=True: the polytope is exactly {product measure}.  Otherwise
    ``witness`` is a vertex and ``max_deviation`` its sup-distance to the
    product measure."""

    trivial: bool
    max_deviation: Fraction
    witness: JoiningTensor | None


def _constraints(spec: PolytopeSpec):
    """Equality rows over the tensor coordinates, deterministic order:
    one chain of equalities per generator orbit on tuples, then every
    m-face marginal pinned to the product of weights."""
    shape = spec.shape
    n = spec.size
    weights = spec.action.space.weights
    tuples = [index_to_tuple(shape, idx) for idx in range(n)]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    zero, one = Fraction(0), Fraction(1)
    for g in spec.action.generators:
        perm = g.perm
        moved = [
            tuple_to_index(shape, tuple(perm[t] for t in tup)) for tup in tuples
        ]
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            cur = moved[start]
            while cur != start:
                cycle.append(cur)
                seen[cur] = True
                cur = moved[cur]
            for a, b in zip(cycle, cycle[1:]):
                row = [zero] * n
                row[a] = one
                row[b] = -one
                rows.append(row)
                rhs.append(zero)
    m = spec.independence
    sub_shape = (spec.action.space.atom_count,) * m
    sub_count = spec.action.space.atom_count ** m
    for coords in combinations(range(spec.order), m):
        face_rows = [[zero] * n for _ in range(sub_count)]
        for idx, tup in enumerate(tuples):
            sub = tuple(tup[c] for c in coords)
            face_rows[tuple_to_index(sub_shape, sub)][idx] = one
        for sub_idx, row in enumerate(face_rows):
            rows.append(row)
            target = Fraction(1)
            for s in index_to_tuple(sub_shape, sub_idx):
                target *= weights[s]
            rhs.append(target)
    return rows, rhs


class JoinlabInternalError(AssertionError):
    """An internal cross-check failed; indicates a solver bug."""


def _solver(spec: PolytopeSpec, kernel=None) -> RationalSimplex:
    rows, rhs = _constraints(spec)
    return RationalSimplex(rows, rhs, spec.size, kernel=kernel)


def _as_tensor(spec: PolytopeSpec, solution: Sequence[Fraction]) -> JoiningTensor:
    factors = (spec.action.space,) * spec.order
    tensor = JoiningTensor(factors, tuple(solution))
    # independent re-check through the joining module, not the LP
    if diagonal_invariance_defect(tensor, spec.action) != 0:
        raise JoinlabInternalError("LP vertex fails diagonal invariance")
    if face_independence_defect(tensor, spec.independence) != 0:
        raise JoinlabInternalError("LP vertex fails face independence")
    return tensor


def optimize(spec: PolytopeSpec, objective: Sequence, sense: str = "max") -> LpOutcome:
    """Optimise a linear functional of the tensor entries over the polytope.

    Deterministic: identical inputs produce identical vertices."""
    objective = [as_fraction(x) for x in objective]
    if len(objective) != spec.size:
        raise InvalidInputError(
            f"objective length {len(objective)} != tensor size {spec.size}"
        )
    solver = _solver(spec)
    sol = solver.solve_for(objective, sense)
    if sol.status != "optimal":
        return LpOutcome(sol.status, None, None)
    return LpOutcome("optimal", sol.value, _as_tensor(spec, sol.solution))


def certify_triviality(spec: PolytopeSpec, kernel=None) -> TrivialityCertificate:
    """Decide whether the polytope is exactly {product measure}.

    Scans max and min of every coordinate (2 * size LPs on one warm-started
    solver); trivial iff every optimum equals the product-measure entry.
    Sound and complete: the box of coordinate ranges collapses to a point
    iff the polytope does, since the product measure is always feasible."""
    target = product_joining((spec.action.space,) * spec.order)
    solver = _solver(spec, kernel=kernel)
    zero = Fraction(0)
    trivial = True
    best_dev = zero
    best_solution = None
    objective = [zero] * spec.size
    for coord in range(spec.size):
        objective[coord] = Fraction(1)
        for sense in ("max", "min"):
            sol = solver.solve_for(objective, sense)
            if sol.status != "optimal":
                # the product measure is always feasible
                raise JoinlabInternalError("joining polytope reported infeasible")
            if sol.value != target.entries[coord]:
                trivial = False
                dev = max(
                    abs(a - b) for a, b in zip(sol.solution, target.entries)
                )
                if dev > best_dev:
                    best_dev = dev
                    best_solution = sol.solution
        objective[coord] = zero
    if trivial:
        return TrivialityCertificate(True, zero, None)
    return TrivialityCertificate(False, best_dev, _as_tensor(spec, best_solution))
