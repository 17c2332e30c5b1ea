"""Joinings of finite measure spaces as exact dense tensors.

A joining of factors (X_1, mu_1), ..., (X_n, mu_n) is a probability
measure on the product whose single-coordinate marginals are the mu_i.
Entries are stored flat in lexicographic tuple order.  The module also
carries the two-way correspondence between joinings with an independent
complement face and Markov operators, the predual push of a joining
through a tuple of operators, and exact disintegration over a base.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .errors import InvalidInputError, PreconditionError
from .operators import MarkovOperator
from .rationals import as_fraction
from .spaces import (
    ActionGenerators,
    Automorphism,
    FiniteSpace,
    index_to_tuple,
    iter_tuples,
    product_space,
    space_size,
    tuple_to_index,
)


@dataclass(frozen=True, eq=False)
class ProductMeasure:
    """Probability measure on a product of finite spaces (mass one, entries
    nonnegative).  Marginals are unconstrained; conditional measures produced
    by disintegration live here."""

    factors: tuple[FiniteSpace, ...]
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise InvalidInputError("a measure needs at least one factor")
        entries = tuple(as_fraction(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.size:
            raise InvalidInputError(
                f"expected {self.size} entries, got {len(entries)}"
            )
        mass = Fraction(0)
        for i, x in enumerate(entries):
            if x < 0:
                raise InvalidInputError(
                    f"negative entry at {index_to_tuple(self.shape, i)}"
                )
            mass += x
        if mass != 1:
            raise InvalidInputError(f"total mass is {mass}, expected 1")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(sp.atom_count for sp in self.factors)

    @property
    def order(self) -> int:
        return len(self.factors)

    @property
    def size(self) -> int:
        return space_size(self.shape)

    def value(self, tup: Sequence[int]) -> Fraction:
        return self.entries[tuple_to_index(self.shape, tup)]

    def nonzero(self):
        """(tuple, value) pairs in lexicographic order."""
        shape = self.shape
        return [
            (index_to_tuple(shape, i), x)
            for i, x in enumerate(self.entries)
            if x
        ]

    def __eq__(self, other):
        if not isinstance(other, ProductMeasure):
            return NotImplemented
        return self.factors == other.factors and self.entries == other.entries

    def __hash__(self):
        return hash((self.factors, self.entries))


class JoiningTensor(ProductMeasure):
    """ProductMeasure whose every single-coordinate marginal equals the
    corresponding factor's weight vector."""

    def __post_init__(self):
        super().__post_init__()
        shape = self.shape
        for coord, sp in enumerate(self.factors):
            sums = _axis_sums(self.entries, shape, coord)
            if tuple(sums) != sp.weights:
                raise InvalidInputError(
                    f"marginal onto coordinate {coord} is {tuple(sums)}, "
                    f"expected the factor weights {sp.weights}"
                )

    @classmethod
    def from_nonzero(
        cls,
        factors: Sequence[FiniteSpace],
        values: Mapping[tuple[int, ...], Fraction],
    ) -> "JoiningTensor":
        factors = tuple(factors)
        shape = tuple(sp.atom_count for sp in factors)
        entries = [Fraction(0)] * space_size(shape)
        for tup, x in values.items():
            entries[tuple_to_index(shape, tup)] = as_fraction(x)
        return cls(factors, tuple(entries))


def _axis_sums(entries, shape, coord) -> list[Fraction]:
    """Sum over all coordinates except ``coord``."""
    block = 1
    for n in shape[coord + 1:]:
        block *= n
    m = shape[coord]
    sums = [Fraction(0)] * m
    idx = 0
    outer = space_size(shape) // (m * block)
    for _ in range(outer):
        for s in range(m):
            for _ in range(block):
                x = entries[idx]
                if x:
                    sums[s] += x
                idx += 1
    return sums


def sup_distance(v: ProductMeasure, w: ProductMeasure) -> Fraction:
    """Largest absolute entrywise difference."""
    if v.factors != w.factors:
        raise InvalidInputError("measures live on different products")
    best = Fraction(0)
    for a, b in zip(v.entries, w.entries):
        d = abs(a - b)
        if d > best:
            best = d
    return best


def product_joining(factors: Sequence[FiniteSpace]) -> JoiningTensor:
    """Fully independent joining: entry at t is the product of the weights."""
    factors = tuple(factors)
    if not factors:
        raise InvalidInputError("a joining needs at least one factor")
    entries = [Fraction(1)]
    for sp in factors:
        entries = [w * x for w in entries for x in sp.weights]
    return JoiningTensor(factors, tuple(entries))


def marginal(v: ProductMeasure, coords: Sequence[int]) -> ProductMeasure:
    """Marginal onto the listed coordinates (strictly increasing order).

    Returns a JoiningTensor when called on one, since marginals of a joining
    are joinings of the selected factors.
    """
    coords = tuple(coords)
    if not coords or list(coords) != sorted(set(coords)):
        raise InvalidInputError(f"coords must be nonempty strictly increasing, got {coords}")
    if coords[0] < 0 or coords[-1] >= v.order:
        raise InvalidInputError(f"coords {coords} outside 0..{v.order - 1}")
    shape = v.shape
    kept = set(coords)
    out_shape = tuple(shape[c] for c in coords)
    out = [Fraction(0)] * space_size(out_shape)
    for idx, x in enumerate(v.entries):
        if not x:
            continue
        tup = index_to_tuple(shape, idx)
        sub = tuple(tup[c] for c in coords)
        out[tuple_to_index(out_shape, sub)] += x
    factors = tuple(v.factors[c] for c in coords)
    cls = JoiningTensor if isinstance(v, JoiningTensor) else ProductMeasure
    return cls(factors, tuple(out))


def diagonal_invariance_defect(v: ProductMeasure, action: ActionGenerators) -> Fraction:
    """How far v is from invariance under the diagonal action:
    max over generators g and tuples t of |v(g t) - v(t)|."""
    for sp in v.factors:
        if sp != action.space:
            raise InvalidInputError("every factor must equal the action's space")
    shape = v.shape
    best = Fraction(0)
    for g in action.generators:
        perm = g.perm
        for idx, x in enumerate(v.entries):
            tup = index_to_tuple(shape, idx)
            moved = tuple(perm[t] for t in tup)
            d = abs(v.entries[tuple_to_index(shape, moved)] - x)
            if d > best:
                best = d
    return best


def face_independence_defect(v: ProductMeasure, m: int) -> Fraction:
    """Largest sup-distance between an m-face marginal and the corresponding
    product measure, over all m-subsets of coordinates."""
    if not isinstance(m, int) or not 1 <= m < v.order:
        raise InvalidInputError(f"face order must satisfy 1 <= m < {v.order}, got {m!r}")
    best = Fraction(0)
    for coords in _subsets(v.order, m):
        face = marginal(v, coords)
        target = product_joining([v.factors[c] for c in coords])
        d = sup_distance(face, target)
        if d > best:
            best = d
    return best


def _subsets(n: int, m: int):
    return combinations(range(n), m)


def has_standard_projections(v: ProductMeasure, distinguished: int) -> bool:
    """Whether the distinguished edge carries the factor measure and the
    complementary face is fully independent.  Joinings with this property
    correspond exactly to Markov operators from the distinguished factor to
    the product of the others."""
    if v.order < 2:
        raise InvalidInputError("need at least two factors")
    if not 0 <= distinguished < v.order:
        raise InvalidInputError(f"distinguished coordinate {distinguished} out of range")
    edge = marginal(v, (distinguished,))
    if tuple(edge.entries) != v.factors[distinguished].weights:
        return False
    rest = tuple(c for c in range(v.order) if c != distinguished)
    face = marginal(v, rest)
    return face == product_joining([v.factors[c] for c in rest])


def operator_from_joining(v: ProductMeasure, distinguished: int) -> MarkovOperator:
    """Markov operator P from the distinguished factor to the product of the
    rest, defined by the pairing

        <P f, g>_{L2(rest)} = integral of f (x) g  d v,

    i.e. kernel[rest-tuple][y] = v(y at distinguished, rest-tuple) divided by
    the product weight of the rest-tuple.  Row-stochasticity of the result is
    exactly independence of the complementary face; tensors without it are
    rejected by the MarkovOperator invariants."""
    if v.order < 2:
        raise InvalidInputError("need at least two factors")
    if not 0 <= distinguished < v.order:
        raise InvalidInputError(f"distinguished coordinate {distinguished} out of range")
    rest = tuple(c for c in range(v.order) if c != distinguished)
    rest_factors = [v.factors[c] for c in rest]
    target = product_space(rest_factors)
    source = v.factors[distinguished]
    shape = v.shape
    rest_shape = tuple(shape[c] for c in rest)
    kernel = []
    for t_idx in range(target.atom_count):
        t_tup = index_to_tuple(rest_shape, t_idx)
        w_t = target.weights[t_idx]
        row = []
        for y in range(source.atom_count):
            full = _merge(t_tup, rest, y, distinguished, v.order)
            row.append(v.entries[tuple_to_index(shape, full)] / w_t)
        kernel.append(tuple(row))
    return MarkovOperator(source, target, tuple(kernel))


def joining_from_operator(
    p: MarkovOperator,
    rest_factors: Sequence[FiniteSpace] | None = None,
    distinguished: int = 0,
) -> JoiningTensor:
    """Inverse of operator_from_joining: v(..., y, ...) with y at the
    distinguished position equals weight_target(rest-tuple) * kernel[rest][y].

    ``rest_factors`` names the factorisation of p's target (default: one
    factor); the source factor is inserted at ``distinguished``."""
    if rest_factors is None:
        rest_factors = [p.target]
    rest_factors = tuple(rest_factors)
    if product_space(rest_factors) != p.target:
        raise InvalidInputError("rest_factors do not multiply to the operator's target")
    order = len(rest_factors) + 1
    if not 0 <= distinguished < order:
        raise InvalidInputError(f"distinguished position {distinguished} out of range")
    rest = tuple(c for c in range(order) if c != distinguished)
    factors = [None] * order
    factors[distinguished] = p.source
    for c, sp in zip(rest, rest_factors):
        factors[c] = sp
    factors = tuple(factors)
    shape = tuple(sp.atom_count for sp in factors)
    rest_shape = tuple(shape[c] for c in rest)
    entries = [Fraction(0)] * space_size(shape)
    for t_idx in range(p.target.atom_count):
        t_tup = index_to_tuple(rest_shape, t_idx)
        w_t = p.target.weights[t_idx]
        for y in range(p.source.atom_count):
            full = _merge(t_tup, rest, y, distinguished, order)
            entries[tuple_to_index(shape, full)] = w_t * p.kernel[t_idx][y]
    return JoiningTensor(factors, tuple(entries))


def _merge(rest_tup, rest_coords, y, distinguished, order):
    full = [0] * order
    full[distinguished] = y
    for c, t in zip(rest_coords, rest_tup):
        full[c] = t
    return tuple(full)


def push_joining(v: ProductMeasure, ops: Sequence[MarkovOperator]) -> JoiningTensor:
    """Predual action of a tuple of Markov operators, one per coordinate.

    Coordinate i moves by the transition matrix
    trans(s -> t) = weight_target(t) * kernel[t][s] / weight_source(s),
    which is stochastic and carries mu_source to mu_target; in particular
    marginals stay correct and the result is again a joining.  The
    contraction runs one coordinate at a time.
    """
    ops = tuple(ops)
    if len(ops) != v.order:
        raise InvalidInputError(f"need {v.order} operators, got {len(ops)}")
    for i, op in enumerate(ops):
        if op.source != v.factors[i]:
            raise InvalidInputError(f"operator {i} source does not match factor {i}")
    entries = list(v.entries)
    shape = list(v.shape)
    for axis, op in enumerate(ops):
        trans = _transition_matrix(op)
        entries, new_n = _push_axis(entries, shape, axis, trans, op.target.atom_count)
        shape[axis] = new_n
    return JoiningTensor(tuple(op.target for op in ops), tuple(entries))


def _transition_matrix(op: MarkovOperator) -> list[list[Fraction]]:
    """trans[s][t]: mass flow from source atom s to target atom t."""
    ws, wt = op.source.weights, op.target.weights
    ns, nt = op.source.atom_count, op.target.atom_count
    return [
        [wt[t] * op.kernel[t][s] / ws[s] for t in range(nt)]
        for s in range(ns)
    ]


def _push_axis(entries, shape, axis, trans, new_n):
    block = 1
    for n in shape[axis + 1:]:
        block *= n
    m = shape[axis]
    outer = 1
    for n in shape[:axis]:
        outer *= n
    out = [Fraction(0)] * (outer * new_n * block)
    for p in range(outer):
        src_base = p * m * block
        dst_base = p * new_n * block
        for s in range(m):
            row = trans[s]
            src0 = src_base + s * block
            for t in range(new_n):
                c = row[t]
                if not c:
                    continue
                dst0 = dst_base + t * block
                for o in range(block):
                    x = entries[src0 + o]
                    if x:
                        out[dst0 + o] += c * x
    return out, new_n


def push_by_automorphisms(
    v: ProductMeasure, autos: Sequence[Automorphism]
) -> ProductMeasure:
    """Image measure under a coordinatewise automorphism:
    (T v)(z) = v(T^{-1} z)."""
    autos = tuple(autos)
    if len(autos) != v.order:
        raise InvalidInputError(f"need {v.order} automorphisms, got {len(autos)}")
    for i, a in enumerate(autos):
        if a.space != v.factors[i]:
            raise InvalidInputError(f"automorphism {i} lives on the wrong space")
    shape = v.shape
    inv = [a.inverse().perm for a in autos]
    entries = [
        v.entries[
            tuple_to_index(
                shape, tuple(p[z] for p, z in zip(inv, index_to_tuple(shape, i)))
            )
        ]
        for i in range(v.size)
    ]
    return type(v)(v.factors, tuple(entries))


def product_convergence_trace(
    v: ProductMeasure,
    distinguished_rule: Callable[[int], MarkovOperator],
    fiber_rule: Callable[[int, int], MarkovOperator],
    j_max: int,
    require_standard: bool = False,
) -> tuple[Fraction, ...]:
    """Sup-distances to the fully independent joining after pushing v by
    (distinguished_rule(j), fiber_rule(1, j), ..., fiber_rule(n, j)) for
    j = 1..j_max.

    When the distinguished rule tends to the identity and every fiber rule
    tends to the averaging operator, the trace tends to zero for tensors
    whose complementary face is independent; ``require_standard`` enforces
    that hypothesis up front, while the default leaves the trace available
    as a diagnostic on arbitrary tensors."""
    if v.order < 2:
        raise InvalidInputError("need at least two factors")
    if not isinstance(j_max, int) or j_max < 1:
        raise InvalidInputError(f"j_max must be a positive int, got {j_max!r}")
    if require_standard and not has_standard_projections(v, 0):
        raise PreconditionError(
            "tensor lacks an independent complement face at coordinate 0"
        )
    trace = []
    for j in range(1, j_max + 1):
        ops = [distinguished_rule(j)]
        ops.extend(fiber_rule(i, j) for i in range(1, v.order))
        pushed = push_joining(v, ops)
        trace.append(sup_distance(pushed, product_joining(pushed.factors)))
    return tuple(trace)


# ---------------------------------------------------------------------------
# disintegration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivariantField:
    """Assignment of a fiber measure to every base tuple, stored in
    lexicographic base order.  Every assigned measure has mass one."""

    base_spaces: tuple[FiniteSpace, ...]
    fiber_spaces: tuple[FiniteSpace, ...]
    assignment: tuple[ProductMeasure, ...]

    def __post_init__(self):
        object.__setattr__(self, "base_spaces", tuple(self.base_spaces))
        object.__setattr__(self, "fiber_spaces", tuple(self.fiber_spaces))
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if not self.base_spaces or not self.fiber_spaces:
            raise InvalidInputError("field needs base and fiber factors")
        expected = space_size(sp.atom_count for sp in self.base_spaces)
        if len(self.assignment) != expected:
            raise InvalidInputError(
                f"expected {expected} conditional measures, got {len(self.assignment)}"
            )
        for t in self.assignment:
            if t.factors != self.fiber_spaces:
                raise InvalidInputError(
                    "conditional measure factors do not match the fiber spaces"
                )

    @property
    def base_shape(self) -> tuple[int, ...]:
        return tuple(sp.atom_count for sp in self.base_spaces)

    def at(self, base_tuple: Sequence[int]) -> ProductMeasure:
        return self.assignment[tuple_to_index(self.base_shape, base_tuple)]


def disintegrate(v: ProductMeasure, base_coords: Sequence[int]) -> EquivariantField:
    """Exact disintegration over the marginal on ``base_coords``.

    Requires that marginal to be the independent product of the base factors,
    so every base tuple has positive mass and conditioning is plain division.
    """
    base_coords = tuple(base_coords)
    if not base_coords or list(base_coords) != sorted(set(base_coords)):
        raise InvalidInputError(
            f"base coords must be nonempty strictly increasing, got {base_coords}"
        )
    if base_coords[0] < 0 or base_coords[-1] >= v.order:
        raise InvalidInputError(f"base coords {base_coords} outside 0..{v.order - 1}")
    fiber_coords = tuple(c for c in range(v.order) if c not in base_coords)
    if not fiber_coords:
        raise InvalidInputError("at least one fiber coordinate is required")
    base_factors = tuple(v.factors[c] for c in base_coords)
    base_marg = marginal(v, base_coords)
    if base_marg != product_joining(base_factors):
        raise PreconditionError(
            "marginal onto the base is not the independent product measure"
        )
    fiber_factors = tuple(v.factors[c] for c in fiber_coords)
    shape = v.shape
    base_shape = tuple(shape[c] for c in base_coords)
    fiber_shape = tuple(shape[c] for c in fiber_coords)
    conditionals = []
    for base_tup in iter_tuples(base_shape):
        w = base_marg.value(base_tup)
        fiber_entries = []
        for fiber_tup in iter_tuples(fiber_shape):
            full = [0] * v.order
            for c, x in zip(base_coords, base_tup):
                full[c] = x
            for c, y in zip(fiber_coords, fiber_tup):
                full[c] = y
            fiber_entries.append(v.entries[tuple_to_index(shape, tuple(full))] / w)
        conditionals.append(ProductMeasure(fiber_factors, tuple(fiber_entries)))
    return EquivariantField(base_factors, fiber_factors, tuple(conditionals))


def reassemble(field: EquivariantField, base_coords: Sequence[int]) -> JoiningTensor:
    """Rebuild the joining whose disintegration over ``base_coords`` is the
    field, with base factors at those positions: v = mu_base x conditional."""
    base_coords = tuple(base_coords)
    m, f = len(field.base_spaces), len(field.fiber_spaces)
    order = m + f
    if list(base_coords) != sorted(set(base_coords)) or len(base_coords) != m:
        raise InvalidInputError(f"need {m} strictly increasing base coords")
    if base_coords[0] < 0 or base_coords[-1] >= order:
        raise InvalidInputError(f"base coords {base_coords} outside 0..{order - 1}")
    fiber_coords = tuple(c for c in range(order) if c not in base_coords)
    factors = [None] * order
    for c, sp in zip(base_coords, field.base_spaces):
        factors[c] = sp
    for c, sp in zip(fiber_coords, field.fiber_spaces):
        factors[c] = sp
    factors = tuple(factors)
    shape = tuple(sp.atom_count for sp in factors)
    base_shape = field.base_shape
    fiber_shape = tuple(sp.atom_count for sp in field.fiber_spaces)
    entries = [Fraction(0)] * space_size(shape)
    for base_tup in iter_tuples(base_shape):
        w = Fraction(1)
        for sp, x in zip(field.base_spaces, base_tup):
            w *= sp.weights[x]
        cond = field.at(base_tup)
        for fiber_tup in iter_tuples(fiber_shape):
            full = [0] * order
            for c, x in zip(base_coords, base_tup):
                full[c] = x
            for c, y in zip(fiber_coords, fiber_tup):
                full[c] = y
            entries[tuple_to_index(shape, tuple(full))] = w * cond.value(fiber_tup)
    return JoiningTensor(factors, tuple(entries))


def equivariance_defect(field: EquivariantField, skew, m: int | None = None) -> Fraction:
    """Largest sup-distance between field(S x_1, ..., S x_m) and the image of
    field(x_1, ..., x_m) under R_{x_1} x ... x R_{x_m}, over all base tuples.
    Zero exactly when the field satisfies the cocycle equivariance identity of
    the skew product.  ``m``, when given, must match the number of base
    factors; it exists purely as a caller-side consistency check."""
    if m is not None and m != len(field.base_spaces):
        raise InvalidInputError(
            f"field has {len(field.base_spaces)} base factors, caller expected {m}"
        )
    for sp in field.base_spaces:
        if sp != skew.base:
            raise InvalidInputError("field base spaces must equal the skew base")
    for sp in field.fiber_spaces:
        if sp != skew.fiber:
            raise InvalidInputError("field fiber spaces must equal the skew fiber")
    s_perm = skew.base_map.perm
    best = Fraction(0)
    for base_tup in iter_tuples(field.base_shape):
        moved = tuple(s_perm[x] for x in base_tup)
        pushed = push_by_automorphisms(
            field.at(base_tup), [skew.cocycle[x] for x in base_tup]
        )
        d = sup_distance(field.at(moved), pushed)
        if d > best:
            best = d
    return best
