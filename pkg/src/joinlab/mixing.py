"""Multiple mixing statistics, exact on finite systems.

correlation measures mu(A_0 ^ S^{k_1} A_1 ^ S^{k_1+k_2} A_2 ^ ...) with
images of sets under powers; offset_joining packages the same data as a
graph-type self-joining so the two computations cross-check each other
exactly.  The relative variants run along a skew product's fibers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInputError, ResourceLimitError
from .joinings import JoiningTensor
from .skew import SkewProduct, as_automorphism
from .spaces import (
    Automorphism,
    MeasurableSet,
    compose,
    iter_tuples,
)

SIZE_CAP = 65536


@dataclass(frozen=True)
class OffsetVector:
    """Positive gaps k_1, ..., k_n between successive powers."""

    offsets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(self.offsets))
        if not self.offsets:
            raise InvalidInputError("offset vector must be nonempty")
        for k in self.offsets:
            if not isinstance(k, int) or k < 1:
                raise InvalidInputError(
                    f"offsets must be positive ints, got {self.offsets}"
                )

    def __len__(self) -> int:
        return len(self.offsets)

    def partial_sums(self) -> tuple[int, ...]:
        out, acc = [], 0
        for k in self.offsets:
            acc += k
            out.append(acc)
        return tuple(out)


def _as_offsets(k) -> OffsetVector:
    return k if isinstance(k, OffsetVector) else OffsetVector(tuple(k))


def correlation(t: Automorphism, sets: Sequence[MeasurableSet], k) -> Fraction:
    """mu(A_0 ^ S^{K_1} A_1 ^ ... ^ S^{K_n} A_n), K_i = k_1 + ... + k_i,
    where S^K A is the image of A under the K-th power."""
    k = _as_offsets(k)
    if len(sets) != len(k) + 1:
        raise InvalidInputError(
            f"need {len(k) + 1} sets for {len(k)} offsets, got {len(sets)}"
        )
    for a in sets:
        if a.space != t.space:
            raise InvalidInputError("all sets must live on the automorphism's space")
    running = set(sets[0].atoms)
    power = Automorphism.identity(t.space)
    for gap, a in zip(k.offsets, sets[1:]):
        power = compose(t.power(gap), power)
        running &= {power.perm[x] for x in a.atoms}
        if not running:
            return Fraction(0)
    return sum((t.space.weights[x] for x in running), Fraction(0))


@dataclass(frozen=True)
class SweepResult:
    """Worst deviation over the offset grid, with the first grid point
    attaining it (lexicographic order) and the target product value."""

    max_deviation: Fraction
    argmax_offsets: tuple[int, ...]
    product_value: Fraction


def mixing_deviation_sweep(t: Automorphism, sets: Sequence[MeasurableSet], k_range: int) -> Fraction:
    """max over offset vectors in {1..k_range}^n of
    |correlation - prod_i mu(A_i)|."""
    return mixing_deviation_sweep_detail(t, sets, k_range).max_deviation


def mixing_deviation_sweep_detail(
    t: Automorphism, sets: Sequence[MeasurableSet], k_range: int
) -> SweepResult:
    if not isinstance(k_range, int) or k_range < 1:
        raise InvalidInputError(f"k_range must be a positive int, got {k_range!r}")
    if len(sets) < 2:
        raise InvalidInputError("need at least two sets")
    target = Fraction(1)
    for a in sets:
        target *= a.measure
    n = len(sets) - 1
    best = Fraction(-1)
    best_k: tuple[int, ...] = ()
    for grid in iter_tuples((k_range,) * n):
        offs = tuple(g + 1 for g in grid)
        dev = abs(correlation(t, sets, offs) - target)
        if dev > best:
            best = dev
            best_k = offs
    return SweepResult(best, best_k, target)


def offset_joining(r: Automorphism, k) -> JoiningTensor:
    """Graph-type joining of order n+1 concentrated on the offset orbit:

        nu(z_0, ..., z_n) = lambda(z_0)  if z_i = R^{-K_i}(z_0) for all i,
                            0            otherwise,

    equivalently nu(C_0 x ... x C_n) = lambda(C_0 ^ R^{K_1} C_1 ^ ...),
    so pairing nu against indicator products reproduces ``correlation``
    exactly."""
    k = _as_offsets(k)
    n = len(k)
    size = r.space.atom_count ** (n + 1)
    if size > SIZE_CAP:
        raise ResourceLimitError(
            f"{r.space.atom_count}^{n + 1} entries exceed the cap of {SIZE_CAP}"
        )
    inv_perms = []
    power = Automorphism.identity(r.space)
    r_inv = r.inverse()
    for gap in k.offsets:
        power = compose(r_inv.power(gap), power)
        inv_perms.append(power.perm)
    values = {}
    for z0 in r.space.atoms():
        tup = (z0,) + tuple(p[z0] for p in inv_perms)
        values[tup] = r.space.weights[z0]
    return JoiningTensor.from_nonzero((r.space,) * (n + 1), values)


def fiber_projection(r: SkewProduct, f: Sequence) -> tuple[Fraction, ...]:
    """Conditional expectation onto the base:
    (pi f)(x) = sum_y f(x, y) mu_fiber(y), with f given on product atoms
    in (base, fiber) lexicographic order."""
    nb, nf = r.base.atom_count, r.fiber.atom_count
    if len(f) != nb * nf:
        raise InvalidInputError(f"need {nb * nf} values, got {len(f)}")
    from .rationals import as_fraction

    vals = [as_fraction(x) for x in f]
    out = []
    for x in range(nb):
        acc = Fraction(0)
        for y in range(nf):
            acc += vals[x * nf + y] * r.fiber.weights[y]
        out.append(acc)
    return tuple(out)


def _lift_horizontal(r: SkewProduct, b: MeasurableSet) -> set[int]:
    nf = r.fiber.atom_count
    return {x * nf + y for x in r.base.atoms() for y in b.atoms}


def _lift_vertical(r: SkewProduct, a: MeasurableSet) -> set[int]:
    nf = r.fiber.atom_count
    return {x * nf + y for x in a.atoms for y in range(nf)}


def relative_mixing_deviation(
    r: SkewProduct, horizontal_sets: Sequence[MeasurableSet], k
) -> Fraction:
    """Squared L2(mu_base) deviation of the fiber projection of the
    indicator of H_0 ^ R^{K_1} H_1 ^ ... from the constant prod mu(B_i),
    where H_i = X x B_i.

    The squared distance is returned because it is always rational; the
    distance itself generally is not."""
    k = _as_offsets(k)
    if len(horizontal_sets) != len(k) + 1:
        raise InvalidInputError(
            f"need {len(k) + 1} sets for {len(k)} offsets, got {len(horizontal_sets)}"
        )
    for b in horizontal_sets:
        if b.space != r.fiber:
            raise InvalidInputError("horizontal sets must live on the fiber")
    big = as_automorphism(r)
    running = _lift_horizontal(r, horizontal_sets[0])
    power = Automorphism.identity(big.space)
    for gap, b in zip(k.offsets, horizontal_sets[1:]):
        power = compose(big.power(gap), power)
        running &= {power.perm[z] for z in _lift_horizontal(r, b)}
    target = Fraction(1)
    for b in horizontal_sets:
        target *= b.measure
    nf = r.fiber.atom_count
    total = Fraction(0)
    for x in r.base.atoms():
        proj = sum(
            (r.fiber.weights[y] for y in range(nf) if x * nf + y in running),
            Fraction(0),
        )
        total += r.base.weights[x] * (proj - target) ** 2
    return total


def mixed_set_correlation(
    r: SkewProduct,
    vertical_sets: Sequence[MeasurableSet],
    horizontal_sets: Sequence[MeasurableSet],
    k,
) -> Fraction:
    """lambda(V_0 ^ R^{K_1}(V_1 ^ H_1) ^ ... ^ R^{K_m}(V_m ^ H_m)) on the
    product space, with V_i vertical (a base set times the fiber) and H_i
    horizontal (the base times a fiber set)."""
    k = _as_offsets(k)
    m = len(k)
    if len(vertical_sets) != m + 1 or len(horizontal_sets) != m:
        raise InvalidInputError(
            f"need {m + 1} vertical and {m} horizontal sets for {m} offsets"
        )
    for a in vertical_sets:
        if a.space != r.base:
            raise InvalidInputError("vertical sets must live on the base")
    for b in horizontal_sets:
        if b.space != r.fiber:
            raise InvalidInputError("horizontal sets must live on the fiber")
    big = as_automorphism(r)
    running = _lift_vertical(r, vertical_sets[0])
    power = Automorphism.identity(big.space)
    for gap, a, b in zip(k.offsets, vertical_sets[1:], horizontal_sets):
        power = compose(big.power(gap), power)
        cell = _lift_vertical(r, a) & _lift_horizontal(r, b)
        running &= {power.perm[z] for z in cell}
    product_weights = big.space.weights
    return sum((product_weights[z] for z in running), Fraction(0))
