"""Skew products over a finite base with automorphism-valued cocycles.

R(x, y) = (S x, R_x y) for a base automorphism S and one fiber automorphism
per base atom.  The cocycle product C(x, p) composes the fiber maps met
along the base orbit; rigidity and relative mixing statistics quantify how
C behaves in the Halmos metric and the weak operator distance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInputError, PreconditionError
from .operators import averaging_operator, dist_w, koopman
from .rationals import as_fraction
from .spaces import (
    Automorphism,
    FiniteSpace,
    MeasurableSet,
    compose,
    halmos_distance,
    orbit_count,
    product_space,
    tuple_to_index,
)


@dataclass(frozen=True)
class SkewProduct:
    """(x, y) -> (base_map(x), cocycle[x](y)); always measure-preserving."""

    base: FiniteSpace
    fiber: FiniteSpace
    base_map: Automorphism
    cocycle: tuple[Automorphism, ...]

    def __post_init__(self):
        object.__setattr__(self, "cocycle", tuple(self.cocycle))
        if self.base_map.space != self.base:
            raise InvalidInputError("base map lives on a different space")
        if len(self.cocycle) != self.base.atom_count:
            raise InvalidInputError(
                f"need one fiber map per base atom ({self.base.atom_count}), "
                f"got {len(self.cocycle)}"
            )
        for x, r in enumerate(self.cocycle):
            if r.space != self.fiber:
                raise InvalidInputError(f"fiber map at base atom {x} lives elsewhere")


@dataclass(frozen=True)
class RigiditySequence:
    """Strictly increasing positive return times p_1 < p_2 < ..."""

    times: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(self.times))
        if not self.times:
            raise InvalidInputError("rigidity sequence must be nonempty")
        prev = 0
        for p in self.times:
            if not isinstance(p, int) or p <= prev:
                raise InvalidInputError(
                    f"times must be strictly increasing positive ints, got {self.times}"
                )
            prev = p


def as_automorphism(r: SkewProduct) -> Automorphism:
    """The skew product as an automorphism of base x fiber."""
    total = product_space([r.base, r.fiber])
    nf = r.fiber.atom_count
    perm = [0] * total.atom_count
    for x in r.base.atoms():
        sx = r.base_map.perm[x]
        rx = r.cocycle[x].perm
        for y in range(nf):
            perm[x * nf + y] = sx * nf + rx[y]
    return Automorphism(total, tuple(perm))


def cocycle_product(r: SkewProduct, x: int, p: int) -> Automorphism:
    """C(x, p) = R_{S^{p-1} x} o ... o R_{S x} o R_x, with C(x, 0) = Id.

    Satisfies C(x, p + q) = C(S^p x, q) o C(x, p)."""
    if not 0 <= x < r.base.atom_count:
        raise InvalidInputError(f"base atom {x} out of range")
    if not isinstance(p, int) or p < 0:
        raise InvalidInputError(f"p must be a nonnegative int, got {p!r}")
    acc = Automorphism.identity(r.fiber)
    cur = x
    for _ in range(p):
        acc = compose(r.cocycle[cur], acc)
        cur = r.base_map.perm[cur]
    return acc


def coboundary_extension(
    s: Automorphism, j_family: Sequence[Automorphism]
) -> SkewProduct:
    """Skew product with cocycle R_x = J_{S x}^{-1} o J_x, so that
    C(x, p) = J_{S^p x}^{-1} o J_x telescopes exactly."""
    j_family = tuple(j_family)
    if len(j_family) != s.space.atom_count:
        raise InvalidInputError("need one transfer map per base atom")
    fiber = j_family[0].space
    for j in j_family:
        if j.space != fiber:
            raise InvalidInputError("transfer maps live on different spaces")
    cocycle = tuple(
        compose(j_family[s.perm[x]].inverse(), j_family[x])
        for x in s.space.atoms()
    )
    return SkewProduct(s.space, fiber, s, cocycle)


def power_skew(s: Automorphism, t: Automorphism, n_fun: Sequence[int]) -> SkewProduct:
    """Cocycle R_x = t^{n(x)}; requires the exponent to integrate to zero,
    the finite obstruction to t-power cocycles being balanced along orbits."""
    n_fun = tuple(n_fun)
    if len(n_fun) != s.space.atom_count:
        raise InvalidInputError("need one exponent per base atom")
    for n in n_fun:
        if not isinstance(n, int):
            raise InvalidInputError(f"exponents must be ints, got {n!r}")
    mean = sum(
        (w * n for w, n in zip(s.space.weights, n_fun)), Fraction(0)
    )
    if mean != 0:
        raise PreconditionError(f"exponent has nonzero mean {mean}")
    cocycle = tuple(t.power(n) for n in n_fun)
    return SkewProduct(s.space, t.space, s, cocycle)


def rigidity_statistic(
    r: SkewProduct, a: MeasurableSet, n_param: int, p: int
) -> Fraction:
    """mu-mass of {x in A : S^p x in A and rho(C(x, p), Id) < 1/n_param}."""
    if a.space != r.base:
        raise InvalidInputError("set must live on the base")
    if not isinstance(n_param, int) or n_param < 1:
        raise InvalidInputError(f"n_param must be a positive int, got {n_param!r}")
    if not isinstance(p, int) or p < 0:
        raise InvalidInputError(f"p must be a nonnegative int, got {p!r}")
    ident = Automorphism.identity(r.fiber)
    s_pow = r.base_map.power(p)
    threshold = Fraction(1, n_param)
    mass = Fraction(0)
    for x in a.atoms:
        if s_pow.perm[x] not in a.atoms:
            continue
        if halmos_distance(cocycle_product(r, x, p), ident) < threshold:
            mass += r.base.weights[x]
    return mass


def relative_mixing_fraction(r: SkewProduct, p: int, eps: Fraction) -> Fraction:
    """mu-mass of {x : dist_w(koopman(C(x, p)), averaging) < eps}.

    For automorphism Koopman kernels the distance to the averaging operator
    never exceeds 1, so eps > 1 returns full mass."""
    if not isinstance(p, int) or p < 0:
        raise InvalidInputError(f"p must be a nonnegative int, got {p!r}")
    eps = as_fraction(eps)
    if eps <= 0:
        raise InvalidInputError(f"eps must be positive, got {eps}")
    avg = averaging_operator(r.fiber)
    mass = Fraction(0)
    for x in r.base.atoms():
        if dist_w(koopman(cocycle_product(r, x, p)), avg) < eps:
            mass += r.base.weights[x]
    return mass


def relative_weak_mixing_average(
    r: SkewProduct, a: MeasurableSet, b: MeasurableSet, n_horizon: int
) -> Fraction:
    """Exact value of

        integral over x of (1/N) sum_{p=1}^{N}
            (mu(C(x, p) A  intersect  B) - mu(A) mu(B))^2  d mu(x),

    the finite Cesaro average whose smallness witnesses relative weak mixing
    of the extension over its base."""
    if a.space != r.fiber or b.space != r.fiber:
        raise InvalidInputError("sets must live on the fiber")
    if not isinstance(n_horizon, int) or n_horizon < 1:
        raise InvalidInputError(f"horizon must be a positive int, got {n_horizon!r}")
    target = a.measure * b.measure
    total = Fraction(0)
    for x in r.base.atoms():
        acc = Automorphism.identity(r.fiber)
        cur = x
        inner = Fraction(0)
        for _ in range(n_horizon):
            acc = compose(r.cocycle[cur], acc)
            cur = r.base_map.perm[cur]
            image = acc.image(a)
            inner += (image.intersect(b).measure - target) ** 2
        total += r.base.weights[x] * inner / n_horizon
    return total


def relative_product(r: SkewProduct) -> Automorphism:
    """Fiber-square extension (x, y, y') -> (S x, R_x y, R_x y') on
    base x fiber x fiber; its ergodicity is relative weak mixing."""
    total = product_space([r.base, r.fiber, r.fiber])
    nf = r.fiber.atom_count
    shape = (r.base.atom_count, nf, nf)
    perm = [0] * total.atom_count
    for x in r.base.atoms():
        sx = r.base_map.perm[x]
        rx = r.cocycle[x].perm
        for y in range(nf):
            for y2 in range(nf):
                src = tuple_to_index(shape, (x, y, y2))
                perm[src] = tuple_to_index(shape, (sx, rx[y], rx[y2]))
    return Automorphism(total, tuple(perm))


def is_ergodic(a: Automorphism) -> bool:
    """Single orbit on atoms (union-find orbit count equals one)."""
    return orbit_count(a) == 1


def _random_preserving_permutation(
    rng: random.Random, space: FiniteSpace
) -> Automorphism:
    # Uniform over the weight-preserving subgroup: shuffle within weight classes.
    classes: dict[Fraction, list[int]] = {}
    for i, w in enumerate(space.weights):
        classes.setdefault(w, []).append(i)
    perm = [0] * space.atom_count
    for atoms in classes.values():
        shuffled = atoms[:]
        rng.shuffle(shuffled)
        for src, dst in zip(atoms, shuffled):
            perm[src] = dst
    return Automorphism(space, tuple(perm))


def sample_random_extension(
    s: Automorphism, fiber: FiniteSpace, seed: int, mode: str
) -> SkewProduct:
    """Seed-deterministic random skew product over base map ``s``.

    mode 'iid-cocycle': one independent weight-preserving fiber permutation
    per base atom.  mode 'random-coboundary': draw a transfer family J the
    same way and return its coboundary, a rigidity-friendly reference point.
    """
    if not isinstance(seed, int):
        raise InvalidInputError(f"seed must be an int, got {seed!r}")
    rng = random.Random(seed)
    draws = [
        _random_preserving_permutation(rng, fiber) for _ in s.space.atoms()
    ]
    if mode == "iid-cocycle":
        return SkewProduct(s.space, fiber, s, tuple(draws))
    if mode == "random-coboundary":
        return coboundary_extension(s, draws)
    raise InvalidInputError(
        f"mode must be 'iid-cocycle' or 'random-coboundary', got {mode!r}"
    )
