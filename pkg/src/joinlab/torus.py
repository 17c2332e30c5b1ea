"""Uniform Z_2^k systems: coordinate permutations, shifts, characters,
and the order-4 joining whose last coordinate is the sum of the first
three.

Atoms are bit-vectors (x_0, ..., x_{k-1}) in lexicographic order, so atom
index = sum of x_i * 2^(k-1-i); group addition is XOR of indices.  The
character attached to a bit-vector a is chi_a(x) = (-1)^(a.x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InvalidInputError, ResourceLimitError
from .joinings import JoiningTensor, ProductMeasure
from .rationals import as_fraction
from .spaces import (
    ActionGenerators,
    Automorphism,
    FiniteSpace,
    iter_tuples,
    space_size,
)

K_CAP = 4
SIZE_CAP = 65536


@dataclass(frozen=True)
class Z2kContext:
    """Uniform measure on the group Z_2^k, 1 <= k <= 4."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or not 1 <= self.k <= K_CAP:
            raise InvalidInputError(f"k must be an int in 1..{K_CAP}, got {self.k!r}")

    @property
    def space(self) -> FiniteSpace:
        return FiniteSpace.uniform(2**self.k)

    @property
    def group_order(self) -> int:
        return 2**self.k

    def bits(self, atom: int) -> tuple[int, ...]:
        if not 0 <= atom < self.group_order:
            raise InvalidInputError(f"atom {atom} outside the group")
        return tuple((atom >> (self.k - 1 - i)) & 1 for i in range(self.k))

    def atom(self, bits: Sequence[int]) -> int:
        bits = tuple(bits)
        if len(bits) != self.k or any(b not in (0, 1) for b in bits):
            raise InvalidInputError(f"need {self.k} bits, got {bits}")
        out = 0
        for b in bits:
            out = (out << 1) | b
        return out


def permutation_automorphism(ctx: Z2kContext, sigma: Sequence[int]) -> Automorphism:
    """Coordinate shuffle: component i of the image is x_{sigma(i)}."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(ctx.k)):
        raise InvalidInputError(f"sigma must permute 0..{ctx.k - 1}, got {sigma}")
    perm = []
    for a in range(ctx.group_order):
        x = ctx.bits(a)
        perm.append(ctx.atom(tuple(x[sigma[i]] for i in range(ctx.k))))
    return Automorphism(ctx.space, tuple(perm))


def shift_automorphism(ctx: Z2kContext, alpha: Sequence[int]) -> Automorphism:
    """Group translation x -> x + alpha (componentwise mod 2)."""
    a_idx = ctx.atom(alpha)
    perm = tuple(x ^ a_idx for x in range(ctx.group_order))
    return Automorphism(ctx.space, perm)


def full_action(ctx: Z2kContext) -> ActionGenerators:
    """Adjacent coordinate transpositions plus all basis shifts: the
    permutation-and-translation action used throughout the gallery.
    k - 1 + k generators; a single shift at k = 1."""
    gens = []
    for i in range(ctx.k - 1):
        sigma = list(range(ctx.k))
        sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
        gens.append(permutation_automorphism(ctx, sigma))
    for i in range(ctx.k):
        alpha = [0] * ctx.k
        alpha[i] = 1
        gens.append(shift_automorphism(ctx, alpha))
    return ActionGenerators(ctx.space, tuple(gens))


def triple_sum_joining(ctx: Z2kContext) -> JoiningTensor:
    """Order-4 self-joining supported on d = a + b + c: three independent
    coordinates and their sum.  Every 3-face marginal is the full product
    measure, yet the tensor sits at sup-distance
    2^(-3k) - 2^(-4k) from the order-4 product."""
    g = ctx.group_order
    weight = Fraction(1, g**3)
    entries = [Fraction(0)] * g**4
    for a in range(g):
        for b in range(g):
            ab = a ^ b
            base = ((a * g) + b) * g
            for c in range(g):
                entries[(base + c) * g + (ab ^ c)] = weight
    return JoiningTensor((ctx.space,) * 4, tuple(entries))


def _dot_parity(a_idx: int, x_idx: int) -> int:
    return bin(a_idx & x_idx).count("1") & 1


def character_coefficient(
    v: ProductMeasure, chars: Sequence[Sequence[int]]
) -> Fraction:
    """Fourier coefficient sum_t v(t) * prod_i chi_{a_i}(t_i) for one
    bit-vector per factor."""
    chars = [tuple(c) for c in chars]
    if len(chars) != v.order:
        raise InvalidInputError(f"need {v.order} characters, got {len(chars)}")
    idxs = []
    for c, sp in zip(chars, v.factors):
        ctx = Z2kContext(len(c))
        if sp.atom_count != ctx.group_order or sp != ctx.space:
            raise InvalidInputError(
                "factor is not the uniform group matching the character length"
            )
        idxs.append(ctx.atom(c))
    shape = v.shape
    total = Fraction(0)
    for tup, x in zip(iter_tuples(shape), v.entries):
        if not x:
            continue
        parity = 0
        for a_idx, t in zip(idxs, tup):
            parity ^= _dot_parity(a_idx, t)
        total += -x if parity else x
    return total


def fourier_joining(
    ctx: Z2kContext,
    order: int,
    coefficients: Mapping[tuple, Fraction],
) -> JoiningTensor:
    """Tensor with prescribed character coefficients:

        v(t) = 2^(-order*k) * sum over keys a of c(a) * prod_i chi_{a_i}(t_i).

    Keys are tuples of bit-vectors, one per factor; the all-zero key must
    carry coefficient 1 (total mass).  Negative entries anywhere reject the
    coefficient family."""
    if not isinstance(order, int) or order < 1:
        raise InvalidInputError(f"order must be a positive int, got {order!r}")
    g = ctx.group_order
    if g**order > SIZE_CAP:
        raise ResourceLimitError(f"{g}^{order} entries exceed the cap of {SIZE_CAP}")
    zero_key = ((0,) * ctx.k,) * order
    table: dict[tuple[int, ...], Fraction] = {}
    for key, c in coefficients.items():
        key = tuple(tuple(part) for part in key)
        if len(key) != order:
            raise InvalidInputError(f"key {key} does not have {order} characters")
        idx_key = tuple(ctx.atom(part) for part in key)
        if idx_key in table:
            raise InvalidInputError(f"duplicate coefficient key {key}")
        table[idx_key] = as_fraction(c)
    zero_idx = (0,) * order
    if table.get(zero_idx) != 1:
        raise InvalidInputError("the all-zero character tuple must have coefficient 1")
    norm = Fraction(1, g**order)
    shape = (g,) * order
    entries = []
    for tup in iter_tuples(shape):
        acc = Fraction(0)
        for idx_key, c in table.items():
            parity = 0
            for a_idx, t in zip(idx_key, tup):
                parity ^= _dot_parity(a_idx, t)
            acc += -c if parity else c
        val = norm * acc
        if val < 0:
            raise InvalidInputError(
                f"coefficients produce a negative entry at {tup}"
            )
        entries.append(val)
    return JoiningTensor((ctx.space,) * order, tuple(entries))
