"""Finite measure spaces and their measure-preserving automorphisms.

A space is a finite set of atoms {0, ..., n-1} carrying strictly positive
rational weights summing to one.  Automorphisms are weight-preserving
permutations; the Halmos metric makes the automorphism group a finite
metric space suitable for exact rigidity statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInputError
from .rationals import as_fraction


@dataclass(frozen=True)
class FiniteSpace:
    """Finite probability space: atom i has weight ``weights[i]`` > 0."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(as_fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if not ws:
            raise InvalidInputError("a space needs at least one atom")
        for i, w in enumerate(ws):
            if w <= 0:
                raise InvalidInputError(f"weight of atom {i} must be positive, got {w}")
        if sum(ws) != 1:
            raise InvalidInputError(f"weights must sum to 1, got {sum(ws)}")

    @property
    def atom_count(self) -> int:
        return len(self.weights)

    @classmethod
    def uniform(cls, n: int) -> "FiniteSpace":
        if not isinstance(n, int) or n < 1:
            raise InvalidInputError(f"atom count must be a positive int, got {n!r}")
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    def atoms(self) -> range:
        return range(len(self.weights))


@dataclass(frozen=True)
class MeasurableSet:
    """Subset of a space's atoms."""

    space: FiniteSpace
    atoms: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        for a in self.atoms:
            if not isinstance(a, int) or not 0 <= a < self.space.atom_count:
                raise InvalidInputError(f"atom {a!r} outside the space")

    @property
    def measure(self) -> Fraction:
        return sum((self.space.weights[a] for a in self.atoms), Fraction(0))

    def complement(self) -> "MeasurableSet":
        return MeasurableSet(
            self.space, frozenset(self.space.atoms()) - self.atoms
        )

    def intersect(self, other: "MeasurableSet") -> "MeasurableSet":
        if other.space != self.space:
            raise InvalidInputError("sets live on different spaces")
        return MeasurableSet(self.space, self.atoms & other.atoms)


@dataclass(frozen=True)
class Automorphism:
    """Measure-preserving permutation of a space's atoms.

    ``perm[i]`` is the image of atom i.  Weight preservation
    (weights[perm[i]] == weights[i]) is enforced at construction.
    """

    space: FiniteSpace
    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        n = self.space.atom_count
        if len(self.perm) != n or sorted(self.perm) != list(range(n)):
            raise InvalidInputError(f"not a permutation of 0..{n - 1}: {self.perm}")
        for i, j in enumerate(self.perm):
            if self.space.weights[i] != self.space.weights[j]:
                raise InvalidInputError(
                    f"atom {i} (weight {self.space.weights[i]}) maps to atom {j} "
                    f"of different weight {self.space.weights[j]}"
                )

    def __call__(self, atom: int) -> int:
        return self.perm[atom]

    @classmethod
    def identity(cls, space: FiniteSpace) -> "Automorphism":
        return cls(space, tuple(range(space.atom_count)))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Automorphism(self.space, tuple(inv))

    def power(self, k: int) -> "Automorphism":
        """k-th iterate; negative k iterates the inverse."""
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Automorphism.identity(self.space)
        while k:
            if k & 1:
                result = compose(base, result)
            base = compose(base, base)
            k >>= 1
        return result

    def image(self, subset: MeasurableSet) -> MeasurableSet:
        if subset.space != self.space:
            raise InvalidInputError("set lives on a different space")
        return MeasurableSet(self.space, frozenset(self.perm[a] for a in subset.atoms))

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """Composition a after b: atom x maps to a(b(x))."""
    if a.space != b.space:
        raise InvalidInputError("automorphisms live on different spaces")
    return Automorphism(a.space, tuple(a.perm[j] for j in b.perm))


def is_measure_preserving(perm: Sequence[int], space: FiniteSpace) -> bool:
    """Whether a permutation preserves the weights.  Non-bijections are an
    error rather than False: they are malformed input, not a negative case."""
    n = space.atom_count
    perm = tuple(perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise InvalidInputError(f"not a permutation of 0..{n - 1}: {perm}")
    return all(space.weights[i] == space.weights[j] for i, j in enumerate(perm))


@dataclass(frozen=True)
class ActionGenerators:
    """Finitely generated group action on one space."""

    space: FiniteSpace
    generators: tuple[Automorphism, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise InvalidInputError("an action needs at least one generator")
        for g in self.generators:
            if g.space != self.space:
                raise InvalidInputError("generator lives on a different space")


def halmos_distance(p: Automorphism, r: Automorphism) -> Fraction:
    """Weak-topology metric on the automorphism group.

    rho(P, R) = sum_{i=1..n} 2^{-i} (mu(P A_i symdiff R A_i)
                                     + mu(P^{-1} A_i symdiff R^{-1} A_i))
    with A_i the singleton {i-1}.  Zero exactly when P == R; the singleton
    family separates points, so this is a genuine metric.
    """
    if p.space != r.space:
        raise InvalidInputError("automorphisms live on different spaces")
    w = p.space.weights
    p_inv, r_inv = p.inverse().perm, r.inverse().perm
    total = Fraction(0)
    for i, a in enumerate(p.space.atoms(), start=1):
        term = Fraction(0)
        if p.perm[a] != r.perm[a]:
            term += w[p.perm[a]] + w[r.perm[a]]
        if p_inv[a] != r_inv[a]:
            term += w[p_inv[a]] + w[r_inv[a]]
        if term:
            total += Fraction(1, 2**i) * term
    return total


def orbit_count(a: Automorphism) -> int:
    """Number of orbits of the cyclic group generated by ``a`` (union-find)."""
    parent = list(range(a.space.atom_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in enumerate(a.perm):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return sum(1 for i, p in enumerate(parent) if find(i) == i)


# ---------------------------------------------------------------------------
# product structure
# ---------------------------------------------------------------------------

def product_space(spaces: Sequence[FiniteSpace]) -> FiniteSpace:
    """Product space; atoms are tuples in lexicographic order, weights multiply."""
    if not spaces:
        raise InvalidInputError("product of zero spaces is undefined here")
    weights = [Fraction(1)]
    for sp in spaces:
        weights = [w * v for w in weights for v in sp.weights]
    return FiniteSpace(tuple(weights))


def shape_of(spaces: Sequence[FiniteSpace]) -> tuple[int, ...]:
    return tuple(sp.atom_count for sp in spaces)


def tuple_to_index(shape: Sequence[int], tup: Sequence[int]) -> int:
    """Rank of an atom tuple in lexicographic order (last coordinate fastest)."""
    if len(tup) != len(shape):
        raise InvalidInputError(f"tuple {tup} does not match shape {shape}")
    idx = 0
    for n, t in zip(shape, tup):
        if not 0 <= t < n:
            raise InvalidInputError(f"coordinate {t} outside 0..{n - 1}")
        idx = idx * n + t
    return idx


def index_to_tuple(shape: Sequence[int], index: int) -> tuple[int, ...]:
    out = []
    for n in reversed(shape):
        out.append(index % n)
        index //= n
    if index:
        raise InvalidInputError("index outside the product space")
    return tuple(reversed(out))


def iter_tuples(shape: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All atom tuples in lexicographic order."""
    n = len(shape)
    if n == 0:
        yield ()
        return
    tup = [0] * n
    while True:
        yield tuple(tup)
        k = n - 1
        while k >= 0:
            tup[k] += 1
            if tup[k] < shape[k]:
                break
            tup[k] = 0
            k -= 1
        if k < 0:
            return


def space_size(shape: Iterable[int]) -> int:
    size = 1
    for n in shape:
        size *= n
    return size
