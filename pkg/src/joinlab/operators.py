"""Markov operators between finite measure spaces.

An operator carries functions on its source space to functions on its
target space: (Pf)(t) = sum_s kernel[t][s] f(s).  Rows are probability
vectors and the weighted column condition
sum_t weight_target(t) kernel[t][s] = weight_source(s) makes P a
contraction intertwining the two measures.  Koopman operators of
automorphisms and the averaging operator onto constants are the two
extreme examples; convex mixtures of them model partial mixing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInputError
from .rationals import as_fraction
from .spaces import Automorphism, FiniteSpace, compose


@dataclass(frozen=True)
class MarkovOperator:
    """kernel[t][s] is the coefficient of f(s) in (Pf)(t)."""

    source: FiniteSpace
    target: FiniteSpace
    kernel: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in self.kernel)
        object.__setattr__(self, "kernel", rows)
        ns, nt = self.source.atom_count, self.target.atom_count
        if len(rows) != nt or any(len(row) != ns for row in rows):
            raise InvalidInputError(
                f"kernel must be {nt}x{ns}, got {len(rows)} rows"
            )
        for t, row in enumerate(rows):
            for s, x in enumerate(row):
                if x < 0:
                    raise InvalidInputError(f"negative kernel entry at [{t}][{s}]")
            if sum(row) != 1:
                raise InvalidInputError(f"row {t} sums to {sum(row)}, expected 1")
        wt, ws = self.target.weights, self.source.weights
        for s in range(ns):
            col = sum((wt[t] * rows[t][s] for t in range(nt)), Fraction(0))
            if col != ws[s]:
                raise InvalidInputError(
                    f"weighted column {s} is {col}, expected {ws[s]}; "
                    "operator does not intertwine the measures"
                )

    def apply(self, values: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Apply to a function given by its values on source atoms."""
        if len(values) != self.source.atom_count:
            raise InvalidInputError("function length does not match the source")
        vals = [as_fraction(v) for v in values]
        return tuple(
            sum((k * v for k, v in zip(row, vals)), Fraction(0))
            for row in self.kernel
        )


def koopman(t: Automorphism) -> MarkovOperator:
    """Composition operator of an automorphism: (Pf)(x) = f(t(x))."""
    n = t.space.atom_count
    zero, one = Fraction(0), Fraction(1)
    kernel = tuple(
        tuple(one if y == t.perm[x] else zero for y in range(n)) for x in range(n)
    )
    return MarkovOperator(t.space, t.space, kernel)


def identity_operator(space: FiniteSpace) -> MarkovOperator:
    return koopman(Automorphism.identity(space))


def averaging_operator(space: FiniteSpace) -> MarkovOperator:
    """Projection onto constants: every row equals the weight vector."""
    row = tuple(space.weights)
    return MarkovOperator(space, space, tuple(row for _ in space.atoms()))


def compose_operators(p: MarkovOperator, q: MarkovOperator) -> MarkovOperator:
    """p after q; requires p.source == q.target."""
    if p.source != q.target:
        raise InvalidInputError("inner spaces do not match")
    ns, nm, nt = q.source.atom_count, q.target.atom_count, p.target.atom_count
    kernel = tuple(
        tuple(
            sum((p.kernel[t][m] * q.kernel[m][s] for m in range(nm)), Fraction(0))
            for s in range(ns)
        )
        for t in range(nt)
    )
    return MarkovOperator(q.source, p.target, kernel)


def operator_power(p: MarkovOperator, k: int) -> MarkovOperator:
    """k-th power of a square operator, k >= 0."""
    if p.source != p.target:
        raise InvalidInputError("only square operators have powers")
    if not isinstance(k, int) or k < 0:
        raise InvalidInputError(f"power must be a nonnegative int, got {k!r}")
    result = identity_operator(p.source)
    base = p
    while k:
        if k & 1:
            result = compose_operators(base, result)
        base = compose_operators(base, base)
        k >>= 1
    return result


def dist_w(p: MarkovOperator, q: MarkovOperator) -> Fraction:
    """Entrywise sup distance; the exact surrogate for weak-operator closeness
    on a fixed finite space."""
    if p.source != q.source or p.target != q.target:
        raise InvalidInputError("operators must share source and target")
    best = Fraction(0)
    for row_p, row_q in zip(p.kernel, q.kernel):
        for a, b in zip(row_p, row_q):
            d = abs(a - b)
            if d > best:
                best = d
    return best


def affine_combination(c: Fraction, p: MarkovOperator, q: MarkovOperator) -> MarkovOperator:
    """c*p + (1-c)*q with 0 <= c <= 1."""
    c = as_fraction(c)
    if not 0 <= c <= 1:
        raise InvalidInputError(f"coefficient must lie in [0, 1], got {c}")
    if p.source != q.source or p.target != q.target:
        raise InvalidInputError("operators must share source and target")
    kernel = tuple(
        tuple(c * a + (1 - c) * b for a, b in zip(row_p, row_q))
        for row_p, row_q in zip(p.kernel, q.kernel)
    )
    return MarkovOperator(p.source, p.target, kernel)


@dataclass(frozen=True)
class ClosureProbe:
    """Best match found when probing powers against identity/averaging mixtures."""

    best_k: int
    best_eps: Fraction
    best_distance: Fraction


def weak_closure_probe(
    s: Automorphism,
    eps_grid: Sequence[Fraction],
    k_max: int,
) -> ClosureProbe:
    """Minimise dist_w(koopman(s)^k, eps*I + (1-eps)*Theta) over k = 1..k_max
    and eps in the grid; ties break to the smallest k, then the smallest eps.

    The probe measures how close the orbit of the Koopman operator comes to
    the segment joining the identity to the averaging operator, the segment
    along which weak limits of rigid-yet-mixing behaviour live.
    """
    if not isinstance(k_max, int) or k_max < 1:
        raise InvalidInputError(f"k_max must be a positive int, got {k_max!r}")
    grid = sorted({as_fraction(e) for e in eps_grid})
    if not grid:
        raise InvalidInputError("eps grid must be nonempty")
    for e in grid:
        if not 0 < e < 1:
            raise InvalidInputError(f"eps must lie strictly between 0 and 1, got {e}")
    ident = identity_operator(s.space)
    avg = averaging_operator(s.space)
    best: ClosureProbe | None = None
    power = Automorphism.identity(s.space)
    for k in range(1, k_max + 1):
        power = compose(s, power)
        op_k = koopman(power)
        for eps in grid:
            d = dist_w(op_k, affine_combination(eps, ident, avg))
            if best is None or d < best.best_distance:
                best = ClosureProbe(k, eps, d)
    assert best is not None
    return best
