"""Sparse JSON interchange for product measures and skew products.

A tensor file looks like

    {
      "factors": [["1/2", "1/2"], ["1/2", "1/2"]],
      "nonzero": [[[0, 0], "1/2"], [[1, 1], "1/2"]]
    }

with every rational written as an explicit "p/q" string and the nonzero
list sorted ascending by index tuple.  ``data_to_raw`` decodes without
imposing the joining axioms so that verification can report defects
instead of refusing to load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError
from .joinings import JoiningTensor, ProductMeasure
from .rationals import format_rational, parse_rational
from .skew import SkewProduct
from .spaces import FiniteSpace, shape_of, tuple_to_index


def load_json_file(path: str):
    try:
        with open(path, "rb") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc


def _check_keys(obj, path: str, required: tuple[str, ...], optional: tuple[str, ...] = ()):
    if not isinstance(obj, dict):
        raise InvalidInputError(f"{path}: expected an object, got {type(obj).__name__}")
    for key in required:
        if key not in obj:
            raise InvalidInputError(f"{path}: missing key '{key}'")
    extra = set(obj) - set(required) - set(optional)
    if extra:
        raise InvalidInputError(f"{path}: unknown keys {sorted(extra)}")


def _parse_weights(raw, path: str) -> FiniteSpace:
    if not isinstance(raw, list) or not raw:
        raise InvalidInputError(f"{path}: expected a nonempty list of rationals")
    weights = []
    for i, item in enumerate(raw):
        try:
            weights.append(parse_rational(item))
        except InvalidInputError as exc:
            raise InvalidInputError(f"{path}[{i}]: {exc}") from exc
    try:
        return FiniteSpace(tuple(weights))
    except InvalidInputError as exc:
        raise InvalidInputError(f"{path}: {exc}") from exc


def joining_to_data(v: ProductMeasure) -> dict:
    """Sparse dict form of a product-space measure, ready for json.dumps."""
    nonzero = [
        [list(tup), format_rational(value)] for tup, value in sorted(v.nonzero())
    ]
    return {
        "factors": [
            [format_rational(w) for w in sp.weights] for sp in v.factors
        ],
        "nonzero": nonzero,
    }


@dataclass(frozen=True)
class RawTensor:
    """Decoded tensor before any joining axiom is imposed."""

    factors: tuple[FiniteSpace, ...]
    entries: tuple[Fraction, ...]


def data_to_raw(data, path: str = "tensor") -> RawTensor:
    _check_keys(data, path, ("factors", "nonzero"))
    raw_factors = data["factors"]
    if not isinstance(raw_factors, list) or not raw_factors:
        raise InvalidInputError(f"{path}.factors: expected a nonempty list")
    factors = tuple(
        _parse_weights(f, f"{path}.factors[{i}]") for i, f in enumerate(raw_factors)
    )
    shape = shape_of(factors)
    size = 1
    for n in shape:
        size *= n
    entries = [Fraction(0)] * size
    raw_nonzero = data["nonzero"]
    if not isinstance(raw_nonzero, list):
        raise InvalidInputError(f"{path}.nonzero: expected a list")
    seen = set()
    for i, pair in enumerate(raw_nonzero):
        where = f"{path}.nonzero[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise InvalidInputError(f"{where}: expected [index tuple, rational]")
        tup, value = pair
        if (
            not isinstance(tup, list)
            or len(tup) != len(shape)
            or any(not isinstance(t, int) or isinstance(t, bool) for t in tup)
        ):
            raise InvalidInputError(
                f"{where}: index must be a list of {len(shape)} ints"
            )
        for axis, (t, n) in enumerate(zip(tup, shape)):
            if not 0 <= t < n:
                raise InvalidInputError(
                    f"{where}: coordinate {axis} is {t}, out of range 0..{n - 1}"
                )
        key = tuple(tup)
        if key in seen:
            raise InvalidInputError(f"{where}: duplicate index {key}")
        seen.add(key)
        try:
            entries[tuple_to_index(shape, key)] = parse_rational(value)
        except InvalidInputError as exc:
            raise InvalidInputError(f"{where}: {exc}") from exc
    return RawTensor(factors, tuple(entries))


def data_to_joining(data, path: str = "tensor") -> JoiningTensor:
    """Decode and validate as a joining (marginals equal the factors)."""
    raw = data_to_raw(data, path)
    try:
        return JoiningTensor(raw.factors, raw.entries)
    except InvalidInputError as exc:
        raise InvalidInputError(f"{path}: {exc}") from exc


def skew_to_data(r: SkewProduct) -> dict:
    """Serializable description of a skew product."""
    return {
        "base_weights": [format_rational(w) for w in r.base.weights],
        "fiber_weights": [format_rational(w) for w in r.fiber.weights],
        "base_perm": list(r.base_map.perm),
        "cocycle": [list(a.perm) for a in r.cocycle],
    }
