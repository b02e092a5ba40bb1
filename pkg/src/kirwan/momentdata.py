"""Localization data for a Hamiltonian circle action with isolated fixed
points: fixed points with rational moment values and nonzero integer isotropy
weights, plus restriction tables for the canonical basis classes.

The manifold itself is never represented; this combinatorial datum is all the
kernel computations need.  Conventions: the Morse function is the moment map
itself, the index of a fixed point is twice its count of negative weights, and
a cut level must avoid every moment value (the level set stays smooth).
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import (
    MissingAlphaPlus,
    NotRegularValue,
    ParseError,
    SchemaError,
    UnknownFixedPoint,
    ValidationError,
)
from .exactmath import rat, rat_str

__all__ = [
    "FixedPoint",
    "ManifoldData",
    "CutLevel",
    "morse_index",
    "euler_class",
    "negative_euler_scalar",
    "positive_euler_scalar",
    "split_fixed_points",
    "is_regular",
    "index_census",
    "make_manifold",
    "load_manifold",
    "manifold_to_dict",
    "manifold_to_json",
]

AlphaTable = dict[str, dict[str, Fraction]]


@dataclass(frozen=True)
class FixedPoint:
    """An isolated fixed point: name, moment value, and isotropy weights."""

    name: str
    moment: Fraction
    weights: tuple[int, ...]


@dataclass(frozen=True)
class CutLevel:
    """A reduction level; must differ from every fixed point's moment value."""

    c: Fraction


def morse_index(fp: FixedPoint) -> int:
    """Twice the number of strictly negative weights (index of f = moment)."""
    return 2 * sum(1 for w in fp.weights if w < 0)


def euler_class(fp: FixedPoint) -> tuple[Fraction, int]:
    """Tangent Euler class at fp as (scalar, exponent): product of all weights
    times X^(weight count)."""
    return Fraction(math.prod(fp.weights)), len(fp.weights)


def negative_euler_scalar(fp: FixedPoint) -> Fraction:
    """Product of the strictly negative weights; 1 at a local minimum."""
    return Fraction(math.prod(w for w in fp.weights if w < 0))


def positive_euler_scalar(fp: FixedPoint) -> Fraction:
    """Product of the strictly positive weights; 1 at a local maximum."""
    return Fraction(math.prod(w for w in fp.weights if w > 0))


@dataclass
class ManifoldData:
    """Validated localization datum.  Treat instances as immutable: every
    operation in this package is a pure function of the loaded data."""

    name: str
    n: int
    orientation_direction: int
    fixed_points: tuple[FixedPoint, ...]
    alpha_minus: AlphaTable
    alpha_plus: AlphaTable | None = None
    _by_name: dict[str, FixedPoint] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._by_name = {fp.name: fp for fp in self.fixed_points}

    @property
    def has_alpha_plus(self) -> bool:
        return self.alpha_plus is not None

    def fixed_point(self, name: str) -> FixedPoint:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownFixedPoint(
                f"no fixed point named {name!r} on {self.name!r}"
            ) from None

    def alpha_minus_scalar(self, f: str, g: str) -> Fraction:
        """Restriction scalar of the downward class of f at g (0 if absent)."""
        return self.alpha_minus.get(f, {}).get(g, Fraction(0))

    def alpha_plus_scalar(self, f: str, g: str) -> Fraction:
        """Restriction scalar of the upward class of f at g (0 if absent)."""
        if self.alpha_plus is None:
            raise MissingAlphaPlus(f"{self.name!r} carries no alpha_plus table")
        return self.alpha_plus.get(f, {}).get(g, Fraction(0))


def index_census(m: ManifoldData) -> dict[int, int]:
    """How many fixed points have each Morse index."""
    census: dict[int, int] = {}
    for fp in m.fixed_points:
        ind = morse_index(fp)
        census[ind] = census.get(ind, 0) + 1
    return dict(sorted(census.items()))


def is_regular(m: ManifoldData, cut: CutLevel) -> bool:
    return all(fp.moment != cut.c for fp in m.fixed_points)


def split_fixed_points(
    m: ManifoldData, cut: CutLevel
) -> tuple[tuple[FixedPoint, ...], tuple[FixedPoint, ...]]:
    """Partition the fixed points into (above cut, below cut), keeping order."""
    for fp in m.fixed_points:
        if fp.moment == cut.c:
            raise NotRegularValue(
                f"cut {rat_str(cut.c)} equals the moment of fixed point {fp.name!r}"
            )
    plus = tuple(fp for fp in m.fixed_points if fp.moment > cut.c)
    minus = tuple(fp for fp in m.fixed_points if fp.moment < cut.c)
    return plus, minus


def _check_alpha_names(table: Mapping[str, Any], names: set[str], label: str) -> None:
    for f, row in table.items():
        if f not in names:
            raise ValidationError(f"{label} references unknown fixed point {f!r}")
        for g in row:
            if g not in names:
                raise ValidationError(
                    f"{label}[{f!r}] references unknown fixed point {g!r}"
                )


def make_manifold(
    *,
    name: str,
    n: int,
    orientation_direction: int,
    fixed_points: Sequence[FixedPoint],
    alpha_minus: AlphaTable,
    alpha_plus: AlphaTable | None = None,
    validate_alpha: bool = True,
) -> ManifoldData:
    """Assemble and validate a ManifoldData from already-typed pieces.

    Runs every structural invariant, sorts the fixed points by (moment, name),
    warns (without failing) when the index census is missing a minimum or a
    maximum, and finally -- unless validate_alpha is False -- checks the
    restriction tables and raises ValidationError on the first violation.
    """
    if n < 1:
        raise ValidationError("n must be a positive integer")
    if orientation_direction not in (1, -1):
        raise ValidationError("orientation_direction must be 1 or -1")
    if not fixed_points:
        raise ValidationError("at least one fixed point is required")
    seen: set[str] = set()
    for fp in fixed_points:
        if not fp.name:
            raise ValidationError("fixed point names must be nonempty")
        if fp.name in seen:
            raise ValidationError(f"duplicate fixed point name {fp.name!r}")
        seen.add(fp.name)
        if len(fp.weights) != n:
            raise ValidationError(
                f"fixed point {fp.name!r} has {len(fp.weights)} weights, expected {n}"
            )
        if any(w == 0 for w in fp.weights):
            raise ValidationError(f"weights must be nonzero (fixed point {fp.name!r})")
    _check_alpha_names(alpha_minus, seen, "alpha_minus")
    if alpha_plus is not None:
        _check_alpha_names(alpha_plus, seen, "alpha_plus")

    ordered = tuple(sorted(fixed_points, key=lambda fp: (fp.moment, fp.name)))
    m = ManifoldData(
        name=name,
        n=n,
        orientation_direction=orientation_direction,
        fixed_points=ordered,
        alpha_minus={f: dict(row) for f, row in alpha_minus.items()},
        alpha_plus=None
        if alpha_plus is None
        else {f: dict(row) for f, row in alpha_plus.items()},
    )

    census = index_census(m)
    if census.get(0, 0) < 1 or census.get(2 * n, 0) < 1:
        warnings.warn(
            f"index census of {name!r} has no "
            + ("minimum" if census.get(0, 0) < 1 else "maximum")
            + "; this is not a closed-manifold datum",
            stacklevel=2,
        )

    if validate_alpha:
        from .cohomology import validate_alpha_basis  # deferred: cohomology imports this module

        report = validate_alpha_basis(m)
        if not report.ok:
            raise ValidationError(report.violations[0])
    return m


# --- JSON schema -------------------------------------------------------------

_TOP_KEYS = {"name", "n", "orientation_direction", "fixed_points", "alpha_minus"}
_TOP_OPTIONAL = {"alpha_plus"}
_POINT_KEYS = {"name", "moment", "weights"}


def _schema_rat(value: Any, where: str) -> Fraction:
    if not isinstance(value, str):
        raise SchemaError(f'{where} must be a rational string like "p/q"')
    try:
        return rat(value)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _schema_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where} must be an integer")
    return value


def _schema_alpha(value: Any, where: str) -> AlphaTable:
    if not isinstance(value, dict):
        raise SchemaError(f"{where} must be an object")
    table: AlphaTable = {}
    for f, row in value.items():
        if not isinstance(row, dict):
            raise SchemaError(f"{where}[{f!r}] must be an object")
        table[f] = {
            g: _schema_rat(s, f"{where}[{f!r}][{g!r}]") for g, s in row.items()
        }
    return table


def load_manifold(
    document: str | bytes | Mapping[str, Any], *, validate_alpha: bool = True
) -> ManifoldData:
    """Parse, schema-check, and validate a manifold document.

    Accepts JSON text or an already-parsed mapping.  Raises ParseError for
    malformed JSON, SchemaError for missing/extra/badly-typed fields, and
    ValidationError (naming the first violated invariant) for semantic
    problems, including restriction-table violations unless validate_alpha
    is False.
    """
    if isinstance(document, (str, bytes)):
        try:
            obj = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    else:
        obj = document
    if not isinstance(obj, dict):
        raise SchemaError("top-level document must be an object")

    keys = set(obj)
    missing = _TOP_KEYS - keys
    extra = keys - _TOP_KEYS - _TOP_OPTIONAL
    if missing:
        raise SchemaError(f"missing fields: {sorted(missing)}")
    if extra:
        raise SchemaError(f"unexpected fields: {sorted(extra)}")

    if not isinstance(obj["name"], str):
        raise SchemaError("name must be a string")
    n = _schema_int(obj["n"], "n")
    orientation = _schema_int(obj["orientation_direction"], "orientation_direction")
    if not isinstance(obj["fixed_points"], list):
        raise SchemaError("fixed_points must be a list")

    points: list[FixedPoint] = []
    for i, entry in enumerate(obj["fixed_points"]):
        where = f"fixed_points[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where} must be an object")
        if set(entry) != _POINT_KEYS:
            raise SchemaError(
                f"{where} must have exactly the fields name, moment, weights"
            )
        if not isinstance(entry["name"], str):
            raise SchemaError(f"{where}.name must be a string")
        moment = _schema_rat(entry["moment"], f"{where}.moment")
        if not isinstance(entry["weights"], list):
            raise SchemaError(f"{where}.weights must be a list of integers")
        weights = tuple(
            _schema_int(w, f"{where}.weights[{j}]")
            for j, w in enumerate(entry["weights"])
        )
        points.append(FixedPoint(entry["name"], moment, weights))

    alpha_minus = _schema_alpha(obj["alpha_minus"], "alpha_minus")
    alpha_plus = (
        _schema_alpha(obj["alpha_plus"], "alpha_plus") if "alpha_plus" in obj else None
    )
    return make_manifold(
        name=obj["name"],
        n=n,
        orientation_direction=orientation,
        fixed_points=points,
        alpha_minus=alpha_minus,
        alpha_plus=alpha_plus,
        validate_alpha=validate_alpha,
    )


def _alpha_to_dict(m: ManifoldData, table: AlphaTable) -> dict[str, dict[str, str]]:
    # rows in fixed-point order, zero entries omitted
    out: dict[str, dict[str, str]] = {}
    for f in m.fixed_points:
        row = table.get(f.name, {})
        out[f.name] = {
            g.name: rat_str(row[g.name])
            for g in m.fixed_points
            if row.get(g.name, Fraction(0)) != 0
        }
    return out


def manifold_to_dict(m: ManifoldData) -> dict[str, Any]:
    """Canonical document: fixed points sorted, zero restrictions omitted."""
    doc: dict[str, Any] = {
        "name": m.name,
        "n": m.n,
        "orientation_direction": m.orientation_direction,
        "fixed_points": [
            {
                "name": fp.name,
                "moment": rat_str(fp.moment),
                "weights": list(fp.weights),
            }
            for fp in m.fixed_points
        ],
        "alpha_minus": _alpha_to_dict(m, m.alpha_minus),
    }
    if m.alpha_plus is not None:
        doc["alpha_plus"] = _alpha_to_dict(m, m.alpha_plus)
    return doc


def manifold_to_json(m: ManifoldData) -> str:
    """Canonical JSON text; loading and re-emitting reproduces it byte for byte."""
    return json.dumps(manifold_to_dict(m), indent=2) + "\n"
