"""Finite instances and their JSON-compatible file format.

An instance bundles a point set, an F-quasi-gauge and any number of named
objectives, bivariate functions and set-valued maps.  Countable instances
built on the catalog use :class:`CountableInstance`.

File layout::

    {
      "points": ["a", "b", ...] | {"countable": {"catalog": id, "limits": [...]}},
      "gauge": [{"name": "d", "matrix": [[0, "1/2"], [1, 0]], "relax": "d"}, ...],
      "symmetric": false,
      "objectives": {"f": {"a": 1, "b": "inf"}},
      "bivariates": {"F": [[0, 1], ["-1/2", 0]]},
      "maps": {"T": {"a": ["a", "b"], "b": ["b"]}}
    }

Rationals are integers or ``"p/q"`` strings, infinity is ``"inf"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .extended import INF, ExtendedRational, dump_ext, is_finite, to_ext
from .spaces import FQuasiGauge, HypothesisError, PointSet, QuasiPseudometric


@dataclass(frozen=True)
class Objective:
    """An extended-rational valued function on the points, +inf allowed."""

    name: str
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(to_ext(v) for v in self.values))
        if not self.values:
            raise ValueError("empty objective")

    def __call__(self, i: int) -> ExtendedRational:
        return self.values[i]

    @property
    def proper(self) -> bool:
        return any(is_finite(v) for v in self.values)

    def domain(self) -> list:
        return [i for i, v in enumerate(self.values) if is_finite(v)]

    def infimum(self) -> Fraction:
        """inf f(X); finite instances are always bounded below once proper."""
        if not self.proper:
            raise HypothesisError(f"objective {self.name!r} is not proper (identically +inf)")
        return min(v for v in self.values if is_finite(v))


@dataclass(frozen=True)
class Bivariate:
    """F: X x X -> Q u {+inf} as a matrix."""

    name: str
    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(to_ext(v) for v in row) for row in self.matrix)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError(f"bivariate {self.name!r} is not square")
        object.__setattr__(self, "matrix", rows)

    def __call__(self, i: int, j: int) -> ExtendedRational:
        return self.matrix[i][j]

    @property
    def n(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class SetValuedMap:
    """x -> nonempty tuple of point indices."""

    name: str
    images: tuple

    def __post_init__(self):
        images = tuple(tuple(sorted(set(img))) for img in self.images)
        empty = [i for i, img in enumerate(images) if not img]
        if empty:
            raise ValueError(f"map {self.name!r} has an empty value at point {empty[0]}")
        object.__setattr__(self, "images", images)

    def __call__(self, i: int) -> tuple:
        return self.images[i]

    @classmethod
    def selector(cls, name: str, choice) -> "SetValuedMap":
        return cls(name, tuple((c,) for c in choice))


@dataclass(frozen=True)
class Instance:
    points: PointSet
    gauge: FQuasiGauge
    objectives: dict = field(default_factory=dict)
    bivariates: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.points)
        if self.gauge.n != n:
            raise ValueError(f"gauge is {self.gauge.n}x{self.gauge.n} but there are {n} points")
        for f in self.objectives.values():
            if len(f.values) != n:
                raise ValueError(f"objective {f.name!r} has {len(f.values)} values for {n} points")
        for F in self.bivariates.values():
            if F.n != n:
                raise ValueError(f"bivariate {F.name!r} has the wrong size")
        for T in self.maps.values():
            if len(T.images) != n or any(not 0 <= j < n for img in T.images for j in img):
                raise ValueError(f"map {T.name!r} does not fit the point set")

    def __hash__(self):
        return id(self)

    @property
    def n(self) -> int:
        return len(self.points)

    def name(self, i: int) -> str:
        return self.points.names[i]

    def idx(self, point) -> int:
        return self.points.resolve(point)

    def objective(self, name: Optional[str] = None) -> Objective:
        if name is None:
            if len(self.objectives) != 1:
                raise KeyError("instance has several objectives; name one")
            return next(iter(self.objectives.values()))
        try:
            return self.objectives[name]
        except KeyError:
            raise KeyError(f"unknown objective {name!r}") from None

    def with_gauge(self, gauge: FQuasiGauge) -> "Instance":
        return Instance(self.points, gauge, dict(self.objectives), dict(self.bivariates), dict(self.maps))

    def with_objective(self, f: Objective) -> "Instance":
        objectives = dict(self.objectives)
        objectives[f.name] = f
        return Instance(self.points, self.gauge, objectives, dict(self.bivariates), dict(self.maps))

    def with_map(self, T: SetValuedMap) -> "Instance":
        maps = dict(self.maps)
        maps[T.name] = T
        return Instance(self.points, self.gauge, dict(self.objectives), dict(self.bivariates), maps)

    def with_bivariate(self, F: Bivariate) -> "Instance":
        bivariates = dict(self.bivariates)
        bivariates[F.name] = F
        return Instance(self.points, self.gauge, dict(self.objectives), bivariates, dict(self.maps))


def make_instance(names, members, relax=None, objectives=None, symmetric=False) -> Instance:
    """Convenience constructor from plain Python data.

    ``members`` maps member names to matrices; ``objectives`` maps names to
    value lists aligned with ``names``.
    """
    gauge = FQuasiGauge(tuple(QuasiPseudometric(k, m) for k, m in members.items()), dict(relax or {}), symmetric)
    objs = {k: Objective(k, v) for k, v in (objectives or {}).items()}
    return Instance(PointSet(tuple(names)), gauge, objs)


@dataclass(frozen=True)
class CountableInstance:
    """A catalog point set (rationals in the catalog domain) plus named limit points."""

    catalog: str
    limits: tuple
    gauge: tuple  # of (member name, catalog distance id, relax name)

    def to_dict(self):
        return {
            "points": {"countable": {"catalog": self.catalog, "limits": list(self.limits)}},
            "gauge": [{"name": n, "catalog": c, "relax": r} for n, c, r in self.gauge],
        }


# -- serialization ----------------------------------------------------------


def instance_to_dict(inst) -> dict:
    if isinstance(inst, CountableInstance):
        return inst.to_dict()
    names = inst.points.names
    out = {
        "points": list(names),
        "gauge": [
            {"name": d.name, "matrix": [[dump_ext(v) for v in row] for row in d.matrix], "relax": inst.gauge.relax[d.name]}
            for d in inst.gauge.members
        ],
    }
    if inst.gauge.symmetric:
        out["symmetric"] = True
    if inst.objectives:
        out["objectives"] = {
            k: {names[i]: dump_ext(v) for i, v in enumerate(f.values)} for k, f in sorted(inst.objectives.items())
        }
    if inst.bivariates:
        out["bivariates"] = {k: [[dump_ext(v) for v in row] for row in F.matrix] for k, F in sorted(inst.bivariates.items())}
    if inst.maps:
        out["maps"] = {
            k: {names[i]: [names[j] for j in img] for i, img in enumerate(T.images)} for k, T in sorted(inst.maps.items())
        }
    return out


def instance_from_dict(data: dict):
    points = data["points"]
    if isinstance(points, dict):
        countable = points["countable"]
        gauge = tuple((g["name"], g["catalog"], g.get("relax", g["name"])) for g in data["gauge"])
        return CountableInstance(countable["catalog"], tuple(countable.get("limits", [])), gauge)
    pset = PointSet(tuple(points))
    members = []
    relax = {}
    for g in data["gauge"]:
        if "matrix" not in g:
            raise ValueError(f"gauge member {g['name']!r} needs a matrix on a finite instance")
        members.append(QuasiPseudometric(g["name"], g["matrix"]))
        relax[g["name"]] = g.get("relax", g["name"])
    gauge = FQuasiGauge(tuple(members), relax, bool(data.get("symmetric", False)))
    objectives = {}
    for k, vals in data.get("objectives", {}).items():
        if isinstance(vals, dict):
            missing = set(points) - set(vals)
            if missing:
                raise ValueError(f"objective {k!r} misses points {sorted(missing)}")
            extra = set(vals) - set(points)
            if extra:
                raise ValueError(f"objective {k!r} names unknown points {sorted(extra)}")
            vals = [vals[p] for p in points]
        objectives[k] = Objective(k, tuple(vals))
    bivariates = {k: Bivariate(k, m) for k, m in data.get("bivariates", {}).items()}
    maps = {}
    for k, table in data.get("maps", {}).items():
        maps[k] = SetValuedMap(k, tuple(tuple(pset.index(q) for q in table[p]) for p in points))
    return Instance(pset, gauge, objectives, bivariates, maps)


def dumps(inst) -> str:
    return json.dumps(instance_to_dict(inst), indent=2, sort_keys=False) + "\n"


def loads(text: str):
    return instance_from_dict(json.loads(text))


def load(path) -> object:
    return loads(Path(path).read_text(encoding="utf-8"))


def save(inst, path) -> None:
    Path(path).write_text(dumps(inst), encoding="utf-8")


__all__ = [
    "Objective",
    "Bivariate",
    "SetValuedMap",
    "Instance",
    "CountableInstance",
    "make_instance",
    "instance_to_dict",
    "instance_from_dict",
    "dumps",
    "loads",
    "load",
    "save",
    "INF",
]
