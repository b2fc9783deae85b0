"""Exact inequality certificates and their file format.

A certificate names an instance, a principle, the returned point and the
parameters used, and lists inequalities built from symbolic terms such as
``f(z)``, ``d(z, x0)`` or ``inf f``.  Nothing numeric is trusted: a checker
re-evaluates every term from the instance data.

File layout::

    {
      "principle": "ekeland",
      "instance": {...} | "instance_path": "inst.json",
      "objective": "f", "point": "c", "start": "a",
      "params": {"gamma": "1/2", ...},
      "witnesses": {"a": "d1", ...},
      "inequalities": [
        {"label": "i:d1", "lhs": [["f", "f", ["c"], 1], ["d", "d1", ["c", "a"], 1]],
         "op": "<=", "rhs": [["f", "f", ["a"], 1]]},
        ...
      ],
      "claims": {"fixed": "weak"},
      "trace": ["a", "b", "c"]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .extended import INF, dump_ext, scale, to_ext
from .instance import Instance, instance_from_dict, instance_to_dict
from .spaces import QVarError

OPS = ("<=", "<", ">", ">=", "=")


class DanglingReference(QVarError):
    """A certificate names a point, member, objective or file that does not exist."""


@dataclass(frozen=True)
class Term:
    """coef * value, where value is f(x), d(x, y), F(x, y), inf f or a constant."""

    kind: str  # "f", "d", "F", "inf", "const"
    name: Optional[str] = None
    args: tuple = ()
    coef: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "coef", Fraction(self.coef))
        if self.kind not in ("f", "d", "F", "inf", "const"):
            raise ValueError(f"unknown term kind {self.kind!r}")

    def to_json(self):
        return [self.kind, self.name, list(self.args), dump_ext(self.coef)]

    @classmethod
    def from_json(cls, data) -> "Term":
        kind, name, args, coef = data
        return cls(kind, name, tuple(args), to_ext(coef))

    def render(self) -> str:
        if self.kind == "const":
            return str(dump_ext(self.coef))
        if self.kind == "inf":
            core = f"inf {self.name}"
        else:
            core = f"{self.name}({', '.join(self.args)})"
        return core if self.coef == 1 else f"{dump_ext(self.coef)}*{core}"


def f_(name, x, coef=1) -> Term:
    return Term("f", name, (x,), coef)


def d_(name, x, y, coef=1) -> Term:
    return Term("d", name, (x, y), coef)


def F_(name, x, y, coef=1) -> Term:
    return Term("F", name, (x, y), coef)


def inf_(name, coef=1) -> Term:
    return Term("inf", name, (), coef)


def const(c) -> Term:
    return Term("const", None, (), c)


@dataclass(frozen=True)
class Inequality:
    label: str
    lhs: tuple
    op: str
    rhs: tuple

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if self.op not in OPS:
            raise ValueError(f"unknown comparison {self.op!r}")

    def to_json(self):
        return {"label": self.label, "lhs": [t.to_json() for t in self.lhs], "op": self.op, "rhs": [t.to_json() for t in self.rhs]}

    @classmethod
    def from_json(cls, data) -> "Inequality":
        return cls(
            data["label"],
            tuple(Term.from_json(t) for t in data["lhs"]),
            data["op"],
            tuple(Term.from_json(t) for t in data["rhs"]),
        )

    def render(self) -> str:
        side = lambda ts: " + ".join(t.render() for t in ts) or "0"  # noqa: E731
        return f"{side(self.lhs)} {self.op} {side(self.rhs)}"


# -- evaluation from raw instance data ----------------------------------------------


def evaluate_term(inst: Instance, t: Term):
    try:
        if t.kind == "const":
            return t.coef
        if t.kind == "f":
            v = inst.objectives[t.name](inst.idx(t.args[0]))
        elif t.kind == "inf":
            v = inst.objectives[t.name].infimum()
        elif t.kind == "d":
            v = inst.gauge.member(t.name)(inst.idx(t.args[0]), inst.idx(t.args[1]))
        else:
            v = inst.bivariates[t.name](inst.idx(t.args[0]), inst.idx(t.args[1]))
    except (KeyError, ValueError) as exc:
        raise DanglingReference(f"term {t.render()} does not resolve: {exc}") from None
    if v is INF:
        if t.coef <= 0:
            raise QVarError(f"term {t.render()} multiplies +inf by a non-positive coefficient")
        return INF
    return t.coef * v


def evaluate_side(inst: Instance, terms) -> object:
    total = Fraction(0)
    for t in terms:
        total = total + evaluate_term(inst, t)
    return total


def holds(inst: Instance, ineq: Inequality) -> bool:
    a, b = evaluate_side(inst, ineq.lhs), evaluate_side(inst, ineq.rhs)
    op = ineq.op
    if op == "<=":
        return a <= b
    if op == "<":
        return a < b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    return a == b


# -- the certificate -------------------------------------------------------------------


@dataclass
class Certificate:
    principle: str
    instance: Optional[Instance]
    point: Optional[str]
    objective: Optional[str] = None
    start: Optional[str] = None
    params: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)  # point name -> member name
    inequalities: list = field(default_factory=list)
    claims: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    instance_path: Optional[str] = None

    def resolve_instance(self, base: Optional[Path] = None) -> Instance:
        if self.instance is not None:
            return self.instance
        if self.instance_path is None:
            raise DanglingReference("certificate has neither an embedded instance nor an instance path")
        path = Path(self.instance_path)
        if base is not None and not path.is_absolute():
            path = base / path
        if not path.exists():
            raise DanglingReference(f"instance file {path} does not exist")
        inst = instance_from_dict(json.loads(path.read_text(encoding="utf-8")))
        self.instance = inst
        return inst

    def to_dict(self, embed: bool = True) -> dict:
        out = {"principle": self.principle}
        if embed and self.instance is not None:
            out["instance"] = instance_to_dict(self.instance)
        else:
            out["instance_path"] = self.instance_path
        out.update(
            {
                "objective": self.objective,
                "point": self.point,
                "start": self.start,
                "params": {k: _dump_param(v) for k, v in self.params.items()},
                "witnesses": dict(self.witnesses),
                "inequalities": [q.to_json() for q in self.inequalities],
                "claims": dict(self.claims),
                "trace": list(self.trace),
            }
        )
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        inst = instance_from_dict(data["instance"]) if "instance" in data and data["instance"] is not None else None
        return cls(
            principle=data["principle"],
            instance=inst,
            point=data.get("point"),
            objective=data.get("objective"),
            start=data.get("start"),
            params={k: _load_param(v) for k, v in data.get("params", {}).items()},
            witnesses=dict(data.get("witnesses", {})),
            inequalities=[Inequality.from_json(q) for q in data.get("inequalities", [])],
            claims=dict(data.get("claims", {})),
            trace=list(data.get("trace", [])),
            instance_path=data.get("instance_path"),
        )

    def dumps(self, embed: bool = True) -> str:
        return json.dumps(self.to_dict(embed), indent=2) + "\n"

    def render(self) -> str:
        lines = [f"principle {self.principle}: point {self.point}" + (f" from {self.start}" if self.start else "")]
        lines += [f"  [{q.label}] {q.render()}" for q in self.inequalities]
        return "\n".join(lines)


def _dump_param(v):
    if isinstance(v, Fraction) or v is INF:
        return dump_ext(v)
    if isinstance(v, dict):
        return {k: _dump_param(x) for k, x in v.items()}
    return v


def _load_param(v):
    if isinstance(v, dict):
        return {k: _load_param(x) for k, x in v.items()}
    if isinstance(v, str) and "/" in v:
        try:
            return Fraction(v)
        except ValueError:
            return v
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    return v


def loads(text: str) -> Certificate:
    return Certificate.from_dict(json.loads(text))


def load(path) -> Certificate:
    path = Path(path)
    cert = loads(path.read_text(encoding="utf-8"))
    if cert.instance is None:
        cert.resolve_instance(path.parent)
    return cert


__all__ = [
    "Term",
    "Inequality",
    "Certificate",
    "DanglingReference",
    "evaluate_term",
    "evaluate_side",
    "holds",
    "f_",
    "d_",
    "F_",
    "inf_",
    "const",
    "scale",
    "loads",
    "load",
]
