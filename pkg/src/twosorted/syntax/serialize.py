"""JSON form of the AST.

Every node is an object with a ``"tag"`` naming its variant::

    {"tag": "NumVarRef", "name": "x", "index": 0}
    {"tag": "FunVarRef", "name": "alpha", "index": 0}
    {"tag": "ConstApp", "const": "add", "args": [...], "funargs": [...]}
    {"tag": "Apply", "functor": {...}, "arg": {...}}
    {"tag": "RecApp", "base": {...}, "step": {...}, "arg": {...}}
    {"tag": "UnaryConst", "const": "sg"}
    {"tag": "Lambda", "var": {"name": "x", "index": 0}, "body": {...}}
    {"tag": "Eq", "lhs": {...}, "rhs": {...}}
    {"tag": "Not", "body": {...}}
    {"tag": "And" | "Or" | "Implies", "left": {...}, "right": {...}}
    {"tag": "ForallNum" | "ExistsNum" | "ForallFun" | "ExistsFun",
     "var": {"name": ..., "index": ...}, "body": {...}}
"""

from __future__ import annotations

import json
from typing import Any

from ..errors import InputError
from .ast import (
    And,
    Apply,
    ConstApp,
    Eq,
    ExistsFun,
    ExistsNum,
    Expr,
    ForallFun,
    ForallNum,
    FunVar,
    Implies,
    Lambda,
    Not,
    NumVar,
    Or,
    RecApp,
    UnaryConst,
)

_BIN = {"And": And, "Or": Or, "Implies": Implies}
_NQ = {"ForallNum": ForallNum, "ExistsNum": ExistsNum}
_FQ = {"ForallFun": ForallFun, "ExistsFun": ExistsFun}


def _var(v) -> dict:
    return {"name": v.name, "index": v.index}


def to_json(e: Expr) -> dict[str, Any]:
    if isinstance(e, NumVar):
        return {"tag": "NumVarRef", **_var(e)}
    if isinstance(e, FunVar):
        return {"tag": "FunVarRef", **_var(e)}
    if isinstance(e, ConstApp):
        return {
            "tag": "ConstApp",
            "const": e.const,
            "args": [to_json(a) for a in e.args],
            "funargs": [to_json(u) for u in e.funargs],
        }
    if isinstance(e, Apply):
        return {"tag": "Apply", "functor": to_json(e.functor), "arg": to_json(e.arg)}
    if isinstance(e, RecApp):
        return {
            "tag": "RecApp",
            "base": to_json(e.base),
            "step": to_json(e.step),
            "arg": to_json(e.arg),
        }
    if isinstance(e, UnaryConst):
        return {"tag": "UnaryConst", "const": e.const}
    if isinstance(e, Lambda):
        return {"tag": "Lambda", "var": _var(e.var), "body": to_json(e.body)}
    if isinstance(e, Eq):
        return {"tag": "Eq", "lhs": to_json(e.lhs), "rhs": to_json(e.rhs)}
    if isinstance(e, Not):
        return {"tag": "Not", "body": to_json(e.body)}
    name = type(e).__name__
    if name in _BIN:
        return {"tag": name, "left": to_json(e.left), "right": to_json(e.right)}
    if name in _NQ or name in _FQ:
        return {"tag": name, "var": _var(e.var), "body": to_json(e.body)}
    raise TypeError(f"not an expression: {e!r}")


def from_json(d: dict[str, Any]) -> Expr:
    try:
        return _from_json(d)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed AST JSON: {exc}") from None


def _from_json(d: dict[str, Any]) -> Expr:
    tag = d["tag"]
    if tag == "NumVarRef":
        return NumVar(d["name"], d.get("index", 0))
    if tag == "FunVarRef":
        return FunVar(d["name"], d.get("index", 0))
    if tag == "ConstApp":
        return ConstApp(
            d["const"],
            tuple(_from_json(a) for a in d.get("args", [])),
            tuple(_from_json(u) for u in d.get("funargs", [])),
        )
    if tag == "Apply":
        return Apply(_from_json(d["functor"]), _from_json(d["arg"]))
    if tag == "RecApp":
        return RecApp(_from_json(d["base"]), _from_json(d["step"]), _from_json(d["arg"]))
    if tag == "UnaryConst":
        return UnaryConst(d["const"])
    if tag == "Lambda":
        v = d["var"]
        return Lambda(NumVar(v["name"], v.get("index", 0)), _from_json(d["body"]))
    if tag == "Eq":
        return Eq(_from_json(d["lhs"]), _from_json(d["rhs"]))
    if tag == "Not":
        return Not(_from_json(d["body"]))
    if tag in _BIN:
        return _BIN[tag](_from_json(d["left"]), _from_json(d["right"]))
    if tag in _NQ:
        v = d["var"]
        return _NQ[tag](NumVar(v["name"], v.get("index", 0)), _from_json(d["body"]))
    if tag in _FQ:
        v = d["var"]
        return _FQ[tag](FunVar(v["name"], v.get("index", 0)), _from_json(d["body"]))
    raise InputError(f"unknown AST tag {tag!r}")


def dumps(e: Expr) -> str:
    return json.dumps(to_json(e), sort_keys=True)


def loads(s: str) -> Expr:
    try:
        return from_json(json.loads(s))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
