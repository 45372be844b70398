"""Immutable state and method values with canonical forms and JSON codecs.

States are one of Cell, SetOf, SeqOf, Product, Opaque.  Sets are backed by
frozenset so canonical (structural) equality is the dataclass equality;
ordering for display/serialization is restored by `canon_key`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Tuple


@dataclass(frozen=True)
class Cell:
    value: Any = None


@dataclass(frozen=True)
class SetOf:
    items: frozenset = frozenset()


@dataclass(frozen=True)
class SeqOf:
    items: Tuple[Any, ...] = ()


@dataclass(frozen=True)
class Product:
    items: Tuple[Any, ...] = ()


@dataclass(frozen=True)
class Opaque:
    value: Any = None


StateValue = Any  # Cell | SetOf | SeqOf | Product | Opaque


def set_of(items: Iterable[StateValue]) -> SetOf:
    return SetOf(frozenset(items))


def seq_of(items: Iterable[StateValue]) -> SeqOf:
    return SeqOf(tuple(items))


def product(items: Iterable[StateValue]) -> Product:
    return Product(tuple(items))


@dataclass(frozen=True)
class Method:
    """A symbolic operation: constructor name, data arguments, optional site id."""

    ctor: str
    args: Tuple[Any, ...] = ()
    site: Optional[int] = None


NOP = Method("nop")


def canon_key(v: Any):
    """Total order key over heterogeneous values, states and methods."""
    if v is None:
        return ("0none",)
    if isinstance(v, bool):
        return ("1scal", "b", int(v))
    if isinstance(v, (int, float)):
        return ("1scal", "n", v)
    if isinstance(v, str):
        return ("1scal", "s", v)
    if isinstance(v, Cell):
        return ("2cell", canon_key(v.value))
    if isinstance(v, Opaque):
        return ("3atom", canon_key(v.value))
    if isinstance(v, SetOf):
        return ("4set", tuple(sorted(canon_key(x) for x in v.items)))
    if isinstance(v, SeqOf):
        return ("5seq", tuple(canon_key(x) for x in v.items))
    if isinstance(v, Product):
        return ("6prod", tuple(canon_key(x) for x in v.items))
    if isinstance(v, Method):
        return ("7meth", v.ctor, tuple(canon_key(a) for a in v.args),
                -1 if v.site is None else v.site)
    if isinstance(v, tuple):
        return ("8tup", tuple(canon_key(x) for x in v))
    raise TypeError(f"no canonical order for {type(v).__name__}")


def value_to_json(v: Any) -> Any:
    """Encode a state, method, or data value into plain JSON structures."""
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, Cell):
        return {"cell": value_to_json(v.value)}
    if isinstance(v, Opaque):
        return {"atom": value_to_json(v.value)}
    if isinstance(v, SetOf):
        return {"set": [value_to_json(x) for x in sorted(v.items, key=canon_key)]}
    if isinstance(v, SeqOf):
        return {"seq": [value_to_json(x) for x in v.items]}
    if isinstance(v, Product):
        return {"prod": [value_to_json(x) for x in v.items]}
    if isinstance(v, Method):
        out = {"ctor": v.ctor, "args": [value_to_json(a) for a in v.args]}
        if v.site is not None:
            out["site"] = v.site
        return out
    if isinstance(v, tuple):
        return {"tuple": [value_to_json(x) for x in v]}
    raise TypeError(f"cannot serialize {type(v).__name__}")


def value_from_json(obj: Any) -> Any:
    """Inverse of value_to_json."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, list):
        return tuple(value_from_json(x) for x in obj)
    if isinstance(obj, dict):
        if "cell" in obj:
            return Cell(value_from_json(obj["cell"]))
        if "atom" in obj:
            return Opaque(value_from_json(obj["atom"]))
        if "set" in obj:
            return set_of(value_from_json(x) for x in obj["set"])
        if "seq" in obj:
            return seq_of(value_from_json(x) for x in obj["seq"])
        if "prod" in obj:
            return product(value_from_json(x) for x in obj["prod"])
        if "tuple" in obj:
            return tuple(value_from_json(x) for x in obj["tuple"])
        if "ctor" in obj:
            return Method(obj["ctor"],
                          tuple(value_from_json(a) for a in obj.get("args", [])),
                          obj.get("site"))
    raise ValueError(f"cannot decode value: {obj!r}")
