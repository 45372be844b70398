"""The component abstraction and the sequence machinery built on top of it.

A Component bundles a hidden-state data type: a transition function (`do_fn`),
an enabledness predicate (`poss_fn`), a transform function (`it_fn`) that
adjusts one concurrent method to include the effect of another, attribute
observers, and bounded enumerators for states and methods.  All values are
immutable and every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .bounds import Bounds, DEFAULT_BOUNDS
from .errors import UndefinedObservation, UnknownAttribute, UnknownMethod
from .values import NOP, Method, StateValue, canon_key


@dataclass
class Attribute:
    """An observer: (data args, state) -> data value.

    `enum_args` yields the argument tuples swept by bounded observational
    equality; attributes may raise UndefinedObservation on states where no
    value has been established yet.
    """

    name: str
    fn: Callable[[Tuple[Any, ...], StateValue], Any]
    enum_args: Callable[[Bounds], Sequence[Tuple[Any, ...]]] = lambda b: [()]


@dataclass(eq=False)
class Component:
    name: str
    method_ctors: frozenset
    attributes: Dict[str, Attribute]
    initial_state: StateValue
    do_fn: Callable[[Method, StateValue], StateValue]
    poss_fn: Callable[[Method, StateValue], bool]
    it_fn: Callable[[Method, Method], Method]
    enum_methods_fn: Callable[[Bounds], List[Method]]
    enum_states_fn: Callable[[Bounds], List[StateValue]]
    site_aware: bool = False
    provenance: str = ""
    # Optional scenario-file codecs; default to the generic encoding.
    state_from_json: Optional[Callable[[Any], StateValue]] = None
    state_to_display: Optional[Callable[[StateValue], Any]] = None
    method_from_json: Optional[Callable[[Any], Method]] = None

    def enum_methods(self, b: Bounds = DEFAULT_BOUNDS) -> List[Method]:
        return sorted(self.enum_methods_fn(b), key=canon_key)

    def enum_states(self, b: Bounds = DEFAULT_BOUNDS) -> List[StateValue]:
        return sorted(self.enum_states_fn(b), key=canon_key)

    def declares(self, m: Method) -> bool:
        return m.ctor in self.method_ctors or m.ctor == "nop"


def _require_method(c: Component, m: Method) -> None:
    if not isinstance(m, Method) or not c.declares(m):
        ctor = getattr(m, "ctor", m)
        raise UnknownMethod(f"{ctor!r} is not a method of component {c.name!r}")


def apply(c: Component, m: Method, st: StateValue) -> StateValue:
    """Execute one method on a state.  `nop` is the identity."""
    _require_method(c, m)
    if m.ctor == "nop":
        return st
    return c.do_fn(m, st)


def enabled(c: Component, m: Method, st: StateValue) -> bool:
    """Whether the method may execute on the state.  `nop` is always enabled."""
    _require_method(c, m)
    if m.ctor == "nop":
        return True
    return bool(c.poss_fn(m, st))


def transform(c: Component, m1: Method, m2: Method) -> Method:
    """Adjust m1 to include the effect of a concurrent m2.

    Transforming against `nop` is the identity and transforming `nop` stays
    `nop`; component tables only cover proper method pairs.
    """
    _require_method(c, m1)
    _require_method(c, m2)
    if m2.ctor == "nop":
        return m1
    if m1.ctor == "nop":
        return NOP
    return c.it_fn(m1, m2)


def apply_seq(c: Component, seq: Sequence[Method], st: StateValue) -> StateValue:
    """Left-to-right fold of apply; the empty sequence returns st."""
    for m in seq:
        st = apply(c, m, st)
    return st


def legal(c: Component, seq: Sequence[Method], st: StateValue) -> bool:
    """Each method enabled at its intermediate state; empty sequence is legal."""
    for m in seq:
        if not enabled(c, m, st):
            return False
        st = apply(c, m, st)
    return True


def transform_seq(c: Component, m: Method, seq: Sequence[Method]) -> Method:
    """Fold of transform over an already-executed method sequence."""
    for other in seq:
        m = transform(c, m, other)
    return m


def observe(c: Component, attr: str, args: Sequence[Any], st: StateValue) -> Any:
    if attr not in c.attributes:
        raise UnknownAttribute(f"{attr!r} is not an attribute of {c.name!r}")
    return c.attributes[attr].fn(tuple(args), st)


_BOTTOM = object()


def _observations(c: Component, st: StateValue, b: Bounds):
    for name in sorted(c.attributes):
        a = c.attributes[name]
        for args in a.enum_args(b):
            try:
                yield (name, args, a.fn(tuple(args), st))
            except UndefinedObservation:
                yield (name, args, _BOTTOM)


def obs_equal(c: Component, s1: StateValue, s2: StateValue, depth: int,
              b: Bounds = DEFAULT_BOUNDS) -> bool:
    """States indistinguishable through attributes after legal contexts.

    Depth 0 compares the attribute observations on the two states directly;
    depth k also compares after every jointly enabled method, recursively.  A
    method enabled on exactly one side counts as a distinguishing context.
    """
    if list(_observations(c, s1, b)) != list(_observations(c, s2, b)):
        return False
    if depth <= 0:
        return True
    for m in c.enum_methods(b):
        e1, e2 = enabled(c, m, s1), enabled(c, m, s2)
        if e1 != e2:
            return False
        if e1 and not obs_equal(c, apply(c, m, s1), apply(c, m, s2), depth - 1, b):
            return False
    return True
