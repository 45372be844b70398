"""Parametric container patterns, admissibility checking, and instantiation.

A pattern is a container component whose element sort is left open.  Binding
the element sort to another component's states turns the pattern into a
concrete component (instantiation); the pattern additionally carries the
semantics needed to graft in-place element edits onto the container (see
composition.dynamic_compose).

Two patterns ship: a finite set (in a "literal" and a "guarded" variant,
differing only in whether adding a present element is enabled) and a sequence
with position-addressed insert/delete whose transform shifts positions and
breaks insert ties by site id.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Tuple

from .bounds import Bounds, DEFAULT_BOUNDS
from .errors import BoundsExceeded, BoundsTooSmall, NotAdmissible
from .kernel import Attribute, Component
from .values import (NOP, Method, Opaque, SeqOf, SetOf, StateValue, canon_key,
                     seq_of, set_of, value_from_json)

_ADMISSIBILITY_SWEEP_LIMIT = 1_000_000  # pairs; beyond this only structural eq is accepted


@dataclass(frozen=True)
class Morphism:
    """Binding of the pattern's element sort to a target component's states.

    eq=None means canonical structural equality of the target states; a
    custom predicate is only meaningful for admissibility checking.
    """

    eq: Optional[Callable[[StateValue, StateValue], bool]] = None


@dataclass
class CompositionPattern:
    name: str
    param_axioms: Tuple[str, ...]  # subset of {"eq-symmetric", "eq-transitive"}
    build_body: Callable[[Component], Component]
    # In-place element-edit semantics used by dynamic composition.
    # update_do / update_poss take (addr, old child, new child, container state).
    update_addrs: Callable[[Bounds], List[Tuple[Any, ...]]]
    update_do: Callable[[Tuple[Any, ...], StateValue, StateValue, StateValue], StateValue]
    update_poss: Callable[[Tuple[Any, ...], StateValue, StateValue, StateValue], bool]
    update_site_aware: bool = False
    # Cross-transform tables: (update method, container method, new child) and
    # the symmetric direction.  None marks a pattern without a table.
    it_update_vs_method: Optional[Callable[[Method, Method, StateValue], Method]] = None
    it_method_vs_update: Optional[Callable[[Method, Method, StateValue], Method]] = None
    parametric_methods: Tuple[str, ...] = ()
    parametric_attributes: Tuple[str, ...] = ()


@dataclass
class AdmissibilityReport:
    ok: bool
    states_checked: int
    failed_axiom: Optional[str] = None
    witness: Optional[tuple] = None
    note: str = ""


def _structural_eq(a: StateValue, b: StateValue) -> bool:
    return a == b


def check_admissible(pattern: CompositionPattern, child: Component,
                     phi: Optional[Morphism] = None,
                     b: Bounds = DEFAULT_BOUNDS) -> AdmissibilityReport:
    """Verify the pattern's element-equality laws over the child's states.

    Structural equality over a very large state enumeration skips the pairwise
    sweep: canonical forms make it an equivalence relation by construction, and
    only duplicate-free enumeration needs verifying.
    """
    states = child.enum_states(b)
    if len(states) < 2:
        raise BoundsTooSmall(
            f"{child.name}: admissibility needs at least 2 enumerated states, got {len(states)}")
    eq = phi.eq if phi is not None and phi.eq is not None else None
    n = len(states)

    if n * n > _ADMISSIBILITY_SWEEP_LIMIT:
        if eq is not None:
            raise BoundsExceeded(
                f"custom eq sweep over {n} states needs {n * n} pairs")
        if len(set(states)) != len(states):
            return AdmissibilityReport(False, n, "canonical-unique",
                                       note="duplicate canonical states in enumeration")
        return AdmissibilityReport(True, n,
                                   note="structural equality; pairwise sweep elided")

    eq = eq or _structural_eq
    if "eq-symmetric" in pattern.param_axioms:
        for x, y in itertools.product(states, repeat=2):
            if eq(x, y) != eq(y, x):
                return AdmissibilityReport(False, n, "eq-symmetric", (x, y))
    if "eq-transitive" in pattern.param_axioms:
        related = [(x, y) for x, y in itertools.product(states, repeat=2) if eq(x, y)]
        succ: dict = {}
        for x, y in related:
            succ.setdefault(x, []).append(y)
        for x, y in related:
            for z in succ.get(y, []):
                if not eq(x, z):
                    return AdmissibilityReport(False, n, "eq-transitive", (x, y, z))
    return AdmissibilityReport(True, n)


def instantiate(pattern: CompositionPattern, child: Component,
                phi: Optional[Morphism] = None,
                b: Bounds = DEFAULT_BOUNDS, check: bool = True) -> Component:
    """Bind the pattern's element sort to the child's states."""
    if check:
        report = check_admissible(pattern, child, phi, b)
        if not report.ok:
            raise NotAdmissible(
                f"{child.name} fails {report.failed_axiom} for pattern {pattern.name}: "
                f"witness {report.witness}")
    return pattern.build_body(child)


# ---------------------------------------------------------------------------
# Finite-set pattern
# ---------------------------------------------------------------------------

def _set_body(child: Component, guarded: bool, name: str) -> Component:
    def do_fn(m: Method, st: SetOf) -> SetOf:
        e = m.args[0]
        if m.ctor == "add":
            return SetOf(st.items | {e})
        return SetOf(st.items - {e})

    def poss_fn(m: Method, st: SetOf) -> bool:
        e = m.args[0]
        if m.ctor == "add":
            return e not in st.items if guarded else True
        return e in st.items

    def it_fn(m1: Method, m2: Method) -> Method:
        e1, e2 = m1.args[0], m2.args[0]
        if m1.ctor == "add" and m2.ctor == "add":
            return NOP if e1 == e2 else m1
        if m1.ctor == "remove" and m2.ctor == "remove":
            return NOP if e1 == e2 else m1
        return m1  # add-vs-remove and remove-vs-add leave m1 unchanged

    def enum_methods(b: Bounds) -> List[Method]:
        elems = child.enum_states(b)
        return [NOP] + [Method(c, (e,)) for c in ("add", "remove") for e in elems]

    def enum_states(b: Bounds) -> List[SetOf]:
        elems = child.enum_states(b)
        if len(elems) > 16:
            raise BoundsExceeded(f"{name}: {2 ** len(elems)} subset states")
        out = []
        for r in range(len(elems) + 1):
            out.extend(set_of(c) for c in itertools.combinations(elems, r))
        return out

    def parse_state(obj):
        if isinstance(obj, dict) and "set" in obj:
            return set_of(_parse_child_state(child, x) for x in obj["set"])
        if isinstance(obj, list):
            return set_of(_parse_child_state(child, x) for x in obj)
        return value_from_json(obj)

    def parse_method(obj):
        ctor = obj["ctor"]
        if ctor in ("add", "remove"):
            return Method(ctor, (_parse_child_state(child, obj["args"][0]),),
                          obj.get("site"))
        return Method(ctor, tuple(value_from_json(a) for a in obj.get("args", [])),
                      obj.get("site"))

    return Component(
        name=name,
        method_ctors=frozenset({"nop", "add", "remove"}),
        attributes={"iselem": Attribute(
            "iselem",
            fn=lambda args, st: args[0] in st.items,
            enum_args=lambda b: [(e,) for e in child.enum_states(b)])},
        initial_state=SetOf(),
        do_fn=do_fn,
        poss_fn=poss_fn,
        it_fn=it_fn,
        enum_methods_fn=enum_methods,
        enum_states_fn=enum_states,
        site_aware=child.site_aware,
        state_from_json=parse_state,
        method_from_json=parse_method,
        provenance=name,
    )


def set_pattern(variant: str = "guarded") -> CompositionPattern:
    """Finite sets of elements with add/remove and element-wise transform.

    The "literal" variant always enables add; the "guarded" variant requires
    the element to be absent, which removes the one delivery race where a
    concurrent add/remove pair on a present element diverges.  The guarded
    variant guards in-place edits the same way: the new value must not collide
    with another element already present, since a value-addressed set would
    silently merge the two and lose one of them.
    """
    if variant not in ("literal", "guarded"):
        raise ValueError(f"unknown set variant {variant!r}")
    guarded = variant == "guarded"
    name = f"set-{variant}"

    def it_update_vs_method(u: Method, m: Method, new: StateValue) -> Method:
        old = u.args[1]
        if m.ctor == "remove" and m.args[0] == old:
            return NOP  # the edited element vanished
        return u

    def it_method_vs_update(m: Method, u: Method, new: StateValue) -> Method:
        old = u.args[1]
        if m.ctor == "remove" and m.args[0] == old:
            return Method("remove", (new,), m.site)
        return m

    def update_poss(addr, old, new, st: SetOf) -> bool:
        if old not in st.items:
            return False
        if guarded:
            return new == old or new not in st.items
        return True

    return CompositionPattern(
        name=name,
        param_axioms=("eq-symmetric", "eq-transitive"),
        build_body=lambda child: _set_body(child, guarded, name),
        update_addrs=lambda b: [()],  # the old element itself addresses the target
        update_do=lambda addr, old, new, st: SetOf((st.items - {old}) | {new}),
        update_poss=update_poss,
        update_site_aware=False,
        it_update_vs_method=it_update_vs_method,
        it_method_vs_update=it_method_vs_update,
        parametric_methods=("add", "remove"),
        parametric_attributes=("iselem",),
    )


# ---------------------------------------------------------------------------
# Sequence pattern
# ---------------------------------------------------------------------------

def _site(m: Method) -> int:
    return -1 if m.site is None else m.site


def _string_it(m1: Method, m2: Method) -> Method:
    c1, c2 = m1.ctor, m2.ctor
    p1, p2 = m1.args[0], m2.args[0]
    if c1 == "Ins" and c2 == "Ins":
        if p1 < p2 or (p1 == p2 and _site(m1) < _site(m2)):
            return m1
        return Method("Ins", (p1 + 1, m1.args[1]), m1.site)
    if c1 == "Ins" and c2 == "Del":
        if p1 <= p2:
            return m1
        return Method("Ins", (p1 - 1, m1.args[1]), m1.site)
    if c1 == "Del" and c2 == "Ins":
        if p1 < p2:
            return m1
        return Method("Del", (p1 + 1,), m1.site)
    # Del vs Del
    if p1 < p2:
        return m1
    if p1 > p2:
        return Method("Del", (p1 - 1,), m1.site)
    return NOP  # both deleted the same element


def _string_body(child: Component) -> Component:
    name = "string"

    def do_fn(m: Method, st: SeqOf) -> SeqOf:
        p = m.args[0]
        items = st.items
        if m.ctor == "Ins":
            if 0 <= p <= len(items):
                return SeqOf(items[:p] + (m.args[1],) + items[p:])
            return st
        if 0 <= p < len(items):
            return SeqOf(items[:p] + items[p + 1:])
        return st

    def poss_fn(m: Method, st: SeqOf) -> bool:
        p = m.args[0]
        if m.ctor == "Ins":
            return 0 <= p <= len(st.items)
        return 0 <= p < len(st.items)

    def elem_at(args, st: SeqOf):
        from .errors import UndefinedObservation
        p = args[0]
        if 0 <= p < len(st.items):
            return st.items[p]
        raise UndefinedObservation(f"elemAt({p}) past the end")

    def enum_methods(b: Bounds) -> List[Method]:
        elems = child.enum_states(b)
        out = [NOP]
        for n in range(b.sites):
            out.extend(Method("Ins", (p, e), n)
                       for p in range(b.max_len + 1) for e in elems)
            out.extend(Method("Del", (p,), n) for p in range(b.max_len))
        return out

    def enum_states(b: Bounds) -> List[SeqOf]:
        elems = child.enum_states(b)
        total = sum(len(elems) ** r for r in range(b.max_len + 1))
        if total > 500_000:
            raise BoundsExceeded(f"{name}: {total} sequence states")
        out: List[SeqOf] = []
        for r in range(b.max_len + 1):
            out.extend(seq_of(t) for t in itertools.product(elems, repeat=r))
        return out

    def parse_state(obj):
        if isinstance(obj, str):
            return seq_of(_parse_child_state(child, ch) for ch in obj)
        if isinstance(obj, list):
            return seq_of(_parse_child_state(child, x) for x in obj)
        if isinstance(obj, dict) and "seq" in obj:
            return seq_of(_parse_child_state(child, x) for x in obj["seq"])
        return value_from_json(obj)

    def display(st: SeqOf):
        vals = [child.state_to_display(x) if child.state_to_display else x
                for x in st.items]
        if all(isinstance(v, str) and len(v) == 1 for v in vals):
            return "".join(vals)
        return vals

    def parse_method(obj):
        ctor, args = obj["ctor"], obj.get("args", [])
        site = obj.get("site")
        if ctor == "Ins":
            return Method("Ins", (args[0], _parse_child_state(child, args[1])), site)
        if ctor == "Del":
            return Method("Del", (args[0],), site)
        return Method(ctor, tuple(value_from_json(a) for a in args), site)

    return Component(
        name=name,
        method_ctors=frozenset({"nop", "Ins", "Del"}),
        attributes={
            "elemAt": Attribute("elemAt", elem_at,
                                enum_args=lambda b: [(p,) for p in range(b.max_len)]),
            "length": Attribute("length", lambda args, st: len(st.items)),
        },
        initial_state=SeqOf(),
        do_fn=do_fn,
        poss_fn=poss_fn,
        it_fn=_string_it,
        enum_methods_fn=enum_methods,
        enum_states_fn=enum_states,
        site_aware=True,
        state_from_json=parse_state,
        state_to_display=display,
        method_from_json=parse_method,
        provenance=name,
    )


def string_pattern() -> CompositionPattern:
    """A sequence of elements with position-addressed insert and delete."""

    def it_update_vs_method(u: Method, m: Method, new: StateValue) -> Method:
        (p,), old, cm = u.args
        if m.ctor == "Ins":
            q = m.args[0]
            if p < q:
                return u
            return Method("Update", ((p + 1,), old, cm), u.site)
        if m.ctor == "Del":
            q = m.args[0]
            if p < q:
                return u
            if p > q:
                return Method("Update", ((p - 1,), old, cm), u.site)
            return NOP  # the edited element was deleted
        return u

    def it_method_vs_update(m: Method, u: Method, new: StateValue) -> Method:
        return m  # in-place edits do not shift positions

    def update_do(addr, old, new, st: SeqOf) -> SeqOf:
        p = addr[0]
        if 0 <= p < len(st.items) and st.items[p] == old:
            return SeqOf(st.items[:p] + (new,) + st.items[p + 1:])
        return st

    def update_poss(addr, old, new, st: SeqOf) -> bool:
        p = addr[0]
        return 0 <= p < len(st.items) and st.items[p] == old

    return CompositionPattern(
        name="string",
        param_axioms=("eq-symmetric", "eq-transitive"),
        build_body=_string_body,
        update_addrs=lambda b: [(p,) for p in range(b.max_len)],
        update_do=update_do,
        update_poss=update_poss,
        update_site_aware=True,
        it_update_vs_method=it_update_vs_method,
        it_method_vs_update=it_method_vs_update,
        parametric_methods=("Ins", "Del"),
        parametric_attributes=("elemAt",),
    )


# ---------------------------------------------------------------------------
# Opaque element tokens, for using a pattern on its own
# ---------------------------------------------------------------------------

def _token_names(n: int) -> List[str]:
    letters = ["x", "y", "z", "u", "v", "w"]
    if n <= len(letters):
        return letters[:n]
    return letters + [f"x{i}" for i in range(n - len(letters))]


def token_component() -> Component:
    """A degenerate element supplier: fixed opaque tokens, no methods."""
    return Component(
        name="token",
        method_ctors=frozenset({"nop"}),
        attributes={"ident": Attribute("ident", lambda args, st: st.value)},
        initial_state=Opaque("x"),
        do_fn=lambda m, st: st,
        poss_fn=lambda m, st: True,
        it_fn=lambda m1, m2: m1,
        enum_methods_fn=lambda b: [NOP],
        enum_states_fn=lambda b: [Opaque(t) for t in _token_names(b.universe)],
        state_from_json=lambda obj: Opaque(obj if not isinstance(obj, dict)
                                           else obj.get("atom")),
        state_to_display=lambda st: st.value,
        provenance="token",
    )


def _parse_child_state(child: Component, obj) -> StateValue:
    if child.state_from_json is not None:
        return child.state_from_json(obj)
    return value_from_json(obj)
