"""Static (non-interacting product) and dynamic (pattern-of-component)
composition.

Static composition pairs component states into a product; each method acts on
its owning factor only and transforms across factors as the identity.

Dynamic composition instantiates a pattern over a child component's states and
grafts on an in-place edit method ("Update") that carries the address of the
edited occurrence, the old child state, and the child method producing the new
one.  Concurrent edits of the same occurrence are reconciled by rebasing the
child methods through the child's own transform.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

from .bounds import Bounds, DEFAULT_BOUNDS
from .errors import (ComponentMismatch, MissingCrossTable, NameClash,
                     NotAdmissible)
from .kernel import Attribute, Component
from . import kernel
from .patterns import (CompositionPattern, Morphism, check_admissible,
                       instantiate, _parse_child_state)
from .values import (NOP, Method, Product, StateValue, product,
                     value_from_json)


# ---------------------------------------------------------------------------
# Static composition
# ---------------------------------------------------------------------------

def static_compose(*factors: Component, namespace: bool = True) -> Component:
    """Non-interacting product of two or more components.

    Clashing constructor names are prefixed with the owning factor's name
    (`nop` stays shared).  With namespace=False a clash raises NameClash.
    """
    if len(factors) < 2:
        raise ValueError("static composition needs at least two factors")

    owner: dict = {}          # composed ctor -> (factor index, original ctor)
    renamed: List[dict] = []  # per factor: original ctor -> composed ctor
    for i, f in enumerate(factors):
        ren: dict = {}
        for ctor in sorted(f.method_ctors):
            if ctor == "nop":
                continue
            name = ctor
            if name in owner:
                if not namespace:
                    raise NameClash(f"method {ctor!r} in more than one factor")
                name = f"{f.name}.{ctor}"
                k = 2
                while name in owner:
                    name = f"{f.name}{k}.{ctor}"
                    k += 1
            owner[name] = (i, ctor)
            ren[ctor] = name
        renamed.append(ren)

    attr_owner: dict = {}
    for i, f in enumerate(factors):
        for aname, attr in f.attributes.items():
            name = aname
            if name in attr_owner:
                if not namespace:
                    raise NameClash(f"attribute {aname!r} in more than one factor")
                name = f"{f.name}.{aname}"
                k = 2
                while name in attr_owner:
                    name = f"{f.name}{k}.{aname}"
                    k += 1
            attr_owner[name] = (i, attr)

    def _unpack(m: Method) -> Tuple[int, Method]:
        i, ctor = owner[m.ctor]
        return i, Method(ctor, m.args, m.site)

    def _pack(i: int, m: Method) -> Method:
        if m.ctor == "nop":
            return NOP
        return Method(renamed[i][m.ctor], m.args, m.site)

    def do_fn(m: Method, st: Product) -> Product:
        i, inner = _unpack(m)
        items = list(st.items)
        items[i] = kernel.apply(factors[i], inner, items[i])
        return Product(tuple(items))

    def poss_fn(m: Method, st: Product) -> bool:
        i, inner = _unpack(m)
        return kernel.enabled(factors[i], inner, st.items[i])

    def it_fn(m1: Method, m2: Method) -> Method:
        i1, inner1 = _unpack(m1)
        i2, inner2 = _unpack(m2)
        if i1 != i2:
            return m1  # factors do not interact
        return _pack(i1, kernel.transform(factors[i1], inner1, inner2))

    def enum_methods(b: Bounds) -> List[Method]:
        out = [NOP]
        for i, f in enumerate(factors):
            out.extend(_pack(i, m) for m in f.enum_methods(b) if m.ctor != "nop")
        return out

    def enum_states(b: Bounds) -> List[Product]:
        per = [f.enum_states(b) for f in factors]
        return [product(t) for t in itertools.product(*per)]

    attributes = {
        name: Attribute(
            name,
            fn=(lambda i, attr: lambda args, st: attr.fn(args, st.items[i]))(i, attr),
            enum_args=(lambda i, attr: lambda b: attr.enum_args(b))(i, attr))
        for name, (i, attr) in attr_owner.items()
    }

    def parse_state(obj):
        if isinstance(obj, list):
            return product(_parse_child_state(f, x) for f, x in zip(factors, obj))
        if isinstance(obj, dict) and "prod" in obj:
            return product(_parse_child_state(f, x)
                           for f, x in zip(factors, obj["prod"]))
        return value_from_json(obj)

    def parse_method(obj):
        ctor = obj["ctor"]
        if ctor == "nop":
            return NOP
        if ctor not in owner:
            raise ComponentMismatch(f"{ctor!r} not a method of this product")
        i, orig = owner[ctor]
        f = factors[i]
        if f.method_from_json is not None:
            inner = f.method_from_json({**obj, "ctor": orig})
        else:
            inner = Method(orig, tuple(value_from_json(a) for a in obj.get("args", [])),
                           obj.get("site"))
        return _pack(i, inner)

    def display(st: Product):
        return [f.state_to_display(x) if f.state_to_display else x
                for f, x in zip(factors, st.items)]

    provenance = " (+) ".join(f.provenance or f.name for f in factors)
    return Component(
        name=provenance,
        method_ctors=frozenset(owner) | {"nop"},
        attributes=attributes,
        initial_state=product(f.initial_state for f in factors),
        do_fn=do_fn,
        poss_fn=poss_fn,
        it_fn=it_fn,
        enum_methods_fn=enum_methods,
        enum_states_fn=enum_states,
        site_aware=any(f.site_aware for f in factors),
        state_from_json=parse_state,
        state_to_display=display,
        method_from_json=parse_method,
        provenance=provenance,
    )


# ---------------------------------------------------------------------------
# Dynamic composition
# ---------------------------------------------------------------------------

def make_update(addr: Tuple[Any, ...], old_child: StateValue,
                child_method: Method, site: Optional[int] = None) -> Method:
    return Method("Update", (tuple(addr), old_child, child_method), site)


def update_addr(u: Method) -> Tuple[Any, ...]:
    return u.args[0]


def update_old(u: Method) -> StateValue:
    return u.args[1]


def update_child_method(u: Method) -> Method:
    return u.args[2]


def is_update(m: Method) -> bool:
    return m.ctor == "Update"


@dataclass(eq=False)
class ComposedComponent(Component):
    pattern: CompositionPattern = None
    child: Component = None
    base: Component = None

    def update_new(self, u: Method) -> StateValue:
        """The new child state carried implicitly by an update method."""
        return kernel.apply(self.child, update_child_method(u), update_old(u))


def transform_update(comp: ComposedComponent, u1: Method, u2: Method) -> Method:
    """Transform one update against a concurrent one.

    Same target (equal address and equal old child state): rebase u1's child
    method through the child's transform onto the state u2 produced.  Distinct
    targets never interfere, so u1 passes through unchanged.
    """
    if not (is_update(u1) and is_update(u2)):
        raise ComponentMismatch("transform_update expects two update methods")
    if update_addr(u1) == update_addr(u2) and update_old(u1) == update_old(u2):
        rebased = kernel.transform(comp.child, update_child_method(u1),
                                   update_child_method(u2))
        return make_update(update_addr(u1), comp.update_new(u2), rebased, u1.site)
    return u1


def transform_update_vs_method(comp: ComposedComponent, u: Method,
                               m: Method) -> Method:
    if comp.pattern.it_update_vs_method is None:
        raise MissingCrossTable(f"pattern {comp.pattern.name} has no cross table")
    return comp.pattern.it_update_vs_method(u, m, comp.update_new(u))


def transform_method_vs_update(comp: ComposedComponent, m: Method,
                               u: Method) -> Method:
    if comp.pattern.it_method_vs_update is None:
        raise MissingCrossTable(f"pattern {comp.pattern.name} has no cross table")
    return comp.pattern.it_method_vs_update(m, u, comp.update_new(u))


def dynamic_compose(pattern: CompositionPattern, child: Component,
                    phi: Optional[Morphism] = None,
                    b: Bounds = DEFAULT_BOUNDS,
                    check: bool = True) -> ComposedComponent:
    """Instantiate the pattern over the child and graft on the update method."""
    base = instantiate(pattern, child, phi, b, check=check)
    comp = ComposedComponent(
        name=f"{pattern.name}[{child.name}]",
        method_ctors=base.method_ctors | {"Update"},
        attributes=base.attributes,  # updates add no attributes
        initial_state=base.initial_state,
        do_fn=None, poss_fn=None, it_fn=None,
        enum_methods_fn=None, enum_states_fn=None,
        site_aware=base.site_aware or pattern.update_site_aware,
        provenance=f"{pattern.name}[{child.provenance or child.name}]",
        pattern=pattern, child=child, base=base,
    )

    def do_fn(m: Method, st: StateValue) -> StateValue:
        if is_update(m):
            return pattern.update_do(update_addr(m), update_old(m),
                                     comp.update_new(m), st)
        return kernel.apply(base, m, st)

    def poss_fn(m: Method, st: StateValue) -> bool:
        if is_update(m):
            return pattern.update_poss(update_addr(m), update_old(m),
                                       comp.update_new(m), st)
        return kernel.enabled(base, m, st)

    def it_fn(m1: Method, m2: Method) -> Method:
        if is_update(m1) and is_update(m2):
            return transform_update(comp, m1, m2)
        if is_update(m1):
            return transform_update_vs_method(comp, m1, m2)
        if is_update(m2):
            return transform_method_vs_update(comp, m1, m2)
        return kernel.transform(base, m1, m2)

    def enum_methods(b2: Bounds) -> List[Method]:
        out = list(base.enum_methods(b2))
        sites = range(b2.sites) if pattern.update_site_aware else [None]
        for addr in pattern.update_addrs(b2):
            for old in child.enum_states(b2):
                for cm in child.enum_methods(b2):
                    for n in sites:
                        out.append(make_update(addr, old, cm, n))
        return out

    def parse_method(obj):
        if obj["ctor"] == "Update":
            addr, old, cm = obj["args"]
            return make_update(tuple(value_from_json(a) for a in addr),
                               _parse_child_state(child, old),
                               _parse_child_method(child, cm),
                               obj.get("site"))
        if base.method_from_json is not None:
            return base.method_from_json(obj)
        return Method(obj["ctor"],
                      tuple(value_from_json(a) for a in obj.get("args", [])),
                      obj.get("site"))

    comp.do_fn = do_fn
    comp.poss_fn = poss_fn
    comp.it_fn = it_fn
    comp.enum_methods_fn = enum_methods
    comp.enum_states_fn = base.enum_states_fn
    comp.state_from_json = base.state_from_json
    comp.state_to_display = base.state_to_display
    comp.method_from_json = parse_method
    return comp


def _parse_child_method(child: Component, obj) -> Method:
    if child.method_from_json is not None:
        return child.method_from_json(obj)
    return Method(obj["ctor"],
                  tuple(value_from_json(a) for a in obj.get("args", [])),
                  obj.get("site"))
