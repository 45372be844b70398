"""Replicated-sites harness: one batch of mutually concurrent operations from
a common base state, delivered to each site in a different order.

Each delivered operation is transformed against the sequence of operations the
site already executed, then applied.  A transformed operation that is not
enabled at its point of application is skipped and recorded; such runs are
marked partially legal rather than aborted.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple, Union

from .errors import ScenarioError, TooManyPermutations
from . import kernel
from .kernel import Component
from .values import Method, StateValue, value_from_json, value_to_json

MAX_ALL_PERMUTATION_OPS = 6


@dataclass
class Scenario:
    component: Union[str, Component]
    base: Any                       # raw literal, parsed against the component
    ops: List[Tuple[int, Any]]      # (site, raw method literal or Method)
    delivery: Union[str, List[List[int]]] = "all"
    use_transform: bool = True

    def __post_init__(self):
        sites = [s for s, _ in self.ops]
        if len(set(sites)) != len(sites):
            raise ScenarioError("sites issuing ops must be pairwise distinct")


@dataclass
class IntegrationTrace:
    delivered: Method
    transformed: Method
    applied: bool


@dataclass
class RunReport:
    finals: List[Tuple[Tuple[int, ...], StateValue]]
    converged: bool
    diverging: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]
    traces: dict
    fully_legal: bool

    def final_state(self) -> StateValue:
        return self.finals[0][1]

    def to_json(self, component: Optional[Component] = None) -> dict:
        def show(st):
            if component is not None and component.state_to_display:
                return component.state_to_display(st)
            return value_to_json(st)

        return {
            "converged": self.converged,
            "fully_legal": self.fully_legal,
            "finals": [{"order": list(order), "state": show(st)}
                       for order, st in self.finals],
            "diverging": [list(o) for o in self.diverging] if self.diverging else None,
            "traces": {",".join(map(str, order)): [
                {"delivered": value_to_json(t.delivered),
                 "transformed": value_to_json(t.transformed),
                 "applied": t.applied}
                for t in trace] for order, trace in self.traces.items()},
        }


def integrate(c: Component, base: StateValue, ops: Sequence[Method],
              order: Sequence[int], use_transform: bool = True
              ) -> Tuple[StateValue, List[IntegrationTrace]]:
    """Deliver the ops in the given order, transforming each against the
    already-executed (transformed) ones before applying it."""
    st = base
    executed: List[Method] = []
    trace: List[IntegrationTrace] = []
    for idx in order:
        op = ops[idx]
        t = kernel.transform_seq(c, op, executed) if use_transform else op
        ok = kernel.enabled(c, t, st)
        if ok:
            st = kernel.apply(c, t, st)
            executed.append(t)
        trace.append(IntegrationTrace(op, t, ok))
    return st, trace


def run_scenario(s: Scenario, component: Optional[Component] = None) -> RunReport:
    """Integrate under every requested delivery order and compare finals."""
    c = component if component is not None else s.component
    if not isinstance(c, Component):
        from .registry import build  # resolved lazily to avoid a cycle
        c = build(c)

    base = _parse_state(c, s.base)
    ops = [_parse_op(c, site, m) for site, m in s.ops]

    if s.delivery in ("all", "all-permutations"):
        if len(ops) > MAX_ALL_PERMUTATION_OPS:
            raise TooManyPermutations(
                f"{len(ops)} ops need {len(ops)}! orders; pass explicit permutations")
        orders = [tuple(p) for p in itertools.permutations(range(len(ops)))]
    else:
        orders = [tuple(p) for p in s.delivery]
        for p in orders:
            if sorted(p) != list(range(len(ops))):
                raise ScenarioError(f"bad permutation {p} for {len(ops)} ops")

    finals: List[Tuple[Tuple[int, ...], StateValue]] = []
    traces: dict = {}
    fully_legal = True
    for order in orders:
        st, trace = integrate(c, base, ops, order, s.use_transform)
        finals.append((order, st))
        traces[order] = trace
        fully_legal = fully_legal and all(t.applied for t in trace)

    diverging = None
    for (o1, s1), (o2, s2) in itertools.combinations(finals, 2):
        if s1 != s2:
            diverging = (o1, o2)
            break
    return RunReport(finals, diverging is None, diverging, traces, fully_legal)


def load_scenario(source) -> Scenario:
    """Read a scenario from a path, file object, JSON text, or dict."""
    if isinstance(source, dict):
        data = source
    elif hasattr(source, "read"):
        data = json.load(source)
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
        else:
            with open(text) as f:
                data = json.load(f)
    try:
        ops = [(op["site"], op["method"]) for op in data["ops"]]
        return Scenario(
            component=data["component"],
            base=data["base"],
            ops=ops,
            delivery=data.get("delivery", "all"),
            use_transform=data.get("transform", True),
        )
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"malformed scenario: {exc}") from exc


def _parse_state(c: Component, obj) -> StateValue:
    if not isinstance(obj, (str, int, float, list, dict, type(None))):
        return obj  # already a value
    if c.state_from_json is not None:
        return c.state_from_json(obj)
    return value_from_json(obj)


def _parse_op(c: Component, site: int, m) -> Method:
    if isinstance(m, Method):
        return Method(m.ctor, m.args, m.site if m.site is not None else site)
    obj = dict(m)
    obj.setdefault("site", site)
    if c.method_from_json is not None:
        return c.method_from_json(obj)
    return Method(obj["ctor"],
                  tuple(value_from_json(a) for a in obj.get("args", [])),
                  obj.get("site"))
