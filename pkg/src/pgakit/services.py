"""State-based services and thread-service composition.

A service is a step function: applying a method yields a successor service
and a reply (True, False, or Blocked).  Blocked is absorbing.  Composing a
thread with a service replaces matching-focus actions by silent steps whose
branch is chosen by the reply; the counter service provides clr/inc/dec/isz
over a non-negative content.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .threads import (
    DEADLOCK,
    TAU,
    Basic,
    Body,
    Post,
    Tau,
    ThreadSpec,
    validate,
)


class Reply(enum.Enum):
    TRUE = "T"
    FALSE = "F"
    BLOCKED = "B"


class ServiceError(Exception):
    pass


class BudgetExceededError(ServiceError):
    pass


class Service:
    """Interface: apply(method) -> (successor service, reply), plus a state
    key that is stable and unique per reachable service state."""

    def apply(self, method: str) -> Tuple["Service", Reply]:
        raise NotImplementedError

    def key(self) -> str:
        raise NotImplementedError


def service_apply(svc: Service, method: str) -> Tuple[Service, Reply]:
    return svc.apply(method)


@dataclass(frozen=True)
class CounterService(Service):
    """Natural-number counter.  clr zeroes, inc adds one, dec subtracts one
    (refusing at zero with a False reply), isz tests for zero.  Any other
    method wedges the service permanently."""

    content: Optional[int] = 0

    def apply(self, method: str) -> Tuple["CounterService", Reply]:
        k = self.content
        if k is None:
            return self, Reply.BLOCKED
        if method == "clr":
            return CounterService(0), Reply.TRUE
        if method == "inc":
            return CounterService(k + 1), Reply.TRUE
        if method == "dec":
            if k == 0:
                return self, Reply.FALSE
            return CounterService(k - 1), Reply.TRUE
        if method == "isz":
            return self, Reply.TRUE if k == 0 else Reply.FALSE
        return CounterService(None), Reply.BLOCKED

    def key(self) -> str:
        if self.content is None:
            return "cnt:undef"
        return f"cnt:{self.content}"


def counter_new(init: int = 0) -> CounterService:
    if init < 0:
        raise ValueError("counter content must be non-negative")
    return CounterService(init)


@dataclass(frozen=True)
class Budget:
    max_states: int = 1_000_000

    def __post_init__(self) -> None:
        if self.max_states <= 0:
            raise ValueError("max_states must be positive")


def compose(
    spec: ThreadSpec,
    focus: str,
    svc: Service,
    budget: Optional[Budget] = None,
) -> ThreadSpec:
    """Product of a thread with a service handling one focus.  Actions on
    other foci pass through; actions on the given focus become silent steps
    whose branch is picked by the reply, with the service advanced; Blocked
    replies deadlock.  State count is capped by the budget."""
    spec = validate(spec)
    if budget is None:
        budget = Budget()

    pairs: Dict[Tuple[str, str], Tuple[str, Service]] = {}
    order: List[Tuple[str, str]] = []

    def visit(sid: str, service: Service) -> Tuple[str, str]:
        key = (sid, service.key())
        if key not in pairs:
            if len(pairs) >= budget.max_states:
                raise BudgetExceededError(
                    f"service product exceeded {budget.max_states} states"
                )
            pairs[key] = (sid, service)
            order.append(key)
            queue.append(key)
        return key

    # discovery pass
    transitions: Dict[Tuple[str, str], tuple] = {}
    queue: List[Tuple[str, str]] = []
    root_key = visit(spec.root, svc)
    while queue:
        key = queue.pop(0)
        sid, service = pairs[key]
        body = spec.states[sid]
        if not isinstance(body, Post):
            transitions[key] = ("leaf", body)
            continue
        action = body.action
        if isinstance(action, Tau):
            transitions[key] = ("tau", visit(body.then, service))
        elif action.focus != focus:
            transitions[key] = (
                "pass",
                action,
                visit(body.then, service),
                visit(body.else_, service),
            )
        else:
            nxt, reply = service.apply(action.method)
            if reply is Reply.BLOCKED:
                transitions[key] = ("leaf", DEADLOCK)
            elif reply is Reply.TRUE:
                transitions[key] = ("tau", visit(body.then, nxt))
            else:
                transitions[key] = ("tau", visit(body.else_, nxt))

    # naming pass: keep the original state name where unambiguous
    per_sid: Dict[str, int] = {}
    for sid, _ in pairs.values():
        per_sid[sid] = per_sid.get(sid, 0) + 1
    taken = set()
    names: Dict[Tuple[str, str], str] = {}
    for key in order:
        sid = pairs[key][0]
        if per_sid[sid] == 1 and sid not in taken:
            name = sid
        else:
            n = 1
            while f"{sid}_{n}" in taken or f"{sid}_{n}" in per_sid:
                n += 1
            name = f"{sid}_{n}"
        taken.add(name)
        names[key] = name

    states: Dict[str, Body] = {}
    for key in order:
        t = transitions[key]
        if t[0] == "leaf":
            states[names[key]] = t[1]
        elif t[0] == "tau":
            states[names[key]] = Post(TAU, names[t[1]], names[t[1]])
        else:
            _, action, then_key, else_key = t
            states[names[key]] = Post(action, names[then_key], names[else_key])
    return validate(ThreadSpec(states, names[root_key]))


def collapse_counter_divergence(spec: ThreadSpec, focus: str = "cnt") -> ThreadSpec:
    """Replace states lying on a cycle of silent or `focus`.inc steps with
    deadlock.  Such a cycle can only spin the counter up forever, which
    after composition and abstraction is deadlock; removing it first keeps
    the service product finite."""
    spec = validate(spec)

    def step(name: str) -> Optional[str]:
        body = spec.states[name]
        if not isinstance(body, Post):
            return None
        a = body.action
        if isinstance(a, Tau):
            return body.then
        if a.focus == focus and a.method == "inc":
            return body.then
        return None

    color: Dict[str, int] = {}
    on_cycle = set()
    for start in spec.states:
        if color.get(start):
            continue
        path: List[str] = []
        cur: Optional[str] = start
        while cur is not None and color.get(cur, 0) == 0:
            color[cur] = 1
            path.append(cur)
            cur = step(cur)
        if cur is not None and color[cur] == 1:
            # found a new cycle; everything from cur onwards in path is on it
            on_cycle.update(path[path.index(cur):])
        for name in path:
            color[name] = 2

    if not on_cycle:
        return spec
    states = {
        name: (DEADLOCK if name in on_cycle else body)
        for name, body in spec.states.items()
    }
    return validate(ThreadSpec(states, spec.root))
