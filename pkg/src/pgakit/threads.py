"""Finite-state threads as linear recursive specifications.

A thread is a rooted map from state names to bodies.  A body either stops,
deadlocks, or performs one action and branches on the boolean reply.  The
silent action tau ignores the reply, so tau bodies carry a single successor
(enforced structurally by the Post constructor).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Mapping, Union


class ThreadError(Exception):
    pass


class ThreadSyntaxError(ThreadError):
    pass


class DanglingStateError(ThreadError):
    pass


@dataclass(frozen=True)
class Tau:
    def __str__(self) -> str:
        return "tau"


TAU = Tau()


@dataclass(frozen=True)
class Basic:
    """A focus.method pair, used both as a thread action and as the payload
    of basic program instructions."""

    focus: str
    method: str

    def __str__(self) -> str:
        return f"{self.focus}.{self.method}"


Action = Union[Tau, Basic]


@dataclass(frozen=True)
class Deadlock:
    pass


@dataclass(frozen=True)
class Stop:
    pass


DEADLOCK = Deadlock()
STOP = Stop()


@dataclass(frozen=True)
class Post:
    """Perform an action, then continue as `then` on a True reply and as
    `else_` on False.  A tau action never branches: else_ is forced to then."""

    action: Action
    then: str
    else_: str

    def __post_init__(self) -> None:
        if isinstance(self.action, Tau):
            object.__setattr__(self, "else_", self.then)


Body = Union[Deadlock, Stop, Post]


@dataclass(frozen=True)
class Branch:
    """Node of a finite projection tree.  Leaves reuse Deadlock and Stop."""

    action: Action
    then: "FiniteThread"
    else_: "FiniteThread"

    def __post_init__(self) -> None:
        if isinstance(self.action, Tau):
            object.__setattr__(self, "else_", self.then)


FiniteThread = Union[Deadlock, Stop, Branch]


@dataclass(frozen=True)
class ThreadSpec:
    states: Mapping[str, Body]
    root: str


def validate(spec: ThreadSpec) -> ThreadSpec:
    """Check that the root and every referenced state exist, then drop the
    states unreachable from the root.  Original ordering is preserved."""
    if spec.root not in spec.states:
        raise DanglingStateError(f"root state {spec.root!r} is not defined")
    for name, body in spec.states.items():
        if isinstance(body, Post):
            for target in (body.then, body.else_):
                if target not in spec.states:
                    raise DanglingStateError(
                        f"state {name!r} refers to undefined state {target!r}"
                    )
    reachable = {spec.root}
    queue = [spec.root]
    while queue:
        body = spec.states[queue.pop()]
        if isinstance(body, Post):
            for target in (body.then, body.else_):
                if target not in reachable:
                    reachable.add(target)
                    queue.append(target)
    states = {n: b for n, b in spec.states.items() if n in reachable}
    return ThreadSpec(states, spec.root)


def residual_count(spec: ThreadSpec) -> int:
    return len(validate(spec).states)


def relabel(spec: ThreadSpec, prefix: str = "X") -> ThreadSpec:
    """Rename states to prefix0, prefix1, ... in breadth-first discovery
    order from the root.  Deterministic, so printed output is reproducible."""
    spec = validate(spec)
    names: Dict[str, str] = {spec.root: f"{prefix}0"}
    queue = [spec.root]
    while queue:
        body = spec.states[queue.pop(0)]
        if isinstance(body, Post):
            for target in (body.then, body.else_):
                if target not in names:
                    names[target] = f"{prefix}{len(names)}"
                    queue.append(target)
    states: Dict[str, Body] = {}
    for old, new in names.items():
        body = spec.states[old]
        if isinstance(body, Post):
            body = Post(body.action, names[body.then], names[body.else_])
        states[new] = body
    return ThreadSpec(states, f"{prefix}0")


def actions_of(spec: ThreadSpec) -> set:
    return {
        body.action
        for body in spec.states.values()
        if isinstance(body, Post)
    }


# === projection ===


def project(spec: ThreadSpec, depth: int, state: str | None = None) -> FiniteThread:
    """Approximate the behaviour from `state` (default: root) up to `depth`
    actions.  Depth 0 is deadlock; deeper levels copy the body shape and
    project both branches one level lower."""
    if depth < 0:
        raise ValueError("projection depth must be >= 0")
    spec = validate(spec)
    memo: Dict[tuple, FiniteThread] = {}

    def go(name: str, n: int) -> FiniteThread:
        if n == 0:
            return DEADLOCK
        key = (name, n)
        got = memo.get(key)
        if got is not None:
            return got
        body = spec.states[name]
        if isinstance(body, Post):
            result: FiniteThread = Branch(
                body.action, go(body.then, n - 1), go(body.else_, n - 1)
            )
        else:
            result = body
        memo[key] = result
        return result

    return go(state if state is not None else spec.root, depth)


def projections_agree(a: ThreadSpec, b: ThreadSpec, depth: int) -> bool:
    """Whether the depth-n projections of the two roots coincide for every
    n <= depth.  Checking the largest depth suffices: projecting a deeper
    approximation yields the shallower one."""
    a = validate(a)
    b = validate(b)
    memo: Dict[tuple, bool] = {}

    def agree(sa: str, sb: str, n: int) -> bool:
        if n == 0:
            return True
        key = (sa, sb, n)
        got = memo.get(key)
        if got is not None:
            return got
        ba = a.states[sa]
        bb = b.states[sb]
        if isinstance(ba, Post) and isinstance(bb, Post):
            result = (
                ba.action == bb.action
                and agree(ba.then, bb.then, n - 1)
                and agree(ba.else_, bb.else_, n - 1)
            )
        else:
            result = type(ba) is type(bb)
        memo[key] = result
        return result

    return agree(a.root, b.root, depth)


# === bisimilarity ===


def bisimilar(a: ThreadSpec, b: ThreadSpec) -> bool:
    """Partition refinement over the disjoint union of both state sets.
    Blocks split on body kind, action, and the blocks of both successors,
    until stable; the roots are bisimilar iff they share a block."""
    a = validate(a)
    b = validate(b)
    bodies: Dict[tuple, tuple] = {}
    for tag, spec in (("a", a), ("b", b)):
        for name, body in spec.states.items():
            bodies[(tag, name)] = (tag, body)
    block = dict.fromkeys(bodies, 0)
    nblocks = 1
    while True:
        sigs: Dict[tuple, int] = {}
        new: Dict[tuple, int] = {}
        for key, (tag, body) in bodies.items():
            if isinstance(body, Post):
                sig = (
                    block[key],
                    "post",
                    body.action,
                    block[(tag, body.then)],
                    block[(tag, body.else_)],
                )
            elif isinstance(body, Stop):
                sig = (block[key], "stop")
            else:
                sig = (block[key], "dead")
            idx = sigs.get(sig)
            if idx is None:
                idx = len(sigs)
                sigs[sig] = idx
            new[key] = idx
        if len(sigs) == nblocks:
            return new[("a", a.root)] == new[("b", b.root)]
        block = new
        nblocks = len(sigs)


# === tau abstraction ===


def abstract_tau(spec: ThreadSpec) -> ThreadSpec:
    """Remove tau steps by chasing each state through its tau chain to the
    first non-tau body.  A chain that revisits a state performs tau forever,
    which is indistinguishable from deadlock."""
    spec = validate(spec)

    def resolve(name: str) -> Body:
        seen = set()
        cur = name
        while True:
            if cur in seen:
                return DEADLOCK
            seen.add(cur)
            body = spec.states[cur]
            if isinstance(body, Post) and isinstance(body.action, Tau):
                cur = body.then
            else:
                return body

    states = {name: resolve(name) for name in spec.states}
    return validate(ThreadSpec(states, spec.root))


# === text format ===

_LINE_RE = re.compile(r"^([A-Za-z_]\w*)\s*=\s*(.+?)\s*$")
_POST_RE = re.compile(r"^<([A-Za-z_]\w*)>\s+(\S+)\s+<([A-Za-z_]\w*)>$")
_TAU_RE = re.compile(r"^tau\s+<([A-Za-z_]\w*)>$")
_ACTION_RE = re.compile(r"^([A-Za-z_]\w*)\.(\S+)$")
# comment = # at line start or after whitespace; a bare # inside an action
# token (e.g. method hdeq:#0) is part of the token
_COMMENT_RE = re.compile(r"(^|\s)#.*$")


def parse_thread(text: str) -> ThreadSpec:
    """Parse the one-state-per-line format.  The first state named is the
    root.  `#` at line start or after whitespace begins a comment."""
    states: Dict[str, Body] = {}
    root = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT_RE.sub("", raw).strip()
        if not line:
            continue
        m = _LINE_RE.match(line)
        if m is None:
            raise ThreadSyntaxError(f"line {lineno}: cannot parse {line!r}")
        name, rhs = m.group(1), m.group(2)
        if name in states:
            raise ThreadSyntaxError(f"line {lineno}: duplicate state {name!r}")
        if rhs == "S":
            body: Body = STOP
        elif rhs == "D":
            body = DEADLOCK
        elif (mt := _TAU_RE.match(rhs)) is not None:
            body = Post(TAU, mt.group(1), mt.group(1))
        elif (mp := _POST_RE.match(rhs)) is not None:
            ma = _ACTION_RE.match(mp.group(2))
            if ma is None:
                raise ThreadSyntaxError(
                    f"line {lineno}: bad action {mp.group(2)!r}"
                )
            body = Post(Basic(ma.group(1), ma.group(2)), mp.group(1), mp.group(3))
        else:
            raise ThreadSyntaxError(f"line {lineno}: cannot parse body {rhs!r}")
        states[name] = body
        if root is None:
            root = name
    if root is None:
        raise ThreadSyntaxError("no states defined")
    spec = ThreadSpec(states, root)
    for name, body in states.items():
        if isinstance(body, Post):
            for target in (body.then, body.else_):
                if target not in states:
                    raise DanglingStateError(
                        f"state {name!r} refers to undefined state {target!r}"
                    )
    return spec


def print_thread(spec: ThreadSpec) -> str:
    """Render in the parse_thread format, root state first."""
    names = [spec.root] + [n for n in spec.states if n != spec.root]
    lines = []
    for name in names:
        body = spec.states[name]
        if isinstance(body, Stop):
            lines.append(f"{name} = S")
        elif isinstance(body, Deadlock):
            lines.append(f"{name} = D")
        elif isinstance(body.action, Tau):
            lines.append(f"{name} = tau <{body.then}>")
        else:
            lines.append(f"{name} = <{body.then}> {body.action} <{body.else_}>")
    return "\n".join(lines)


def _gvquote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(spec: ThreadSpec, graph_name: str = "thread") -> str:
    """GraphViz rendering: Stop states are double circles, Deadlock states
    squares, everything else circles; edges carry the action and branch."""
    out = [f"digraph {graph_name} {{"]
    for name, body in spec.states.items():
        if isinstance(body, Stop):
            shape = "doublecircle"
        elif isinstance(body, Deadlock):
            shape = "square"
        else:
            shape = "circle"
        out.append(f"  {_gvquote(name)} [shape={shape}];")
    for name, body in spec.states.items():
        if not isinstance(body, Post):
            continue
        if isinstance(body.action, Tau):
            out.append(f"  {_gvquote(name)} -> {_gvquote(body.then)} [label=\"tau\"];")
        else:
            out.append(
                f"  {_gvquote(name)} -> {_gvquote(body.then)}"
                f" [label=\"{body.action}:+\"];"
            )
            out.append(
                f"  {_gvquote(name)} -> {_gvquote(body.else_)}"
                f" [label=\"{body.action}:-\"];"
            )
    out.append("}")
    return "\n".join(out)
