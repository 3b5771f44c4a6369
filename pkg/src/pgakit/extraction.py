"""Turning instruction sequences into finite-state threads.

Each position of the canonical sequence becomes at most one thread state.
Jumps are not states: they are resolved by walking position to position
until a non-jump is reached, with a dead end (offset zero, past the end of
a finite sequence, or a revisited position) meaning deadlock.
"""

from __future__ import annotations

from typing import Dict, Optional

from .syntax import (
    Halt,
    InstructionSequence,
    Instruction,
    Jump,
    NegTest,
    Plain,
    PosTest,
    ShiftPresentError,
    contains_shift,
    normalize_shifts,
)
from .threads import (
    DEADLOCK,
    STOP,
    Body,
    Post,
    ThreadSpec,
    relabel,
    validate,
)

_DEAD = -1


def _positions(s: InstructionSequence) -> int:
    return len(s.prefix) + len(s.period)


def _normalize_pos(s: InstructionSequence, j: int) -> int:
    """Map an unfolded index onto its canonical position, or _DEAD when a
    finite sequence has no instruction there."""
    p = len(s.prefix)
    if j < p:
        return j
    q = len(s.period)
    if q:
        return p + (j - p) % q
    return _DEAD


def _instruction(s: InstructionSequence, pos: int) -> Instruction:
    p = len(s.prefix)
    if pos < p:
        return s.prefix[pos]
    return s.period[pos - p]


def _resolve(s: InstructionSequence, j: int) -> int:
    """Follow the jump chain starting at unfolded index j until it reaches a
    non-jump position (returned) or provably deadlocks (_DEAD): jump offset
    zero, running off a finite sequence, or revisiting a jump position."""
    seen = set()
    while True:
        pos = _normalize_pos(s, j)
        if pos == _DEAD:
            return _DEAD
        u = _instruction(s, pos)
        if not isinstance(u, Jump):
            return pos
        if pos in seen or u.offset == 0:
            return _DEAD
        seen.add(pos)
        j = pos + u.offset


def extract(s: InstructionSequence) -> ThreadSpec:
    """Thread of a Shift-free sequence: one state per non-jump position plus
    a shared deadlock state, pruned to what the start position reaches."""
    if contains_shift(s):
        raise ShiftPresentError("extraction requires a Shift-free sequence")

    def target(j: int) -> str:
        r = _resolve(s, j)
        return "dead" if r == _DEAD else f"p{r}"

    states: Dict[str, Body] = {}
    for pos in range(_positions(s)):
        u = _instruction(s, pos)
        if isinstance(u, Jump):
            continue
        name = f"p{pos}"
        if isinstance(u, Halt):
            states[name] = STOP
        elif isinstance(u, Plain):
            nxt = target(pos + 1)
            states[name] = Post(u.basic, nxt, nxt)
        elif isinstance(u, PosTest):
            states[name] = Post(u.basic, target(pos + 1), target(pos + 2))
        else:
            assert isinstance(u, NegTest)
            states[name] = Post(u.basic, target(pos + 2), target(pos + 1))
    states["dead"] = DEADLOCK
    root = target(0)
    return relabel(validate(ThreadSpec(states, root)))


def extract_pgajs(s: InstructionSequence) -> ThreadSpec:
    """Thread of any sequence, shifts included: normalize shifts away first."""
    return extract(normalize_shifts(s))


def _jump_collapse(s: InstructionSequence) -> InstructionSequence:
    """Replace every jump by its fully resolved single jump: offset to the
    final landing non-jump position, or zero when the chain deadlocks.
    Wrap-around landings inside the period get the smallest positive offset."""
    p = len(s.prefix)
    q = len(s.period)

    def collapse(pos: int) -> Instruction:
        u = _instruction(s, pos)
        if not isinstance(u, Jump):
            return u
        r = _resolve(s, pos)
        if r == _DEAD:
            return Jump(0)
        if r > pos:
            return Jump(r - pos)
        return Jump(r - pos + q)

    prefix = tuple(collapse(i) for i in range(p))
    period = tuple(collapse(p + i) for i in range(q))
    return InstructionSequence(prefix, period)


def structurally_congruent(a: InstructionSequence, b: InstructionSequence) -> bool:
    """Whether two Shift-free sequences are equal after collapsing all jump
    chains to single jumps (dead chains to jump zero)."""
    for s in (a, b):
        if contains_shift(s):
            raise ShiftPresentError(
                "structural congruence requires Shift-free sequences"
            )
    return _jump_collapse(a) == _jump_collapse(b)
