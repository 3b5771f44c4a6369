"""Two-mode thread extraction driven by a counter.

For sequences whose only jumps are #0, extraction can be organized as two
mutually recursive readings per position: a guarded reading that performs
the instruction, and a skipping reading that counts down over instructions
to find a pending landing site.  Composing the resulting thread with a
counter service and hiding the counter traffic reproduces plain extraction
(checked by verify_theorem2).

Skip bookkeeping: entering the skipping mode with counter value c lands on
the c-th next position, counting every position.  A failed test therefore
increments twice (skip exactly the one following instruction); a jump-shift
in the guarded reading increments once.  While skipping, a jump-shift that
is flown over costs nothing (the decrement is restored), but landing
exactly on one re-enters the guarded reading there so the shift run ahead
is re-accumulated onto the counter.
"""

from __future__ import annotations

from typing import Dict, Optional

from .services import Budget, collapse_counter_divergence, compose, counter_new
from .syntax import (
    Halt,
    InstructionSequence,
    Instruction,
    Jump,
    NegTest,
    Plain,
    PosTest,
    ProgramError,
    Shift,
    is_pgajs0,
)
from .threads import (
    DEADLOCK,
    STOP,
    Basic,
    Body,
    Post,
    ThreadSpec,
    abstract_tau,
    bisimilar,
    validate,
)
from .extraction import extract_pgajs

_CLR = Basic("cnt", "clr")
_INC = Basic("cnt", "inc")
_DEC = Basic("cnt", "dec")
_ISZ = Basic("cnt", "isz")


class NotPgajs0Error(ProgramError):
    pass


def extract_alt(s: InstructionSequence) -> ThreadSpec:
    """Build the two-mode thread over cnt actions.  States are named by
    position and mode: g{i} guarded (with a/b/c suffixes for chain steps),
    s{i} skipping (a/b suffixes for its steps), plus a shared `dd` deadlock.
    Finite sequences get one virtual trailing #0 position; skipping past it
    loops back to itself.  Skipping over a jump-shift restores the counter
    after the zero test, so only an exact landing executes the shift."""
    if not is_pgajs0(s):
        raise NotPgajs0Error("only #0 jumps are supported here")
    p = len(s.prefix)
    q = len(s.period)
    finite = q == 0
    total = p + q + (1 if finite else 0)

    def instr(i: int) -> Instruction:
        if finite and i == p + q:
            return Jump(0)
        if i < p:
            return s.prefix[i]
        return s.period[i - p]

    def succ(i: int) -> int:
        if finite:
            return min(i + 1, total - 1)
        return i + 1 if i + 1 < total else p

    states: Dict[str, Body] = {}
    for i in range(total):
        u = instr(i)
        g = f"g{i}"
        nxt = f"g{succ(i)}"
        if isinstance(u, Halt):
            states[g] = STOP
        elif isinstance(u, Shift):
            states[g] = Post(_INC, nxt, nxt)
        elif isinstance(u, Jump):
            states[g] = Post(_ISZ, "dd", f"s{succ(i)}")
        elif isinstance(u, Plain):
            states[g] = Post(_CLR, f"{g}a", f"{g}a")
            states[f"{g}a"] = Post(u.basic, nxt, nxt)
        elif isinstance(u, PosTest):
            states[g] = Post(_CLR, f"{g}a", f"{g}a")
            states[f"{g}a"] = Post(u.basic, nxt, f"{g}b")
            states[f"{g}b"] = Post(_INC, f"{g}c", f"{g}c")
            states[f"{g}c"] = Post(_INC, f"s{succ(i)}", f"s{succ(i)}")
        else:
            assert isinstance(u, NegTest)
            states[g] = Post(_CLR, f"{g}a", f"{g}a")
            states[f"{g}a"] = Post(u.basic, f"{g}b", nxt)
            states[f"{g}b"] = Post(_INC, f"{g}c", f"{g}c")
            states[f"{g}c"] = Post(_INC, f"s{succ(i)}", f"s{succ(i)}")
        states[f"s{i}"] = Post(_DEC, f"s{i}a", f"s{i}a")
        if isinstance(u, Shift):
            # flying over a shift is free: restore the counter and move on
            states[f"s{i}a"] = Post(_ISZ, g, f"s{i}b")
            states[f"s{i}b"] = Post(_INC, f"s{succ(i)}", f"s{succ(i)}")
        else:
            states[f"s{i}a"] = Post(_ISZ, g, f"s{succ(i)}")
    states["dd"] = DEADLOCK
    return validate(ThreadSpec(states, "g0"))


def behaviour_via_counter(
    s: InstructionSequence, budget: Optional[Budget] = None
) -> ThreadSpec:
    """Compose the two-mode thread with a zeroed counter and hide the
    counter traffic.  Pure inc loops (endless jump-shifting) are collapsed
    to deadlock up front so the product stays finite."""
    inner = collapse_counter_divergence(extract_alt(s))
    return abstract_tau(compose(inner, "cnt", counter_new(0), budget))


def verify_theorem2(s: InstructionSequence, budget: Optional[Budget] = None) -> bool:
    """Counter-driven extraction agrees with direct extraction."""
    return bisimilar(extract_pgajs(s), behaviour_via_counter(s, budget))
