"""Seeded random programs and thread specs for property testing.

Distribution notes: instruction kinds are drawn uniformly from the kinds
admitted by the flags; jump offsets are uniform over [0, max_len + 2] so
out-of-range and zero jumps both occur; with probability one half the
generated list is split into prefix + repeating period, otherwise it stays
finite.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence, Tuple

from .syntax import (
    HALT,
    SHIFT,
    InstructionSequence,
    Jump,
    NegTest,
    Plain,
    PosTest,
)
from .threads import (
    DEADLOCK,
    STOP,
    TAU,
    Basic,
    Post,
    ThreadSpec,
    validate,
)

DEFAULT_BASICS: Tuple[Basic, ...] = (Basic("f", "a"), Basic("f", "b"))


def random_program(
    rng: random.Random,
    max_len: int = 12,
    basics: Sequence[Basic] = DEFAULT_BASICS,
    jump_bound: Optional[int] = None,
    allow_shift: bool = False,
    pgajs0: bool = False,
    periodic_prob: float = 0.5,
) -> InstructionSequence:
    if jump_bound is None:
        jump_bound = max_len + 2
    kinds = ["plain", "pos", "neg", "jump", "halt"]
    if allow_shift or pgajs0:
        kinds.append("shift")
    length = rng.randint(1, max_len)
    units = []
    for _ in range(length):
        kind = rng.choice(kinds)
        if kind == "plain":
            units.append(Plain(rng.choice(list(basics))))
        elif kind == "pos":
            units.append(PosTest(rng.choice(list(basics))))
        elif kind == "neg":
            units.append(NegTest(rng.choice(list(basics))))
        elif kind == "jump":
            units.append(Jump(0 if pgajs0 else rng.randint(0, jump_bound)))
        elif kind == "halt":
            units.append(HALT)
        else:
            units.append(SHIFT)
    if rng.random() < periodic_prob:
        cut = rng.randint(0, length - 1)
        return InstructionSequence(tuple(units[:cut]), tuple(units[cut:]))
    return InstructionSequence(tuple(units), ())


def random_spec(
    rng: random.Random,
    max_states: int = 8,
    basics: Sequence[Basic] = DEFAULT_BASICS,
    allow_tau: bool = False,
    tau_prob: float = 0.2,
) -> ThreadSpec:
    n = rng.randint(1, max_states)
    names = [f"s{i}" for i in range(n)]
    states = {}
    for name in names:
        roll = rng.random()
        if roll < 0.15:
            states[name] = STOP
        elif roll < 0.3:
            states[name] = DEADLOCK
        else:
            if allow_tau and rng.random() < tau_prob:
                states[name] = Post(TAU, rng.choice(names), rng.choice(names))
            else:
                states[name] = Post(
                    rng.choice(list(basics)),
                    rng.choice(names),
                    rng.choice(names),
                )
    return validate(ThreadSpec(states, names[0]))


def spec_pair(
    rng: random.Random,
    max_states: int = 8,
    basics: Sequence[Basic] = DEFAULT_BASICS,
) -> Tuple[ThreadSpec, ThreadSpec]:
    """A pair that is bisimilar by construction about half the time: either
    an unfolded clone of the first spec, or an independent draw."""
    a = random_spec(rng, max_states, basics)
    if rng.random() < 0.5:
        b = _unfold_clone(rng, a)
    else:
        b = random_spec(rng, max_states, basics)
    return a, b


def _unfold_clone(rng: random.Random, spec: ThreadSpec) -> ThreadSpec:
    """Copy the spec and duplicate one state under a fresh name, randomly
    rerouting references between original and duplicate.  The result is
    bisimilar to the input by construction."""
    target = rng.choice(list(spec.states))
    dup = f"{target}_dup"
    states = {}
    for name, body in spec.states.items():
        states[name] = body
    states[dup] = spec.states[target]

    def reroute(name: str) -> str:
        if name == target and rng.random() < 0.5:
            return dup
        return name

    rerouted = {}
    for name, body in states.items():
        if isinstance(body, Post):
            rerouted[name] = Post(body.action, reroute(body.then), reroute(body.else_))
        else:
            rerouted[name] = body
    root = reroute(spec.root)
    return validate(ThreadSpec(rerouted, root))
