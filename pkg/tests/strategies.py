"""Shared hypothesis strategies for programs and thread specs."""

from hypothesis import strategies as st

from pgakit import (
    Basic,
    DEADLOCK,
    Halt,
    InstructionSequence,
    Jump,
    NegTest,
    Plain,
    PosTest,
    Post,
    STOP,
    Shift,
    ThreadSpec,
    validate,
)

BASICS = (Basic("f", "a"), Basic("f", "b"))


def basics():
    return st.sampled_from(BASICS)


def instructions(max_jump=14, with_shift=False, only_zero_jump=False):
    jump = st.just(0) if only_zero_jump else st.integers(0, max_jump)
    kinds = [
        basics().map(Plain),
        basics().map(PosTest),
        basics().map(NegTest),
        jump.map(Jump),
        st.just(Halt()),
    ]
    if with_shift:
        kinds.append(st.just(Shift()))
    return st.one_of(kinds)


@st.composite
def programs(draw, max_len=12, with_shift=False, only_zero_jump=False):
    instr = instructions(with_shift=with_shift, only_zero_jump=only_zero_jump)
    units = draw(st.lists(instr, min_size=1, max_size=max_len))
    if draw(st.booleans()):
        return InstructionSequence(tuple(units), ())
    cut = draw(st.integers(0, len(units) - 1))
    return InstructionSequence(tuple(units[:cut]), tuple(units[cut:]))


@st.composite
def specs(draw, max_states=6):
    n = draw(st.integers(1, max_states))
    names = [f"n{i}" for i in range(n)]
    states = {}
    for name in names:
        kind = draw(st.integers(0, 9))
        if kind == 0:
            states[name] = STOP
        elif kind == 1:
            states[name] = DEADLOCK
        else:
            a = draw(basics())
            then = draw(st.sampled_from(names))
            els = draw(st.sampled_from(names))
            states[name] = Post(a, then, els)
    return validate(ThreadSpec(states, names[0]))
