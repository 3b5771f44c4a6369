"""A program-independent execution mechanism.

One fixed finite-state thread per instruction alphabet drives any program
over that alphabet through two services: a program service (holding the
remaining instruction sequence, with head-equality queries and a drop) and
a counter (tracking pending skips).  Hiding the service traffic leaves the
program's own behaviour, equal to direct extraction (run_exec vs
extract_pgajs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .altsem import NotPgajs0Error
from .services import (
    Budget,
    Reply,
    Service,
    collapse_counter_divergence,
    compose,
    counter_new,
)
from .syntax import (
    HALT,
    SHIFT,
    Halt,
    InstructionSequence,
    Instruction,
    Jump,
    NegTest,
    Plain,
    PosTest,
    ProgramError,
    ProgramSyntaxError,
    RESERVED_FOCI,
    Shift,
    basics_of,
    drop_head,
    head,
    instruction_text,
    is_pgajs0,
    parse_instruction,
    print_program,
)
from .threads import (
    DEADLOCK,
    STOP,
    Basic,
    Body,
    Post,
    ThreadSpec,
    abstract_tau,
    validate,
)


class AlphabetError(ProgramError):
    pass


class AlphabetMismatchError(AlphabetError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite instruction set the mechanism dispatches over.  Must
    contain halt, #0, the jump-shift, and all three forms of every admitted
    basic instruction; only #0 jumps are allowed."""

    instructions: Tuple[Instruction, ...]

    def __post_init__(self) -> None:
        seen = set()
        basics = {"plain": set(), "pos": set(), "neg": set()}
        for u in self.instructions:
            if u in seen:
                raise AlphabetError(f"duplicate instruction {instruction_text(u)}")
            seen.add(u)
            if isinstance(u, Jump) and u.offset != 0:
                raise AlphabetError("alphabet jumps must have offset zero")
            if isinstance(u, Plain):
                basics["plain"].add(u.basic)
            elif isinstance(u, PosTest):
                basics["pos"].add(u.basic)
            elif isinstance(u, NegTest):
                basics["neg"].add(u.basic)
        for kind in ("plain", "pos", "neg"):
            for b in basics[kind]:
                if b.focus in RESERVED_FOCI:
                    raise AlphabetError(f"focus {b.focus!r} is reserved")
        if basics["plain"] != basics["pos"] or basics["plain"] != basics["neg"]:
            raise AlphabetError(
                "each admitted basic needs its plain and both test forms"
            )
        for required in (HALT, Jump(0), SHIFT):
            if required not in seen:
                raise AlphabetError(
                    f"alphabet must contain {instruction_text(required)}"
                )

    @property
    def basics(self) -> frozenset:
        return frozenset(
            u.basic for u in self.instructions if isinstance(u, Plain)
        )

    def __contains__(self, u: Instruction) -> bool:
        return u in self.instructions

    @staticmethod
    def from_basics(basics) -> "Alphabet":
        ordered = sorted(set(basics), key=lambda b: (b.focus, b.method))
        instructions = []
        for b in ordered:
            instructions.extend([Plain(b), PosTest(b), NegTest(b)])
        instructions.extend([Jump(0), HALT, SHIFT])
        return Alphabet(tuple(instructions))

    @staticmethod
    def from_sequence(s: InstructionSequence) -> "Alphabet":
        return Alphabet.from_basics(basics_of(s))


@dataclass(frozen=True)
class PgsService(Service):
    """Service view of a stored instruction sequence.  `hdeq:u` answers
    whether the head instruction is exactly u (no state change); `drop`
    removes the head (False once empty).  An alphabet, when given, bounds
    the u accepted by hdeq; anything else wedges the service."""

    sequence: Optional[InstructionSequence]
    alphabet: Optional[Alphabet] = field(default=None, compare=False)
    undefined: bool = False

    def apply(self, method: str) -> Tuple["PgsService", Reply]:
        if self.undefined:
            return self, Reply.BLOCKED
        if method == "drop":
            if self.sequence is None:
                return self, Reply.FALSE
            return (
                PgsService(drop_head(self.sequence), self.alphabet),
                Reply.TRUE,
            )
        if method.startswith("hdeq:"):
            try:
                u = parse_instruction(method[len("hdeq:"):])
            except ProgramSyntaxError:
                return PgsService(None, self.alphabet, True), Reply.BLOCKED
            if self.alphabet is not None and u not in self.alphabet:
                return PgsService(None, self.alphabet, True), Reply.BLOCKED
            if self.sequence is None:
                return self, Reply.FALSE
            got = head(self.sequence) == u
            return self, Reply.TRUE if got else Reply.FALSE
        return PgsService(None, self.alphabet, True), Reply.BLOCKED

    def key(self) -> str:
        if self.undefined:
            return "pgs:undef"
        if self.sequence is None:
            return "pgs:eps"
        return "pgs:" + print_program(self.sequence)


def pgs_new(
    p: InstructionSequence, alphabet: Optional[Alphabet] = None
) -> PgsService:
    return PgsService(p, alphabet)


def build_exec_mechanism(alphabet: Alphabet) -> ThreadSpec:
    """The dispatch thread: query the head against each alphabet entry in
    order and enact the matched instruction, mirroring the two-mode
    extraction equations; an exhausted program behaves like a trailing #0.
    State count is 16m + 16 for m admitted basics, independent of any
    program."""
    states: Dict[str, Body] = {}
    units = alphabet.instructions

    def hdeq(u: Instruction) -> Basic:
        return Basic("pgs", "hdeq:" + instruction_text(u))

    drop = Basic("pgs", "drop")
    clr = Basic("cnt", "clr")
    inc = Basic("cnt", "inc")
    dec = Basic("cnt", "dec")
    isz = Basic("cnt", "isz")

    # guarded-mode dispatch chain
    for i, u in enumerate(units):
        nxt = f"q{i + 1}" if i + 1 < len(units) else "gend"
        states[f"q{i}"] = Post(hdeq(u), f"e{i}", nxt)
    states["gend"] = Post(isz, "dead", "sq")
    states["dead"] = DEADLOCK

    # skipping-mode loop: count down at every head, land by re-dispatching
    # the same head, and restore the counter when flying over a shift
    states["sq"] = Post(dec, "sisz", "sisz")
    states["sisz"] = Post(isz, "q0", "schk")
    states["schk"] = Post(hdeq(SHIFT), "sshr", "sdrop")
    states["sshr"] = Post(inc, "sshd", "sshd")
    states["sshd"] = Post(drop, "sq", "sq")
    states["sdrop"] = Post(drop, "sq", "sq")

    # per-instruction enactments
    for i, u in enumerate(units):
        e = f"e{i}"
        if isinstance(u, Halt):
            states[e] = STOP
        elif isinstance(u, Shift):
            states[e] = Post(drop, f"{e}b", f"{e}b")
            states[f"{e}b"] = Post(inc, "q0", "q0")
        elif isinstance(u, Jump):
            states[e] = Post(isz, "dead", f"{e}b")
            states[f"{e}b"] = Post(drop, "sq", "sq")
        elif isinstance(u, Plain):
            states[e] = Post(drop, f"{e}b", f"{e}b")
            states[f"{e}b"] = Post(clr, f"{e}c", f"{e}c")
            states[f"{e}c"] = Post(u.basic, "q0", "q0")
        elif isinstance(u, PosTest):
            states[e] = Post(drop, f"{e}b", f"{e}b")
            states[f"{e}b"] = Post(clr, f"{e}c", f"{e}c")
            states[f"{e}c"] = Post(u.basic, "q0", f"{e}d")
            states[f"{e}d"] = Post(inc, f"{e}f", f"{e}f")
            states[f"{e}f"] = Post(inc, "sq", "sq")
        else:
            assert isinstance(u, NegTest)
            states[e] = Post(drop, f"{e}b", f"{e}b")
            states[f"{e}b"] = Post(clr, f"{e}c", f"{e}c")
            states[f"{e}c"] = Post(u.basic, f"{e}d", "q0")
            states[f"{e}d"] = Post(inc, f"{e}f", f"{e}f")
            states[f"{e}f"] = Post(inc, "sq", "sq")
    return validate(ThreadSpec(states, "q0"))


def run_exec(
    p: InstructionSequence,
    budget: Optional[Budget] = None,
    alphabet: Optional[Alphabet] = None,
) -> ThreadSpec:
    """Execute a #0-jumps-only program through the mechanism: compose with
    the program service, collapse guaranteed counter divergences, compose
    with a zeroed counter, and hide all service traffic."""
    if not is_pgajs0(p):
        raise NotPgajs0Error("execution requires a program with only #0 jumps")
    if alphabet is None:
        alphabet = Alphabet.from_sequence(p)
    else:
        for u in p.prefix + p.period:
            if u not in alphabet:
                raise AlphabetMismatchError(
                    f"instruction {instruction_text(u)} not in the alphabet"
                )
    mech = build_exec_mechanism(alphabet)
    inner = compose(mech, "pgs", pgs_new(p, alphabet), budget)
    inner = collapse_counter_divergence(inner)
    return abstract_tau(compose(inner, "cnt", counter_new(0), budget))


def theorem3_witness(n: int) -> ThreadSpec:
    """Family of threads whose compiled programs exercise long jump chains:
    a ladder of n+1 test states over action f.a descending to Stop, where
    the i-th rung's else-branch enters a cycle doing f.b i times then f.c."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = Basic("f", "a")
    b = Basic("f", "b")
    c = Basic("f", "c")
    states: Dict[str, Body] = {}
    for i in range(n + 1):
        states[f"T{i}"] = Post(a, f"T{i + 1}", f"Tp{i + 1}_0")
    states[f"T{n + 1}"] = STOP
    for j in range(1, n + 2):
        for k in range(j):
            states[f"Tp{j}_{k}"] = Post(b, f"Tp{j}_{k + 1}", f"Tp{j}_{k + 1}")
        states[f"Tp{j}_{j}"] = Post(c, f"Tp{j}_0", f"Tp{j}_0")
    return validate(ThreadSpec(states, "T0"))
