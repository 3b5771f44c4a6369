"""Acceptance gate: one test per criterion, each printing a verdict line.

Run with `pytest -v` for the per-criterion pass/fail listing; the printed
PASS lines additionally show under `pytest -s`.
"""

import random
import time
from functools import lru_cache

from pgakit import (
    Basic,
    Branch,
    CounterService,
    DEADLOCK,
    Post,
    STOP,
    TAU,
    ThreadSpec,
    abstract_tau,
    behaviour_via_counter,
    bisimilar,
    build_exec_mechanism,
    collapse_counter_divergence,
    compose,
    corollary1_pipeline,
    counter_new,
    extract,
    extract_alt,
    extract_pgajs,
    normalize_shifts,
    parse_program,
    parse_thread,
    print_program,
    project,
    projections_agree,
    run_exec,
    theorem3_witness,
    transform_to_pgajs0,
    validate,
    verify_theorem2,
)
from pgakit.execmech import Alphabet
from pgakit.corpus import random_program, random_spec, spec_pair

P = parse_program
T = parse_thread

a = Basic("f", "a")
b = Basic("f", "b")


def _report(name, started, limit=None):
    elapsed = time.monotonic() - started
    print(f"PASS {name} ({elapsed:.2f}s)")
    if limit is not None:
        assert elapsed < limit, f"{name} took {elapsed:.1f}s, limit {limit}s"


# --- criterion 1: one concrete instance per algebraic law -------------------

def _axiom_instances():
    from pgakit.syntax import Concat, Instr, Repeat, to_canonical
    from pgakit.syntax import Halt, Plain

    fa, fb = Plain(a), Plain(b)
    checks = []

    # sequence laws: associativity, power collapse, tail absorption, unfold
    checks.append(
        to_canonical(Concat(Concat(Instr(fa), Instr(fb)), Instr(Halt())))
        == to_canonical(Concat(Instr(fa), Concat(Instr(fb), Instr(Halt()))))
    )
    checks.append(P("(f.a; f.b; f.a; f.b)*") == P("(f.a; f.b)*"))
    checks.append(P("(f.a)*; f.b") == P("(f.a)*"))
    checks.append(P("(f.a; f.b)*") == P("f.a; (f.b; f.a)*"))

    # shift laws: boost a jump, vanish before others, all-shift repetition
    checks.append(normalize_shifts(P("~; #2; !")) == P("#3; !; #0"))
    checks.append(normalize_shifts(P("~; f.a")) == P("f.a; #0"))
    checks.append(normalize_shifts(P("(~)*")) == P("(#0)*"))

    # silent steps cannot branch
    checks.append(Post(TAU, "x", "y").else_ == "x")

    # a recursive spec equals its one-step unfolding
    spec = validate(ThreadSpec({"x": Post(a, "x", "x")}, "x"))
    unfolded = validate(
        ThreadSpec({"x0": Post(a, "x", "x"), "x": Post(a, "x", "x")}, "x0")
    )
    checks.append(bisimilar(spec, unfolded))

    # projection laws: depth zero, leaves survive, branches peel one level
    stop_spec = validate(ThreadSpec({"x": STOP}, "x"))
    dead_spec = validate(ThreadSpec({"x": DEADLOCK}, "x"))
    checks.append(project(stop_spec, 0) == DEADLOCK)
    checks.append(project(stop_spec, 4) == STOP)
    checks.append(project(dead_spec, 4) == DEADLOCK)
    ladder = validate(
        ThreadSpec({"x": Post(a, "y", "y"), "y": Post(b, "z", "z"), "z": STOP}, "x")
    )
    checks.append(
        project(ladder, 2)
        == Branch(a, Branch(b, DEADLOCK, DEADLOCK), Branch(b, DEADLOCK, DEADLOCK))
    )

    # composition laws: fixed leaves, silent pass, foreign focus pass,
    # reply-selected branches, blocked wedging
    cnt0 = counter_new(0)
    checks.append(bisimilar(compose(T("x = S"), "cnt", cnt0), T("x = S")))
    checks.append(bisimilar(compose(T("x = D"), "cnt", cnt0), T("x = D")))
    checks.append(
        bisimilar(compose(T("x = tau <y>\ny = S"), "cnt", cnt0), T("x = tau <y>\ny = S"))
    )
    foreign = T("x = <s> g.m <d>\ns = S\nd = D")
    checks.append(bisimilar(compose(foreign, "cnt", cnt0), foreign))
    sel = validate(ThreadSpec({"x": Post(Basic("cnt", "isz"), "s", "d"),
                               "s": STOP, "d": DEADLOCK}, "x"))
    checks.append(bisimilar(abstract_tau(compose(sel, "cnt", counter_new(0))), T("x = S")))
    checks.append(bisimilar(abstract_tau(compose(sel, "cnt", counter_new(2))), T("x = D")))
    blocked = validate(ThreadSpec({"x": Post(Basic("cnt", "foo"), "s", "s"), "s": STOP}, "x"))
    checks.append(bisimilar(compose(blocked, "cnt", cnt0), T("d = D")))

    # hiding laws: fixed leaves, silent prefix dropped, distribution,
    # endless silence is deadlock
    checks.append(bisimilar(abstract_tau(T("x = S")), T("x = S")))
    checks.append(bisimilar(abstract_tau(T("x = D")), T("x = D")))
    checks.append(
        bisimilar(
            abstract_tau(T("x = tau <y>\ny = <z> f.a <z>\nz = S")),
            T("y = <z> f.a <z>\nz = S"),
        )
    )
    dist = T("x = <p> f.a <q>\np = tau <s>\nq = tau <d>\ns = S\nd = D")
    checks.append(bisimilar(abstract_tau(dist), T("x = <s> f.a <d>\ns = S\nd = D")))
    checks.append(bisimilar(abstract_tau(T("x = tau <x>")), T("d = D")))

    return checks


def test_criterion_1_axiom_instances():
    started = time.monotonic()
    results = _axiom_instances()
    assert all(results), [i for i, ok in enumerate(results) if not ok]
    _report("criterion-1 axiom-instances", started, limit=1.0)


# --- criterion 2: jump-free transformation preserves behaviour --------------

def test_criterion_2_transform_property():
    started = time.monotonic()
    rng = random.Random(2024)
    for _ in range(1000):
        p = random_program(rng, max_len=12)
        q = transform_to_pgajs0(p)
        assert bisimilar(extract(p), extract_pgajs(q)), print_program(p)
    _report("criterion-2 jump-expansion 1000 programs", started, limit=60.0)


# --- criterion 3: counter-driven extraction ---------------------------------

@lru_cache(maxsize=1)
def _zero_jump_corpus():
    rng = random.Random(2025)
    return tuple(
        random_program(rng, max_len=16, allow_shift=True, pgajs0=True)
        for _ in range(500)
    )


class _RecordingCounter(CounterService):
    def __init__(self, content, sink):
        object.__setattr__(self, "content", content)
        object.__setattr__(self, "sink", sink)

    def apply(self, method):
        nxt, reply = super().apply(method)
        if nxt.content is not None:
            self.sink.append(nxt.content)
        return _RecordingCounter(nxt.content, self.sink), reply


def test_criterion_3_counter_extraction_property():
    started = time.monotonic()
    for p in _zero_jump_corpus():
        assert verify_theorem2(p), print_program(p)
        seen = []
        inner = collapse_counter_divergence(extract_alt(p))
        compose(inner, "cnt", _RecordingCounter(0, seen))
        bound = len(p.prefix) + len(p.period) + 2
        assert max(seen, default=0) <= bound, print_program(p)
    _report("criterion-3 counter-driven extraction 500 programs", started, limit=120.0)


# --- criterion 4: program-independent execution mechanism -------------------

def test_criterion_4_execution_mechanism():
    started = time.monotonic()
    for p in _zero_jump_corpus():
        assert bisimilar(run_exec(p), extract_pgajs(p)), print_program(p)
    # the mechanism depends on the alphabet alone
    one = build_exec_mechanism(Alphabet.from_sequence(P("f.a; +f.b; !")))
    other = build_exec_mechanism(Alphabet.from_sequence(P("(-f.b; ~; #0; f.a)*")))
    assert one.states == other.states and one.root == other.root
    sizes = set()
    for m in (1, 2, 3):
        basics = [Basic("f", chr(ord("a") + i)) for i in range(m)]
        mech = build_exec_mechanism(Alphabet.from_basics(basics))
        sizes.add(len(mech.states) - 16 * m)
    assert sizes == {16}, sizes
    _report("criterion-4 execution mechanism 500 programs", started, limit=180.0)


# --- criterion 5: compile and run back --------------------------------------

def test_criterion_5_compile_roundtrip():
    started = time.monotonic()
    rng = random.Random(2026)
    for _ in range(200):
        spec = random_spec(rng, max_states=8)
        out = corollary1_pipeline(spec)
        assert bisimilar(extract_pgajs(out), spec)
        assert bisimilar(behaviour_via_counter(out), spec)
    _report("criterion-5 compile roundtrip 200 specs", started, limit=60.0)


# --- criterion 6: pathologies ------------------------------------------------

def test_criterion_6_pathologies():
    started = time.monotonic()
    dead = T("d = D")
    assert bisimilar(extract(P("(#1)*")), dead)
    assert bisimilar(extract_pgajs(P("(~)*")), dead)
    assert bisimilar(extract_pgajs(P("f.a; ~")), extract(P("f.a; #1; #0")))
    assert bisimilar(abstract_tau(T("x = tau <x>")), dead)
    assert bisimilar(extract(P("#5; !")), dead)
    _report("criterion-6 pathologies", started)


# --- criterion 7: equivalence oracle agreement -------------------------------

def test_criterion_7_oracle_agreement():
    started = time.monotonic()
    rng = random.Random(2027)
    for _ in range(300):
        s1, s2 = spec_pair(rng, max_states=6)
        depth = len(s1.states) * len(s2.states) + 1
        assert bisimilar(s1, s2) == projections_agree(s1, s2, depth)
    _report("criterion-7 oracle agreement 300 pairs", started)


# --- criterion 8: stress family ----------------------------------------------

def test_criterion_8_witness_stress():
    started = time.monotonic()
    for n in (1, 2, 3):
        w = theorem3_witness(n)
        p = corollary1_pipeline(w)
        assert bisimilar(extract_pgajs(p), w)
        assert bisimilar(behaviour_via_counter(p), w)
    _report("criterion-8 witness stress n=1..3", started, limit=30.0)
