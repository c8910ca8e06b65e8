"""Endorewrites: loops in the rewrite algebra and their generating sets.

A resolved critical pair yields a loop on its superposition (the two
reductions composed against each other).  Over a completed system the
loops of all overlaps generate every endorewrite up to interchange and
conjugacy; ``express`` finds such a decomposition by eliminating peaks of
a loop's walk, resolving each local branching against the generator
table so that the extracted product replays to the input exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import EMPTY, Rule, Word, word_to_str
from . import twocell
from .engine import LoggedSystem, normal_form, reduce_logged
from .twocell import ChainError, Step, TwoCell
from .completion import CompletionResult, CriticalPair, Overlap, critical_pair, find_overlaps


class UnmatchedDiamond(ValueError):
    """A branching whose overlap is missing from the generator table."""


def is_endorewrite(cell: TwoCell, rules: dict[str, Rule]) -> bool:
    return twocell.validate(cell, rules) is None and twocell.target(cell, rules) == cell.source


def _word_key(sys: LoggedSystem, w: Word):
    """Ascending shortlex key: greater words sort later."""
    if sys.order is not None:
        return len(w), tuple(sys.order.alphabet.rank(x) for x in w)
    return len(w), w


def _loop_key(sys: LoggedSystem, cell: TwoCell):
    """Canonical-choice key: prefer the greatest base word, then least steps."""
    if sys.order is not None:
        ranks = tuple(sys.order.alphabet.rank(x) for x in cell.source)
    else:
        ranks = cell.source
    return (-len(cell.source), ranks), twocell.cell_key(cell)


def _descending_key(sys: LoggedSystem):
    """Sort key under which the shortlex-greatest word is the maximum."""
    if sys.order is not None:
        alphabet = sys.order.alphabet
        return lambda w: (len(w), tuple(-alphabet.rank(x) for x in w))
    return lambda w: (len(w), tuple(-ord(c) for c in "".join(w)))


def _closure_legs(left: Step, right: Step, sys: LoggedSystem) -> tuple[TwoCell, TwoCell]:
    """One-step diamond closure for two disjoint redexes on one word."""
    rules = sys.rule_map
    t_left = twocell.step_target(left, rules)
    t_right = twocell.step_target(right, rules)
    in_l, out_l = twocell.step_io(left, rules)
    in_r, out_r = twocell.step_io(right, rules)
    p_l, p_r = len(left.prefix), len(right.prefix)
    if p_r >= p_l + len(in_l):
        shift = len(out_l) - len(in_l)
        leg_left = Step(t_left[:p_r + shift], right.rule, right.exp, t_left[p_r + shift + len(in_r):])
        leg_right = Step(t_right[:p_l], left.rule, left.exp, t_right[p_l + len(in_l):])
    elif p_l >= p_r + len(in_r):
        shift = len(out_r) - len(in_r)
        leg_left = Step(t_left[:p_r], right.rule, right.exp, t_left[p_r + len(in_r):])
        leg_right = Step(t_right[:p_l + shift], left.rule, left.exp, t_right[p_l + shift + len(in_l):])
    else:
        raise ValueError("redexes are not disjoint")
    return TwoCell(t_left, (leg_left,)), TwoCell(t_right, (leg_right,))


def _pair_legs(cp: CriticalPair, sys: LoggedSystem) -> tuple[TwoCell, TwoCell]:
    """Resolving legs for a critical pair.

    Disjoint redexes close in one step each (the interchange diamond).
    Overlapping redexes resolve on their minimal superposition, the legs
    whiskered back out, so embedded overlaps get whiskered resolutions;
    on the minimal word both sides reduce to the normal form.
    """
    rules = sys.rule_map
    if len(cp.left.steps) == 1 and len(cp.right.steps) == 1:
        s1, s2 = cp.left.steps[0], cp.right.steps[0]
        in1, _ = twocell.step_io(s1, rules)
        in2, _ = twocell.step_io(s2, rules)
        p1, p2 = len(s1.prefix), len(s2.prefix)
        if p1 + len(in1) <= p2 or p2 + len(in2) <= p1:
            return _closure_legs(s1, s2, sys)
        word = cp.left.source
        lo = min(p1, p2)
        hi = max(p1 + len(in1), p2 + len(in2))
        if lo > 0 or hi < len(word):
            x, z = word[:lo], word[hi:]
            inner = CriticalPair(
                TwoCell(word[lo:hi], (Step(s1.prefix[lo:], s1.rule, s1.exp, s1.suffix[:len(s1.suffix) - len(z)]),)),
                TwoCell(word[lo:hi], (Step(s2.prefix[lo:], s2.rule, s2.exp, s2.suffix[:len(s2.suffix) - len(z)]),)),
                cp.origin,
            )
            leg_left, leg_right = _pair_legs(inner, sys)
            return twocell.whisker(x, leg_left, z), twocell.whisker(x, leg_right, z)
    down_left = reduce_logged(twocell.target(cp.left, rules), sys)
    down_right = reduce_logged(twocell.target(cp.right, rules), sys)
    if twocell.target(down_left, rules) != twocell.target(down_right, rules):
        raise ValueError("critical pair does not resolve; the system is incomplete")
    return down_left, down_right


def delta(cp: CriticalPair, sys: LoggedSystem) -> TwoCell:
    """The loop left . leg_left . leg_right^-1 . right^-1, free reduced."""
    rules = sys.rule_map
    leg_left, leg_right = _pair_legs(cp, sys)
    loop = twocell.compose_all(
        [cp.left, leg_left, twocell.invert(leg_right, rules), twocell.invert(cp.right, rules)],
        rules,
    )
    return twocell.free_reduce(loop)


@dataclass
class OriginRecord:
    """Everything known about one overlap placement of the completed system."""

    overlap: Overlap
    pair: CriticalPair
    leg_left: TwoCell
    leg_right: TwoCell
    delta: TwoCell
    gid: str | None = None  # representative generator; None when the loop is trivial
    exp: int = 1            # delta is equivalent to the representative to this power


@dataclass(frozen=True)
class Generator:
    gid: str
    cell: TwoCell
    base_word: Word
    base_element: Word
    origin: Overlap


@dataclass
class GeneratorSet:
    generators: tuple[Generator, ...]
    origin_index: dict = field(repr=False)
    system: LoggedSystem = field(repr=False)

    def by_id(self, gid: str) -> Generator:
        for gen in self.generators:
            if gen.gid == gid:
                return gen
        raise KeyError(gid)


def _origin_key(left_rule: str, right_rule: str, u1: Word, v1: Word, u2: Word, v2: Word):
    return left_rule, right_rule, u1, v1, u2, v2


def _union_system(completed: LoggedSystem, init: LoggedSystem) -> LoggedSystem:
    rules = list(completed.rules)
    provenance = dict(completed.provenance)
    logs = dict(completed.logs)
    have = {r.rid for r in rules}
    for rule in init.rules:
        if rule.rid not in have:
            rules.append(rule)
            provenance[rule.rid] = init.provenance[rule.rid]
            if rule.rid in init.logs:
                logs[rule.rid] = init.logs[rule.rid]
    return LoggedSystem(
        tuple(rules), provenance, logs,
        complete=completed.complete,
        order=completed.order or init.order,
    )


def conjugacy_reduce(cell: TwoCell, sys: LoggedSystem) -> TwoCell:
    """Canonical representative of a loop's conjugacy class.

    Free reduction plus stripping of mutually inverse outer steps (which
    advances the base word) computes the cyclic reduction of the walk;
    conjugate loops always have rotation-equivalent cyclic reductions, so
    picking the rotation based at the greatest word (step sequence as tie
    break) is a true conjugacy invariant.  The pick is then interchange
    normalized; loops that vanish entirely return the identity at the
    normal form of their base.
    """
    rules = sys.rule_map

    def strip(c: TwoCell) -> TwoCell:
        steps = list(c.steps)
        source = c.source
        while len(steps) >= 2 and steps[0] == twocell.invert_step(steps[-1]):
            source = twocell.step_target(steps[0], rules)
            steps = steps[1:-1]
        return TwoCell(source, tuple(steps))

    core = strip(twocell.free_reduce(cell))
    if not core.steps:
        return twocell.identity(normal_form(core.source, sys))
    words = twocell.intermediate_words(core, rules)
    candidates = [
        TwoCell(words[k], core.steps[k:] + core.steps[:k])
        for k in range(len(core.steps))
    ]
    best = min(candidates, key=lambda c: _loop_key(sys, c))
    polished = strip(twocell.interchange_normalize(best, rules))
    if len(polished.steps) < len(best.steps):
        return conjugacy_reduce(polished, sys)
    return polished


def generate(comp: CompletionResult, init: LoggedSystem) -> GeneratorSet:
    """Endorewrite generators from all overlaps of the completed system.

    Loops that normalize to an identity are dropped; duplicates modulo
    interchange normal form, inversion, and conjugacy reduction merge
    into one generator.  Every overlap placement keeps a record pointing
    at its representative, which ``express`` uses to match diamonds.
    """
    if comp.status != "complete":
        raise ValueError("generator extraction needs a completed system")
    sys = _union_system(comp.system, init)
    rules = sys.rule_map

    records: dict = {}
    protos: list[OriginRecord] = []
    for a in sys.rules:
        for b in sys.rules:
            for overlap in find_overlaps(a, b):
                cp = critical_pair(overlap, sys)
                leg_left, leg_right = _pair_legs(cp, sys)
                loop = twocell.free_reduce(twocell.compose_all(
                    [cp.left, leg_left, twocell.invert(leg_right, rules),
                     twocell.invert(cp.right, rules)],
                    rules,
                ))
                rec = OriginRecord(overlap, cp, leg_left, leg_right, loop)
                key = _origin_key(overlap.left_rule, overlap.right_rule,
                                  overlap.u1, overlap.v1, overlap.u2, overlap.v2)
                records[key] = rec
                protos.append(rec)

    seen: dict = {}
    chosen: list[OriginRecord] = []
    rep_of: dict[int, tuple[int, int]] = {}
    for n, rec in enumerate(protos):
        norm = twocell.interchange_normalize(rec.delta, rules)
        if not norm.steps:
            continue  # trivial loop: no generator, the record keeps gid None
        canon = conjugacy_reduce(rec.delta, sys)
        ckey = twocell.cell_key(canon)
        icanon = conjugacy_reduce(twocell.invert(rec.delta, rules), sys)
        ikey = twocell.cell_key(icanon)
        if ckey in seen:
            idx, exp = seen[ckey]
            rep_of[n] = (idx, exp)
        elif ikey in seen:
            idx, exp = seen[ikey]
            rep_of[n] = (idx, -exp)
        else:
            idx = len(chosen)
            chosen.append(rec)
            rep_of[n] = (idx, 1)
            seen[ckey] = (idx, 1)
            if ikey != ckey:
                seen[ikey] = (idx, -1)

    # stable ids: order by base element, then discovery
    base_elements = [normal_form(rec.overlap.superposition, sys) for rec in chosen]
    ordering = sorted(
        range(len(chosen)),
        key=lambda i: (_word_key(sys, base_elements[i]), i),
    )
    gid_of = {idx: f"g{n}" for n, idx in enumerate(ordering, start=1)}
    generators = tuple(
        Generator(
            gid_of[idx],
            chosen[idx].delta,
            chosen[idx].overlap.superposition,
            base_elements[idx],
            chosen[idx].overlap,
        )
        for idx in ordering
    )
    for n, rec in enumerate(protos):
        if n in rep_of:
            idx, exp = rep_of[n]
            rec.gid = gid_of[idx]
            rec.exp = exp
    return GeneratorSet(generators, records, sys)


def base_element(cell: TwoCell, sys: LoggedSystem) -> Word:
    """Normal form of the loop's base word; groups loops per monoid element."""
    return normal_form(cell.source, sys)


# ---------------------------------------------------------------------------
# digraph filling


@dataclass(frozen=True)
class ReductionDigraph:
    vertices: frozenset
    edges: frozenset  # forward-oriented Steps
    base: Word


def digraph_fill(a: TwoCell, b: TwoCell, sys: LoggedSystem) -> tuple[ReductionDigraph, list[TwoCell]]:
    """Fill the digraph of two parallel cells into confluence diamonds.

    Vertices are processed greatest first; at each vertex with two or
    more distinct outgoing reductions, consecutive pairs are resolved to
    normal form and the resolution paths join the digraph.  Returns the
    filled digraph and the diamond loops in processing order.
    """
    rules = sys.rule_map
    if a.source != b.source:
        raise ChainError("cells do not share a source")
    if twocell.target(a, rules) != twocell.target(b, rules):
        raise ChainError("cells do not share a target")
    rule_index = {rule.rid: i for i, rule in enumerate(sys.rules)}
    desc = _descending_key(sys)

    vertices: set[Word] = set()
    edges: set[Step] = set()
    for cell in (a, b):
        vertices.update(twocell.intermediate_words(cell, rules))
        for step in cell.steps:
            edges.add(step if step.exp == 1 else twocell.invert_step(step))

    diamonds: list[TwoCell] = []
    pending = set(vertices)
    processed: set[Word] = set()
    while pending:
        v = max(pending, key=desc)
        pending.remove(v)
        processed.add(v)
        outgoing = sorted(
            (e for e in edges if twocell.step_source(e, rules) == v),
            key=lambda e: (len(e.prefix), rule_index[e.rule]),
        )
        for e1, e2 in zip(outgoing, outgoing[1:]):
            down1 = reduce_logged(twocell.step_target(e1, rules), sys)
            down2 = reduce_logged(twocell.step_target(e2, rules), sys)
            if twocell.target(down1, rules) != twocell.target(down2, rules):
                raise ValueError("branching does not resolve; the system is incomplete")
            dia = twocell.compose_all(
                [TwoCell(v, (e1,)), down1, twocell.invert(down2, rules),
                 twocell.invert(TwoCell(v, (e2,)), rules)],
                rules,
            )
            diamonds.append(twocell.free_reduce(dia))
            for down in (down1, down2):
                words = twocell.intermediate_words(down, rules)
                vertices.update(words)
                edges.update(down.steps)
                for w in words:
                    if w not in processed:
                        pending.add(w)
    base = max(vertices, key=desc)
    return ReductionDigraph(frozenset(vertices), frozenset(edges), base), diamonds


# ---------------------------------------------------------------------------
# expression of loops over the generators


@dataclass(frozen=True)
class Factor:
    gen: str | None       # generator id, None for a trivial (disjoint) diamond
    x: Word
    z: Word
    conjugator: TwoCell   # from the decomposition base to the diamond apex
    exp: int
    cell: TwoCell         # exact contribution, a loop at the base


@dataclass(frozen=True)
class Decomposition:
    base: Word
    factors: tuple[Factor, ...]
    residual: TwoCell


def _match_overlap(v: Word, first: Step, second: Step, gens: GeneratorSet):
    """Locate the origin record for two overlapping redexes on v.

    Strips the shared whiskers down to the minimal superposition and
    rebuilds the placement the way ``find_overlaps`` enumerates it.
    """
    rules = gens.system.rule_map
    l1 = rules[first.rule].lhs
    l2 = rules[second.rule].lhs
    p1, p2 = len(first.prefix), len(second.prefix)
    end = max(p1 + len(l1), p2 + len(l2))
    x, z = v[:p1], v[end:]
    q2 = p2 - p1
    if q2 == 0:
        if len(l1) < len(l2):
            parts = (EMPTY, l2[len(l1):], EMPTY, EMPTY)
        elif len(l1) > len(l2):
            parts = (EMPTY, EMPTY, EMPTY, l1[len(l2):])
        else:
            parts = (EMPTY, EMPTY, EMPTY, EMPTY)
    elif q2 + len(l2) <= len(l1):
        parts = (EMPTY, EMPTY, l1[:q2], l1[q2 + len(l2):])
    else:
        k = len(l1) - q2
        parts = (EMPTY, l2[k:], l1[:q2], EMPTY)
    key = _origin_key(first.rule, second.rule, *parts)
    record = gens.origin_index.get(key)
    if record is None:
        raise UnmatchedDiamond(
            f"no generator origin for rules {first.rule},{second.rule} on {word_to_str(v)}"
        )
    return record, x, z


def _resolve_branching(v: Word, down_a: Step, down_b: Step, gens: GeneratorSet):
    """Diamond data for two distinct forward steps from v.

    Returns (dia, leg_a, leg_b, meta, swapped): dia is the loop
    first . leg_first . leg_second^-1 . second^-1 at v in sorted step
    order, legs are rematched to the (down_a, down_b) order, and meta is
    (record-or-None, x, z, representative exponent).
    """
    sys = gens.system
    rules = sys.rule_map
    rule_index = {rule.rid: i for i, rule in enumerate(sys.rules)}
    first, second = sorted(
        (down_a, down_b), key=lambda s: (len(s.prefix), rule_index[s.rule])
    )
    swapped = (first, second) != (down_a, down_b)
    l1 = rules[first.rule].lhs
    l2 = rules[second.rule].lhs
    p1, p2 = len(first.prefix), len(second.prefix)
    if p2 >= p1 + len(l1):
        leg_first, leg_second = _closure_legs(first, second, sys)
        dia = twocell.compose_all(
            [TwoCell(v, (first,)), leg_first,
             twocell.invert(leg_second, rules), twocell.invert(TwoCell(v, (second,)), rules)],
            rules,
        )
        meta = (None, v[:p1], v[p2 + len(l2):], 1)
    else:
        record, x, z = _match_overlap(v, first, second, gens)
        leg_first = twocell.whisker(x, record.leg_left, z)
        leg_second = twocell.whisker(x, record.leg_right, z)
        dia = twocell.whisker(x, record.delta, z)
        meta = (record, x, z, record.exp)
    if swapped:
        return dia, leg_second, leg_first, meta, True
    return dia, leg_first, leg_second, meta, False


def _emit_factor(factors: list, conj: TwoCell, dia: TwoCell, meta, orientation: int,
                 gens: GeneratorSet):
    """Record one extracted diamond as a loop at the decomposition base."""
    record, x, z, rep_exp = meta
    sys = gens.system
    rules = sys.rule_map
    body = dia if orientation == 1 else twocell.invert(dia, rules)
    cell = twocell.free_reduce(twocell.compose_all(
        [conj, body, twocell.invert(conj, rules)], rules,
    ))
    conjugator = twocell.free_reduce(conj)
    gid = None if record is None else record.gid
    if gid is not None:
        rep = gens.by_id(gid)
        if rep.base_word != record.overlap.superposition:
            # conjugacy-merged representative living on another base word:
            # bridge through the common normal form so the whiskered
            # reference stays replayable
            down_here = reduce_logged(twocell.target(conjugator, rules), sys)
            down_there = reduce_logged(x + rep.base_word + z, sys)
            conjugator = twocell.free_reduce(twocell.compose_all(
                [conjugator, down_here, twocell.invert(down_there, rules)], rules,
            ))
    factors.append(Factor(
        gen=gid,
        x=x,
        z=z,
        conjugator=conjugator,
        exp=orientation * rep_exp,
        cell=cell,
    ))


def _decompose(loop: TwoCell, conj: TwoCell, factors: list, gens: GeneratorSet):
    """Peak elimination, iteratively: rewrite the loop away, extracting diamonds.

    Invariant: input ~ (emitted factors) . conj . loop . conj^-1 in the
    free sesquigroupoid, so the factor product replays to the input.
    """
    sys = gens.system
    rules = sys.rule_map
    stack: list[tuple] = [("loop", twocell.free_reduce(loop), conj)]
    while stack:
        task = stack.pop()
        if task[0] == "emit":
            _, econj, dia, meta, orientation = task
            _emit_factor(factors, econj, dia, meta, orientation, gens)
            continue
        _, loop, conj = task
        while loop.steps:
            steps = loop.steps
            peak = next(
                (i for i in range(len(steps) - 1)
                 if steps[i].exp == -1 and steps[i + 1].exp == 1),
                None,
            )
            if peak is not None:
                i = peak
                apex = twocell.target(TwoCell(loop.source, steps[:i + 1]), rules)
                down_a = twocell.invert_step(steps[i])
                down_b = steps[i + 1]
                dia, leg_a, leg_b, meta, swapped = _resolve_branching(apex, down_a, down_b, gens)
                up_path = TwoCell(loop.source, steps[:i + 1])
                _emit_factor(
                    factors,
                    twocell.free_reduce(twocell.compose(conj, up_path, rules)),
                    dia,
                    meta,
                    1 if swapped else -1,
                    gens,
                )
                middle = twocell.compose(leg_a, twocell.invert(leg_b, rules), rules)
                loop = twocell.free_reduce(
                    TwoCell(loop.source, steps[:i] + middle.steps + steps[i + 2:])
                )
                continue
            # no internal peak: descending then ascending around the base
            m = next((i for i, s in enumerate(steps) if s.exp == -1), len(steps))
            assert 0 < m < len(steps), "a nonempty monotone loop cannot close"
            s1 = steps[0]
            s2 = twocell.invert_step(steps[-1])
            if s1 == s2:
                head = TwoCell(loop.source, (s1,))
                conj = twocell.free_reduce(twocell.compose(conj, head, rules))
                loop = twocell.free_reduce(
                    TwoCell(twocell.target(head, rules), steps[1:-1])
                )
                continue
            dia, leg_1, leg_2, meta, swapped = _resolve_branching(loop.source, s1, s2, gens)
            rest = TwoCell(
                twocell.step_target(s1, rules),
                steps[1:-1]
                + leg_2.steps
                + tuple(twocell.invert_step(s) for s in reversed(leg_1.steps)),
            )
            inner_conj = twocell.free_reduce(
                twocell.compose(conj, TwoCell(loop.source, (s1,)), rules)
            )
            stack.append(("emit", conj, dia, meta, -1 if swapped else 1))
            stack.append(("loop", twocell.free_reduce(rest), inner_conj))
            break


def express(cell: TwoCell, gens: GeneratorSet, sys: LoggedSystem | None = None) -> Decomposition:
    """Decompose an endorewrite into conjugated, whiskered generator loops.

    The factor cells multiply out, at the base word, to a cell that free
    reduces back to the input; the residual records the leftover loop
    (the identity whenever extraction succeeded).
    """
    sys = sys or gens.system
    rules = sys.rule_map
    bad = twocell.validate(cell, rules)
    if bad is not None:
        raise ChainError("input does not replay", index=bad)
    if twocell.target(cell, rules) != cell.source:
        raise ChainError("input is not an endorewrite")
    base = cell.source
    factors: list[Factor] = []
    _decompose(cell, twocell.identity(base), factors, gens)
    recomposed = twocell.identity(base)
    for factor in factors:
        recomposed = twocell.compose(recomposed, factor.cell, rules)
    residual = twocell.free_reduce(
        twocell.compose(twocell.invert(recomposed, rules), cell, rules)
    )
    return Decomposition(base, tuple(factors), residual)


# ---------------------------------------------------------------------------
# serialization


def generator_set_to_json(gens: GeneratorSet) -> dict:
    return {
        "generators": [
            {
                "id": gen.gid,
                "base_word": word_to_str(gen.base_word),
                "base_element": word_to_str(gen.base_element),
                "origin": {
                    "left_rule": gen.origin.left_rule,
                    "right_rule": gen.origin.right_rule,
                    "case": gen.origin.case,
                    "u1": word_to_str(gen.origin.u1),
                    "v1": word_to_str(gen.origin.v1),
                    "u2": word_to_str(gen.origin.u2),
                    "v2": word_to_str(gen.origin.v2),
                },
                "cell": twocell.cell_to_json(gen.cell),
            }
            for gen in gens.generators
        ],
    }


def decomposition_to_json(dec: Decomposition) -> dict:
    return {
        "base": word_to_str(dec.base),
        "factors": [
            {
                "gen": factor.gen if factor.gen is not None else "trivial",
                "x": word_to_str(factor.x),
                "z": word_to_str(factor.z),
                "conjugator": twocell.cell_to_json(factor.conjugator),
                "exp": factor.exp,
            }
            for factor in dec.factors
        ],
        "residual": twocell.cell_to_json(dec.residual),
    }


def dumps_generators(gens: GeneratorSet) -> str:
    return json.dumps(generator_set_to_json(gens), indent=2, sort_keys=True)


def dumps_decomposition(dec: Decomposition) -> str:
    return json.dumps(decomposition_to_json(dec), indent=2, sort_keys=True)
