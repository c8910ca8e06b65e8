"""Shared oracles and random-walk generators for the test suite.

The oracles are deliberately naive: exhaustive reduction-graph search,
union-find congruence closure, brute-force overlap scans.  Tests compare
the library against these, never against itself.
"""

from itertools import product

from logrew.core import Word
from logrew.engine import LoggedSystem, find_redexes, reduce_logged
from logrew.twocell import Step, TwoCell
import logrew.twocell as tc


def words_over(letters, max_len):
    for n in range(max_len + 1):
        yield from (tuple(w) for w in product(letters, repeat=n))


def one_step_reducts(w: Word, sys: LoggedSystem):
    """Every word reachable in one forward rule application."""
    out = []
    for pos, rid in find_redexes(w, sys):
        rule = sys.rule(rid)
        out.append(w[:pos] + rule.rhs + w[pos + len(rule.lhs):])
    return out


def all_normal_forms(w: Word, sys: LoggedSystem, cache=None) -> frozenset:
    """Exhaustive reduction-graph search: every irreducible word reachable."""
    if cache is None:
        cache = {}
    if w in cache:
        return cache[w]
    nexts = one_step_reducts(w, sys)
    if not nexts:
        result = frozenset([w])
    else:
        result = frozenset()
        cache[w] = result  # cycle guard; reduction is acyclic anyway
        result = frozenset().union(*(all_normal_forms(n, sys, cache) for n in nexts))
    cache[w] = result
    return result


def congruence_classes(letters, relations, max_len, slack=3):
    """Union-find closure of the rewrite graph on words up to max_len.

    Derivations between short words may pass through longer ones, so the
    closure runs on a padded universe; callers compare within max_len.
    """
    universe = list(words_over(letters, max_len + slack))
    parent = {w: w for w in universe}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for w in universe:
        for lhs, rhs in relations:
            k = len(lhs)
            for pos in range(len(w) - k + 1):
                if w[pos:pos + k] == lhs:
                    other = w[:pos] + rhs + w[pos + len(lhs):]
                    if len(other) <= max_len + slack:
                        union(w, other)
    return {w: find(w) for w in universe}


def brute_force_overlaps(a, b, letters):
    """All (superposition, p1, p2) where both rules fire with meeting regions.

    Scans every word up to the combined lhs length; the identical
    self-placement of one rule is excluded, disjoint regions are not
    overlaps, and the word must be exactly covered by the two redexes.
    """
    hits = set()
    l1, l2 = a.lhs, b.lhs
    for w in words_over(letters, len(l1) + len(l2)):
        for p1 in range(len(w) - len(l1) + 1):
            if w[p1:p1 + len(l1)] != l1:
                continue
            for p2 in range(len(w) - len(l2) + 1):
                if w[p2:p2 + len(l2)] != l2:
                    continue
                if a.rid == b.rid and p1 == p2:
                    continue
                lo = min(p1, p2)
                hi = max(p1 + len(l1), p2 + len(l2))
                if lo != 0 or hi != len(w):
                    continue  # not the minimal superposition
                if p1 + len(l1) <= p2 or p2 + len(l2) <= p1:
                    continue  # disjoint regions
                hits.add((w, p1, p2))
    return hits


def random_cell(rng, sys: LoggedSystem, source: Word, n_steps: int) -> TwoCell:
    """Random valid cell: forward or backward rule applications."""
    steps = []
    w = source
    for _ in range(n_steps):
        options = [(pos, rid, 1) for pos, rid in find_redexes(w, sys)]
        for rule in sys.rules:
            k = len(rule.rhs)
            for pos in range(len(w) - k + 1):
                if w[pos:pos + k] == rule.rhs:
                    options.append((pos, rule.rid, -1))
        if not options:
            break
        pos, rid, exp = rng.choice(options)
        rule = sys.rule(rid)
        inw, outw = (rule.lhs, rule.rhs) if exp == 1 else (rule.rhs, rule.lhs)
        steps.append(Step(w[:pos], rid, exp, w[pos + len(inw):]))
        w = w[:pos] + outw + w[pos + len(inw):]
    return TwoCell(source, tuple(steps))


def random_loop(rng, sys: LoggedSystem, source: Word, n_steps: int) -> TwoCell:
    """Random endorewrite at source: wander, then return via normal forms."""
    rules = sys.rule_map
    out = random_cell(rng, sys, source, n_steps)
    back = tc.compose(
        reduce_logged(tc.target(out, rules), sys),
        tc.invert(reduce_logged(source, sys), rules),
        rules,
    )
    return tc.compose(out, back, rules)


def random_reduction(rng, sys: LoggedSystem, source: Word) -> TwoCell:
    """A maximal reduction path choosing redexes at random."""
    steps = []
    w = source
    while True:
        redexes = find_redexes(w, sys)
        if not redexes:
            return TwoCell(source, tuple(steps))
        pos, rid = rng.choice(redexes)
        rule = sys.rule(rid)
        steps.append(Step(w[:pos], rid, 1, w[pos + len(rule.lhs):]))
        w = w[:pos] + rule.rhs + w[pos + len(rule.lhs):]


def random_word(rng, letters, max_len, min_len=0) -> Word:
    return tuple(rng.choice(letters) for _ in range(rng.randint(min_len, max_len)))


def signed_factor_sum(dec) -> dict:
    total = {}
    for factor in dec.factors:
        for rid, n in tc.abelianize(factor.cell).items():
            total[rid] = total.get(rid, 0) + n
    return {rid: n for rid, n in sorted(total.items()) if n}
