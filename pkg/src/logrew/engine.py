"""Logged reduction: find redexes, rewrite to normal form, emit witnesses.

The reduction strategy is fixed to leftmost position, then lowest rule
index, so logs are reproducible.  Derived rules carry an unexpanded log;
``expand_log`` rewrites any cell so it references initial rules only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .core import OrderSpec, Presentation, Rule, Word, orient, word_to_str
from . import twocell
from .twocell import Step, TwoCell


class Verdict(enum.Enum):
    NOT_EQUAL = "not-equal"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LoggedSystem:
    """Rules plus, for derived ones, the cell witnessing lhs -> rhs."""

    rules: tuple[Rule, ...]
    provenance: dict = field(default_factory=dict)
    logs: dict = field(default_factory=dict)
    complete: bool = False
    order: OrderSpec | None = None
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for rule in self.rules:
            self.provenance.setdefault(rule.rid, "initial")
        object.__setattr__(self, "_index", {r.rid: r for r in self.rules})

    @property
    def rule_map(self) -> dict[str, Rule]:
        return self._index

    def rule(self, rid: str) -> Rule:
        return self._index[rid]

    def initial_rules(self) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if self.provenance[r.rid] == "initial")

    def with_rule(self, rule: Rule, log: TwoCell) -> "LoggedSystem":
        return LoggedSystem(
            self.rules + (rule,),
            {**self.provenance, rule.rid: "derived"},
            {**self.logs, rule.rid: log},
            complete=False,
            order=self.order,
        )

    def as_complete(self) -> "LoggedSystem":
        return replace(self, complete=True)


def system_from_presentation(p: Presentation) -> LoggedSystem:
    return LoggedSystem(orient(p), order=p.order)


def find_redexes(w: Word, sys: LoggedSystem) -> list[tuple[int, str]]:
    """All (position, rule id) with the rule's lhs at that position."""
    hits = []
    for pos in range(len(w) + 1):
        for rule in sys.rules:
            k = len(rule.lhs)
            if k and w[pos:pos + k] == rule.lhs:
                hits.append((pos, rule.rid))
    return hits


def apply_step(w: Word, pos: int, rid: str, exp: int, sys: LoggedSystem) -> tuple[Word, Step]:
    """Apply one rule at a position, returning the new word and its log step."""
    rule = sys.rule(rid)
    inw, outw = (rule.lhs, rule.rhs) if exp == 1 else (rule.rhs, rule.lhs)
    if w[pos:pos + len(inw)] != inw:
        raise ValueError(
            f"no {rid} redex at position {pos} of {word_to_str(w)}"
        )
    step = Step(w[:pos], rid, exp, w[pos + len(inw):])
    return step.prefix + outw + step.suffix, step


def reduce_logged(w: Word, sys: LoggedSystem) -> TwoCell:
    """Reduce to an irreducible word, logging every application."""
    steps = []
    current = w
    while True:
        redexes = find_redexes(current, sys)
        if not redexes:
            return TwoCell(w, tuple(steps))
        pos, rid = redexes[0]
        current, step = apply_step(current, pos, rid, 1, sys)
        steps.append(step)


def normal_form(w: Word, sys: LoggedSystem) -> Word:
    current = w
    while True:
        redexes = find_redexes(current, sys)
        if not redexes:
            return current
        pos, rid = redexes[0]
        rule = sys.rule(rid)
        current = current[:pos] + rule.rhs + current[pos + len(rule.lhs):]


def prove(w1: Word, w2: Word, sys: LoggedSystem) -> TwoCell | Verdict:
    """A cell w1 -> w2 when their normal forms agree, else a verdict.

    NOT_EQUAL is only claimed for systems flagged complete; otherwise
    disagreeing normal forms yield UNKNOWN.
    """
    down1 = reduce_logged(w1, sys)
    down2 = reduce_logged(w2, sys)
    rules = sys.rule_map
    if twocell.target(down1, rules) == twocell.target(down2, rules):
        return twocell.compose(down1, twocell.invert(down2, rules), rules)
    return Verdict.NOT_EQUAL if sys.complete else Verdict.UNKNOWN


def expand_log(cell: TwoCell, sys: LoggedSystem) -> TwoCell:
    """Replace derived-rule steps by their stored logs until only initial rules remain."""
    expanded: dict[str, TwoCell] = {}

    def rule_log(rid: str) -> TwoCell:
        if rid not in expanded:
            expanded[rid] = _expand(sys.logs[rid])
        return expanded[rid]

    def _expand(c: TwoCell) -> TwoCell:
        steps: list[Step] = []
        for step in c.steps:
            if sys.provenance.get(step.rule, "initial") == "initial":
                steps.append(step)
                continue
            inner = rule_log(step.rule)
            if step.exp == -1:
                inner = twocell.invert(inner, sys.rule_map)
            steps.extend(twocell.whisker(step.prefix, inner, step.suffix).steps)
        return TwoCell(c.source, tuple(steps))

    return _expand(cell)
