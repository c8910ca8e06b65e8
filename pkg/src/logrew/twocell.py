"""Two-cells: logged rewrite sequences with groupoid and whiskering algebra.

A step applies one rule inside a context, ``prefix . rule^exp . suffix``.
A two-cell is a source word plus a chain of steps; each step must stand on
the word produced by the previous one.  Cells are kept as explicit step
sequences; equality up to the interchange law is approximated by a
deterministic normalization, never by a quotient representation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Rule, Word, word_from_str, word_to_str


class ChainError(ValueError):
    """A step sequence that does not replay, or mismatched endpoints."""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message if index is None else f"{message} (step {index})")


@dataclass(frozen=True)
class Step:
    prefix: Word
    rule: str
    exp: int
    suffix: Word


@dataclass(frozen=True)
class TwoCell:
    source: Word
    steps: tuple[Step, ...]


def identity(w: Word) -> TwoCell:
    return TwoCell(w, ())


def step_io(step: Step, rules: dict[str, Rule]) -> tuple[Word, Word]:
    """Consumed and produced factor of a step (lhs/rhs swapped by exponent)."""
    rule = rules[step.rule]
    if step.exp == 1:
        return rule.lhs, rule.rhs
    if step.exp == -1:
        return rule.rhs, rule.lhs
    raise ValueError(f"step exponent must be +1 or -1, got {step.exp}")


def step_source(step: Step, rules: dict[str, Rule]) -> Word:
    inw, _ = step_io(step, rules)
    return step.prefix + inw + step.suffix


def step_target(step: Step, rules: dict[str, Rule]) -> Word:
    _, outw = step_io(step, rules)
    return step.prefix + outw + step.suffix


def invert_step(step: Step) -> Step:
    return Step(step.prefix, step.rule, -step.exp, step.suffix)


def target(cell: TwoCell, rules: dict[str, Rule]) -> Word:
    """Replay all steps from the source; raises ChainError if a step misaligns."""
    word = cell.source
    for i, step in enumerate(cell.steps):
        try:
            expected = step_source(step, rules)
        except KeyError:
            raise ChainError(f"unknown rule {step.rule!r}", index=i) from None
        if word != expected:
            raise ChainError(
                f"step expects {word_to_str(expected)} but stands on {word_to_str(word)}",
                index=i,
            )
        word = step_target(step, rules)
    return word


def validate(cell: TwoCell, rules: dict[str, Rule]) -> int | None:
    """Index of the first failing step, or None when the cell replays."""
    try:
        target(cell, rules)
    except ChainError as err:
        return err.index if err.index is not None else 0
    return None


def intermediate_words(cell: TwoCell, rules: dict[str, Rule]) -> list[Word]:
    """All words visited, source first; length is len(steps) + 1."""
    words = [cell.source]
    for step in cell.steps:
        words.append(step_target(step, rules))
    return words


def compose(a: TwoCell, b: TwoCell, rules: dict[str, Rule]) -> TwoCell:
    if target(a, rules) != b.source:
        raise ChainError(
            f"cannot compose: target {word_to_str(target(a, rules))} "
            f"!= source {word_to_str(b.source)}"
        )
    return TwoCell(a.source, a.steps + b.steps)


def compose_all(cells: list[TwoCell], rules: dict[str, Rule]) -> TwoCell:
    if not cells:
        raise ValueError("compose_all needs at least one cell")
    out = cells[0]
    for cell in cells[1:]:
        out = compose(out, cell, rules)
    return out


def invert(cell: TwoCell, rules: dict[str, Rule]) -> TwoCell:
    return TwoCell(
        target(cell, rules),
        tuple(invert_step(s) for s in reversed(cell.steps)),
    )


def whisker(u: Word, cell: TwoCell, v: Word) -> TwoCell:
    return TwoCell(
        u + cell.source + v,
        tuple(Step(u + s.prefix, s.rule, s.exp, s.suffix + v) for s in cell.steps),
    )


def horizontal_compose(a: TwoCell, b: TwoCell, rules: dict[str, Rule]) -> TwoCell:
    """Representative of [a] o [b]: a on the left word, then b on the right."""
    return compose(whisker((), a, b.source), whisker(target(a, rules), b, ()), rules)


def free_reduce(cell: TwoCell) -> TwoCell:
    """Cancel adjacent step pairs that differ only in exponent sign."""
    stack: list[Step] = []
    for step in cell.steps:
        if stack and stack[-1] == invert_step(step):
            stack.pop()
        else:
            stack.append(step)
    return TwoCell(cell.source, tuple(stack))


def _swap_adjacent(word: Word, first: Step, second: Step, rules: dict[str, Rule]) -> tuple[Step, Step] | None:
    """Swap two independent adjacent steps so the leftmost region acts first.

    ``word`` is the word the first step stands on.  Returns None when the
    regions interact or are already in left-to-right order.
    """
    in1, out1 = step_io(first, rules)
    in2, _ = step_io(second, rules)
    p1 = len(first.prefix)
    p2 = len(second.prefix)
    left_of = p2 + len(in2) <= p1
    right_of = p2 >= p1 + len(out1)
    if not left_of or right_of:
        return None
    # second's redex is untouched by first, so it exists in `word` at p2
    new_first = Step(word[:p2], second.rule, second.exp, word[p2 + len(in2):])
    middle = step_target(new_first, rules)
    shift = p1 + len(step_io(new_first, rules)[1]) - len(in2)
    new_second = Step(middle[:shift], first.rule, first.exp, middle[shift + len(in1):])
    return new_first, new_second


def interchange_normalize(cell: TwoCell, rules: dict[str, Rule]) -> TwoCell:
    """Deterministic representative of (a sound fragment of) the interchange class.

    Bubble passes swap adjacent steps acting on disjoint regions until the
    leftmost region always comes first, with free reduction interleaved.
    Endpoints and rule counts are preserved.
    """
    cell = free_reduce(cell)
    while True:
        steps = list(cell.steps)
        words = intermediate_words(cell, rules)
        swapped = False
        for i in range(len(steps) - 1):
            pair = _swap_adjacent(words[i], steps[i], steps[i + 1], rules)
            if pair is not None:
                steps[i], steps[i + 1] = pair
                words[i + 1] = step_target(steps[i], rules)
                swapped = True
        reduced = free_reduce(TwoCell(cell.source, tuple(steps)))
        if not swapped and reduced == cell:
            return cell
        cell = reduced


def cells_equal_mod_I(a: TwoCell, b: TwoCell, rules: dict[str, Rule]) -> bool:
    """True when normalization proves the cells interchange-equal.

    False only means unknown; the interchange word problem is undecidable,
    so inequality is never claimed.
    """
    return interchange_normalize(a, rules) == interchange_normalize(b, rules)


def abelianize(cell: TwoCell) -> dict[str, int]:
    """Signed rule-use counts, forgetting contexts and step order."""
    counts: dict[str, int] = {}
    for step in cell.steps:
        counts[step.rule] = counts.get(step.rule, 0) + step.exp
    return {rid: n for rid, n in sorted(counts.items()) if n != 0}


def cell_key(cell: TwoCell):
    """Hashable identity of a cell, for dedup tables."""
    return cell.source, tuple((s.prefix, s.rule, s.exp, s.suffix) for s in cell.steps)


def cell_to_json(cell: TwoCell) -> dict:
    return {
        "source": word_to_str(cell.source),
        "steps": [
            {
                "prefix": word_to_str(s.prefix),
                "rule": s.rule,
                "exp": s.exp,
                "suffix": word_to_str(s.suffix),
            }
            for s in cell.steps
        ],
    }


def cell_from_json(data: dict) -> TwoCell:
    steps = []
    for s in data.get("steps", ()):
        exp = int(s["exp"])
        if exp not in (1, -1):
            raise ValueError(f"step exponent must be 1 or -1, got {exp}")
        steps.append(Step(
            word_from_str(s["prefix"]),
            str(s["rule"]),
            exp,
            word_from_str(s["suffix"]),
        ))
    return TwoCell(word_from_str(data["source"]), tuple(steps))
