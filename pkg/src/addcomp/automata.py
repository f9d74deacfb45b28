"""Deterministic finite automata with output (DFAO), read most-significant digit first."""

from __future__ import annotations

import re
from importlib import resources
from typing import Callable, Sequence

from .errors import DigitOutOfRange, ParseError
from .numeration import PositionalSystem

_TRANS = re.compile(r"^(\S+)\s+--(\d+)-->\s+(\S+)$")
_OUT = re.compile(r"^(\S+)\s+(-?\d+)$")


class Dfao:
    """States are named; ``delta[i][d]`` is the index of the successor of state ``i`` on digit ``d``."""

    def __init__(self, states: Sequence[str], initial: int, delta: Sequence[Sequence[int]],
                 outputs: Sequence[int], max_digit: int, comments: Sequence[str] = ()):
        if len(delta) != len(states) or len(outputs) != len(states):
            raise ValueError("delta/outputs must have one entry per state")
        for i, row in enumerate(delta):
            if len(row) != max_digit + 1:
                raise ValueError(f"state {states[i]} lacks transitions for some digits")
            for j in row:
                if not 0 <= j < len(states):
                    raise ValueError(f"bad target {j}")
        self.states = list(states)
        self.initial = initial
        self.delta = [list(r) for r in delta]
        self.outputs = list(outputs)
        self.max_digit = max_digit
        self.comments = list(comments)

    def __len__(self):
        return len(self.states)

    def __repr__(self):
        return f"Dfao({len(self.states)} states, digits 0..{self.max_digit})"

    def __eq__(self, other):
        return (isinstance(other, Dfao) and self.states == other.states
                and self.initial == other.initial and self.delta == other.delta
                and self.outputs == other.outputs and self.max_digit == other.max_digit)

    # ------------------------------------------------------------ text format

    @classmethod
    def parse(cls, text: str) -> "Dfao":
        comments: list[str] = []
        lines = []
        header = True
        for lineno, raw in enumerate(text.splitlines(), 1):
            stripped = raw.strip()
            if header and stripped.startswith("#"):
                comments.append(raw)
                continue
            header = False
            body = stripped.split("#", 1)[0].strip()
            if body:
                lines.append((lineno, body))
        if len(lines) < 2:
            raise ParseError("DFAO needs a digits line and an initial line")
        (ln, first), (ln2, second) = lines[0], lines[1]
        m = re.fullmatch(r"digits:\s*0\.\.(\d+)", first)
        if not m:
            raise ParseError(f"line {ln}: expected 'digits: 0..D'")
        max_digit = int(m.group(1))
        m = re.fullmatch(r"initial:\s*(\S+)", second)
        if not m:
            raise ParseError(f"line {ln2}: expected 'initial: STATE'")
        initial_name = m.group(1)

        names: list[str] = []
        outputs: dict[str, int] = {}
        trans: dict[tuple[str, int], str] = {}
        for ln, body in lines[2:]:
            if (t := _TRANS.match(body)):
                src, d, dst = t.group(1), int(t.group(2)), t.group(3)
                if d > max_digit:
                    raise ParseError(f"line {ln}: digit {d} outside 0..{max_digit}")
                if (src, d) in trans:
                    raise ParseError(f"line {ln}: duplicate transition {src} on {d}")
                trans[(src, d)] = dst
            elif (o := _OUT.match(body)):
                if o.group(1) in outputs:
                    raise ParseError(f"line {ln}: state {o.group(1)} declared twice")
                names.append(o.group(1))
                outputs[o.group(1)] = int(o.group(2))
            else:
                raise ParseError(f"line {ln}: cannot parse {body!r}")
        index = {n: i for i, n in enumerate(names)}
        if initial_name not in index:
            raise ParseError(f"initial state {initial_name} has no output declaration")
        delta = []
        for n in names:
            row = []
            for d in range(max_digit + 1):
                if (n, d) not in trans:
                    raise ParseError(f"state {n} has no transition on {d}")
                if trans[(n, d)] not in index:
                    raise ParseError(f"transition target {trans[(n, d)]} undeclared")
                row.append(index[trans[(n, d)]])
            delta.append(row)
        extra = {s for s, _ in trans} - set(index)
        if extra:
            raise ParseError(f"transitions from undeclared states {sorted(extra)}")
        return cls(names, index[initial_name], delta, [outputs[n] for n in names],
                   max_digit, comments)

    def serialize(self) -> str:
        out = list(self.comments)
        out.append(f"digits: 0..{self.max_digit}")
        out.append(f"initial: {self.states[self.initial]}")
        for name, o in zip(self.states, self.outputs):
            out.append(f"{name} {o}")
        for i, name in enumerate(self.states):
            for d, j in enumerate(self.delta[i]):
                out.append(f"{name} --{d}--> {self.states[j]}")
        return "\n".join(out) + "\n"

    # ------------------------------------------------------------ evaluation

    def run(self, digits) -> int:
        q = self.initial
        for d in _digits(digits):
            if not 0 <= d <= self.max_digit:
                raise DigitOutOfRange(f"digit {d} outside 0..{self.max_digit}")
            q = self.delta[q][d]
        return self.outputs[q]

    def sequence_term(self, system: PositionalSystem, n: int) -> int:
        return self.run(system.rep_digits(n))

    def leading_zero_invariant(self) -> bool:
        return self.delta[self.initial][0] == self.initial


def _digits(digits) -> list[int]:
    if isinstance(digits, str):
        return [int(c) for c in digits]
    return list(digits)


def run(d: Dfao, digits) -> int:
    return d.run(digits)


def sequence_term(d: Dfao, system: PositionalSystem, n: int) -> int:
    return d.sequence_term(system, n)


def leading_zero_invariant(d: Dfao) -> bool:
    return d.leading_zero_invariant()


def compare_with_oracle(d: Dfao, system: PositionalSystem,
                        oracle: Callable[[int], int] | Sequence[int], n_max: int) -> int | None:
    """Smallest ``n <= n_max`` where the automaton disagrees with ``oracle``, else None."""
    get = oracle.__getitem__ if isinstance(oracle, Sequence) else oracle
    for n in range(n_max + 1):
        if d.sequence_term(system, n) != get(n):
            return n
    return None


FIXTURES = {
    "collinear-example": "collinear_example.dfao",
    "ternary-tm-additive": "ternary_tm_additive.dfao",
    "rudin-shapiro": "rudin_shapiro.dfao",
}


def fixture_text(name: str) -> str:
    fname = FIXTURES.get(name, name)
    return resources.files("addcomp.fixtures").joinpath(fname).read_text()


def load_fixture(name: str) -> Dfao:
    return Dfao.parse(fixture_text(name))
