"""Deterministic finite automata over vertex colours."""
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Mapping, Tuple

from core.arena import ValidationReport
from errors import UnknownColorError

State = str


@dataclass(frozen=True)
class Dfa:
    states: Tuple[State, ...]
    alphabet: Tuple[str, ...]
    initial: State
    accepting: FrozenSet[State]
    delta: Mapping[Tuple[State, str], State]

    @cached_property
    def state_index(self):
        return {q: i for i, q in enumerate(self.states)}

    @property
    def size(self):
        return len(self.states)

    def step(self, state, color):
        if color not in self.alphabet:
            raise UnknownColorError(f"unknown color {color!r}")
        return self.delta[(state, color)]

    def accepts(self, word):
        return dfa_run(self, word) in self.accepting

    def completed(self, sink):
        """Route every missing transition to ``sink``, adding it as a rejecting state"""
        states = self.states if sink in self.states else self.states + (sink,)
        delta = dict(self.delta)
        for q in states:
            for color in self.alphabet:
                delta.setdefault((q, color), sink)
        return Dfa(states, self.alphabet, self.initial, self.accepting, delta)


def validate_dfa(dfa, alphabet=None):
    report = ValidationReport("dfa")
    alphabet = tuple(alphabet) if alphabet is not None else dfa.alphabet
    known = set(dfa.states)

    if not dfa.states:
        report.add("empty state set")
    seen = set()
    for q in dfa.states:
        if q in seen:
            report.add(f"duplicate state {q}")
        seen.add(q)
    if dfa.initial not in known:
        report.add(f"initial state {dfa.initial} is not a state")
    for q in sorted(set(dfa.accepting) - known):
        report.add(f"accepting state {q} is not a state")
    if dfa.initial in dfa.accepting:
        report.add("empty word accepted")

    for color in alphabet:
        if color not in dfa.alphabet:
            report.add(f"color {color} missing from the automaton alphabet")
    for (q, color), target in dfa.delta.items():
        if q not in known or target not in known:
            report.add(f"transition {q} --{color}--> {target} uses an unknown state")
        if color not in dfa.alphabet:
            report.add(f"transition {q} --{color}--> {target} reads an unknown color")

    missing = [(q, color) for q in dfa.states for color in alphabet if (q, color) not in dfa.delta]
    if missing:
        shown = ", ".join(f"δ({q}, {color})" for q, color in missing[:5])
        more = f" and {len(missing) - 5} more" if len(missing) > 5 else ""
        report.add(f"partial transition function: {shown}{more} undefined")
    return report


def dfa_run(dfa, word):
    """δ*(word); the empty word yields the initial state"""
    state = dfa.initial
    for color in word:
        state = dfa.step(state, color)
    return state
