"""Small NFA toolkit over the four-letter alphabet {X, N, S, R}.

States are integers 0..n-1 with a single initial state.  Epsilon moves are
labelled with the empty string.  The operations here are the usual ones:
union, concatenation, plus, product, subset construction, complement and
minimization, plus bounded language enumeration for test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

ALPHABET = ("X", "N", "S", "R")
EPS = ""


@dataclass(frozen=True)
class Nfa:
    n_states: int
    initial: int
    accepting: frozenset[int]
    transitions: frozenset[tuple[int, str, int]]

    def __init__(self, n_states, initial, accepting, transitions):
        transitions = frozenset(transitions)
        accepting = frozenset(accepting)
        for (p, lab, q) in transitions:
            if not (0 <= p < n_states and 0 <= q < n_states):
                raise ValueError("transition endpoint out of range")
            if lab != EPS and lab not in ALPHABET:
                raise ValueError(f"bad label {lab!r}")
        object.__setattr__(self, "n_states", int(n_states))
        object.__setattr__(self, "initial", int(initial))
        object.__setattr__(self, "accepting", accepting)
        object.__setattr__(self, "transitions", transitions)

    # -- basic queries -----------------------------------------------------

    def _delta(self):
        d: dict[tuple[int, str], set[int]] = {}
        for (p, lab, q) in self.transitions:
            d.setdefault((p, lab), set()).add(q)
        return d

    def eps_closure(self, states: Iterable[int], delta=None) -> frozenset[int]:
        delta = delta or self._delta()
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in delta.get((p, EPS), ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def accepts(self, word: str) -> bool:
        delta = self._delta()
        cur = self.eps_closure({self.initial}, delta)
        for ch in word:
            nxt = set()
            for p in cur:
                nxt |= delta.get((p, ch), set())
            if not nxt:
                return False
            cur = self.eps_closure(nxt, delta)
        return bool(cur & self.accepting)

    def is_empty(self) -> bool:
        delta = self._delta()
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            p = stack.pop()
            if p in self.accepting:
                return False
            for lab in ALPHABET + (EPS,):
                for q in delta.get((p, lab), ()):
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
        return True

    # -- structural transforms ----------------------------------------------

    def trim(self) -> "Nfa":
        """Keep only states on some path initial -> accepting."""
        fwd = {self.initial}
        stack = [self.initial]
        succ: dict[int, set[int]] = {}
        pred: dict[int, set[int]] = {}
        for (p, _lab, q) in self.transitions:
            succ.setdefault(p, set()).add(q)
            pred.setdefault(q, set()).add(p)
        while stack:
            p = stack.pop()
            for q in succ.get(p, ()):
                if q not in fwd:
                    fwd.add(q)
                    stack.append(q)
        bwd = set(self.accepting)
        stack = list(bwd)
        while stack:
            p = stack.pop()
            for q in pred.get(p, ()):
                if q not in bwd:
                    bwd.add(q)
                    stack.append(q)
        keep = fwd & bwd
        keep.add(self.initial)
        order = sorted(keep)
        idx = {s: i for i, s in enumerate(order)}
        trans = [
            (idx[p], lab, idx[q])
            for (p, lab, q) in self.transitions
            if p in keep and q in keep
        ]
        acc = [idx[s] for s in self.accepting if s in keep]
        return Nfa(len(order), idx[self.initial], acc, trans)

    def without_eps(self) -> "Nfa":
        delta = self._delta()
        closures = {p: self.eps_closure({p}, delta) for p in range(self.n_states)}
        trans = set()
        acc = set()
        for p in range(self.n_states):
            cl = closures[p]
            if cl & self.accepting:
                acc.add(p)
            for r in cl:
                for lab in ALPHABET:
                    for q in delta.get((r, lab), ()):
                        trans.add((p, lab, q))
        return Nfa(self.n_states, self.initial, acc, trans).trim()

    def determinize(self) -> "Dfa":
        nfa = self.without_eps()
        delta = nfa._delta()
        start = frozenset({nfa.initial})
        idx = {start: 0}
        order = [start]
        trans = {}
        i = 0
        while i < len(order):
            cur = order[i]
            for lab in ALPHABET:
                nxt = frozenset().union(*(delta.get((p, lab), set()) for p in cur)) if cur else frozenset()
                if not nxt:
                    continue
                if nxt not in idx:
                    idx[nxt] = len(order)
                    order.append(nxt)
                trans[(i, lab)] = idx[nxt]
            i += 1
        acc = {i for i, ss in enumerate(order) if ss & nfa.accepting}
        return Dfa(len(order), 0, acc, trans)

    # -- language helpers ----------------------------------------------------

    def enumerate_words(self, max_len: int) -> list[str]:
        """All accepted words of length <= max_len (deterministic order)."""
        nfa = self.without_eps()
        delta = nfa._delta()
        out = []
        start = frozenset({nfa.initial})

        def rec(states, word):
            if states & nfa.accepting:
                out.append(word)
            if len(word) == max_len:
                return
            for lab in ALPHABET:
                nxt = set()
                for p in states:
                    nxt |= delta.get((p, lab), set())
                if nxt:
                    rec(frozenset(nxt), word + lab)

        if nfa.n_states:
            rec(start, "")
        return out

    def has_finite_language(self) -> bool:
        """True iff the trimmed automaton is acyclic."""
        t = self.trim()
        succ: dict[int, set[int]] = {}
        for (p, _lab, q) in t.transitions:
            succ.setdefault(p, set()).add(q)
        color = {}

        def dfs(v):
            color[v] = 1
            for w in succ.get(v, ()):
                c = color.get(w, 0)
                if c == 1:
                    return False
                if c == 0 and not dfs(w):
                    return False
            color[v] = 2
            return True

        return all(dfs(v) for v in range(t.n_states) if color.get(v, 0) == 0)


@dataclass(frozen=True)
class Dfa:
    """Partial DFA (missing transitions go to an implicit dead state)."""

    n_states: int
    initial: int
    accepting: frozenset[int]
    transitions: dict

    def __init__(self, n_states, initial, accepting, transitions):
        object.__setattr__(self, "n_states", int(n_states))
        object.__setattr__(self, "initial", int(initial))
        object.__setattr__(self, "accepting", frozenset(accepting))
        object.__setattr__(self, "transitions", dict(transitions))

    def accepts(self, word: str) -> bool:
        s = self.initial
        for ch in word:
            s = self.transitions.get((s, ch))
            if s is None:
                return False
        return s in self.accepting

    def complete(self) -> "Dfa":
        sink = self.n_states
        trans = dict(self.transitions)
        used_sink = False
        for s in range(self.n_states):
            for lab in ALPHABET:
                if (s, lab) not in trans:
                    trans[(s, lab)] = sink
                    used_sink = True
        if used_sink:
            for lab in ALPHABET:
                trans[(sink, lab)] = sink
            return Dfa(self.n_states + 1, self.initial, self.accepting, trans)
        return Dfa(self.n_states, self.initial, self.accepting, trans)

    def complement(self) -> "Dfa":
        c = self.complete()
        acc = frozenset(range(c.n_states)) - c.accepting
        return Dfa(c.n_states, c.initial, acc, c.transitions)

    def minimize(self) -> "Dfa":
        c = self.complete()
        # Moore partition refinement
        part = [0 if s in c.accepting else 1 for s in range(c.n_states)]
        while True:
            sig = {}
            newpart = []
            for s in range(c.n_states):
                key = (part[s],) + tuple(part[c.transitions[(s, lab)]] for lab in ALPHABET)
                if key not in sig:
                    sig[key] = len(sig)
                newpart.append(sig[key])
            if newpart == part:
                break
            part = newpart
        nclasses = max(part) + 1
        trans = {}
        for s in range(c.n_states):
            for lab in ALPHABET:
                trans[(part[s], lab)] = part[c.transitions[(s, lab)]]
        acc = {part[s] for s in c.accepting}
        return Dfa(nclasses, part[c.initial], acc, trans)

    def to_nfa(self) -> Nfa:
        trans = [(p, lab, q) for ((p, lab), q) in self.transitions.items()]
        return Nfa(self.n_states, self.initial, self.accepting, trans).trim()


# ---------------------------------------------------------------------------
# Constructors and combinators
# ---------------------------------------------------------------------------

def nfa_empty() -> Nfa:
    return Nfa(1, 0, [], [])


def nfa_literal(word: str) -> Nfa:
    trans = [(i, ch, i + 1) for i, ch in enumerate(word)]
    return Nfa(len(word) + 1, 0, [len(word)], trans)


def nfa_union(a: Nfa, b: Nfa) -> Nfa:
    off_a, off_b = 1, 1 + a.n_states
    trans = [(0, EPS, off_a + a.initial), (0, EPS, off_b + b.initial)]
    trans += [(p + off_a, lab, q + off_a) for (p, lab, q) in a.transitions]
    trans += [(p + off_b, lab, q + off_b) for (p, lab, q) in b.transitions]
    acc = [s + off_a for s in a.accepting] + [s + off_b for s in b.accepting]
    return Nfa(1 + a.n_states + b.n_states, 0, acc, trans)


def nfa_union_all(automata: Iterable[Nfa]) -> Nfa:
    items = list(automata)
    if not items:
        return nfa_empty()
    acc = items[0]
    for other in items[1:]:
        acc = nfa_union(acc, other)
    return acc


def nfa_concat(a: Nfa, b: Nfa) -> Nfa:
    off_b = a.n_states
    trans = list(a.transitions)
    trans += [(p + off_b, lab, q + off_b) for (p, lab, q) in b.transitions]
    trans += [(f, EPS, off_b + b.initial) for f in a.accepting]
    acc = [s + off_b for s in b.accepting]
    return Nfa(a.n_states + b.n_states, a.initial, acc, trans)


def nfa_plus(a: Nfa) -> Nfa:
    trans = list(a.transitions) + [(f, EPS, a.initial) for f in a.accepting]
    return Nfa(a.n_states, a.initial, a.accepting, trans)


def nfa_intersect(a: Nfa, b: Nfa) -> Nfa:
    a = a.without_eps()
    b = b.without_eps()
    da, db = a._delta(), b._delta()
    idx = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    trans = []
    i = 0
    while i < len(order):
        p, q = order[i]
        for lab in ALPHABET:
            for p2 in da.get((p, lab), ()):
                for q2 in db.get((q, lab), ()):
                    key = (p2, q2)
                    if key not in idx:
                        idx[key] = len(order)
                        order.append(key)
                    trans.append((i, lab, idx[key]))
        i += 1
    acc = [i for i, (p, q) in enumerate(order) if p in a.accepting and q in b.accepting]
    return Nfa(len(order), 0, acc, trans).trim()


def nfa_language_equal(a: Nfa, b: Nfa) -> bool:
    da = a.determinize()
    db = b.determinize()
    only_a = nfa_intersect(a, db.complement().to_nfa())
    if not only_a.is_empty():
        return False
    only_b = nfa_intersect(b, da.complement().to_nfa())
    return only_b.is_empty()


def build_dfa(states, initial, accepting, trans) -> Dfa:
    """Index an explicit state list (hashable keys) into a Dfa."""
    idx = {s: i for i, s in enumerate(states)}
    t = {(idx[p], lab): idx[q] for ((p, lab), q) in trans.items()}
    return Dfa(len(states), idx[initial], {idx[s] for s in accepting}, t)
