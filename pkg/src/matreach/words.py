"""Words over {X, N, S, R} encoding GL(2,Z), and canonical-word machinery.

The four letters map to the matrices

    X -> -I,  N -> diag(1, -1),  S -> [[0,-1],[1,0]],  R -> [[0,-1],[1,1]],

and the map extends to words by matrix multiplication.  Every matrix with
determinant +-1 is the value of exactly one *canonical* word

    N^d X^g S^b R^(a1) S R^(a2) ... S R^(an) S^e,

with d, g, b, e in {0,1} and block sizes a_i in {1,2}; equivalently a word
with no SS or RRR factor and N, X only at the front.  This module supplies
word evaluation, the canonical form of a single matrix, and the rewrite of
an arbitrary automaton into one accepting only canonical words with the
same matrix image.  Automata whose language is guaranteed canonical are
wrapped in RegularSubset, the only carrier of set-level Boolean operations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .automata import (
    ALPHABET,
    EPS,
    Dfa,
    Nfa,
    build_dfa,
    nfa_concat,
    nfa_empty,
    nfa_intersect,
    nfa_language_equal,
    nfa_literal,
    nfa_plus,
    nfa_union,
    nfa_union_all,
)


class NotInGL2ZError(ValueError):
    """Raised for 2x2 integer matrices with determinant other than +-1."""


@dataclass(frozen=True)
class Mat2:
    a11: int
    a12: int
    a21: int
    a22: int

    def __init__(self, a11, a12, a21, a22):
        for v in (a11, a12, a21, a22):
            if int(v) != v:
                raise ValueError("Mat2 entries must be integers")
        object.__setattr__(self, "a11", int(a11))
        object.__setattr__(self, "a12", int(a12))
        object.__setattr__(self, "a21", int(a21))
        object.__setattr__(self, "a22", int(a22))

    def det(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a11, -self.a12, -self.a21, -self.a22)

    def inverse(self) -> "Mat2":
        d = self.det()
        if d not in (1, -1):
            raise NotInGL2ZError(f"matrix has determinant {d}, not +-1")
        return Mat2(d * self.a22, -d * self.a12, -d * self.a21, d * self.a11)

    def transpose(self) -> "Mat2":
        return Mat2(self.a11, self.a21, self.a12, self.a22)

    def entry(self, i: int, j: int) -> int:
        return (self.a11, self.a12, self.a21, self.a22)[(i - 1) * 2 + (j - 1)]

    def rows(self):
        return [[self.a11, self.a12], [self.a21, self.a22]]

    def __repr__(self):
        return f"Mat2([[{self.a11},{self.a12}],[{self.a21},{self.a22}]])"


IDENTITY = Mat2(1, 0, 0, 1)

GENERATORS = {
    "X": Mat2(-1, 0, 0, -1),
    "N": Mat2(1, 0, 0, -1),
    "S": Mat2(0, -1, 1, 0),
    "R": Mat2(0, -1, 1, 1),
}


def eval_word(word: str) -> Mat2:
    """Matrix value of a word; the empty word is the identity."""
    m = IDENTITY
    for ch in word:
        try:
            m = m * GENERATORS[ch]
        except KeyError:
            raise ValueError(f"bad letter {ch!r}") from None
    return m


_CANONICAL_RE = re.compile(r"^N?X?(?:S?RR?(?:SRR?)*S?|S?)$")


def is_canonical(word: str) -> bool:
    return bool(_CANONICAL_RE.match(word))


DEGENERATE_CANONICAL = ("", "N", "X", "NX", "S", "NS", "XS", "NXS")


def _reduce_sr(letters: list[str]) -> tuple[list[str], int]:
    """Cancel SS and RRR factors; each cancellation flips the sign parity."""
    out: list[str] = []
    flips = 0
    for ch in letters:
        out.append(ch)
        while True:
            if len(out) >= 2 and out[-1] == "S" and out[-2] == "S":
                del out[-2:]
                flips ^= 1
            elif len(out) >= 3 and out[-1] == out[-2] == out[-3] == "R":
                del out[-3:]
                flips ^= 1
            else:
                break
    return out, flips


def canonicalize_letters(letters: Iterable[str]) -> str:
    """Canonical word of the matrix value of an arbitrary letter sequence.

    N's are pushed to the front (each hop over S emits an X, a hop over R
    rewrites it as SRRS), X's are collected by parity, and the remaining
    S/R word is reduced.
    """
    letters = list(letters)
    n_parity = letters.count("N") & 1
    x_parity = 0
    core: list[str] = []
    seen_n = 0
    total_n = letters.count("N")
    for ch in letters:
        if ch == "N":
            seen_n += 1
            continue
        conj = (total_n - seen_n) & 1  # N's still to hop over this letter
        if ch == "X":
            x_parity ^= 1
        elif ch == "S":
            core.append("S")
            x_parity ^= conj
        else:  # R
            if conj:
                core += ["S", "R", "R", "S"]
            else:
                core.append("R")
    core, flips = _reduce_sr(core)
    x_parity ^= flips
    word = ("N" if n_parity else "") + ("X" if x_parity else "") + "".join(core)
    return word


_T = Mat2(1, 1, 0, 1)  # eval_word("XSR")


def canonical_word(m: Mat2) -> str:
    """The unique canonical word evaluating to m.

    Column reduction: repeated left division by S and powers of the shear
    XSR brings the matrix to a triangular tail, and the recorded letter
    sequence is then reduced to canonical shape.  The result is verified
    by evaluation before returning.
    """
    d = m.det()
    if d not in (1, -1):
        raise NotInGL2ZError(f"matrix has determinant {d}, not +-1")
    letters: list[str] = []
    if d == -1:
        letters.append("N")
        m = GENERATORS["N"] * m  # N^-1 = N
    a, c = m.a11, m.a21
    work = m
    while c != 0:
        k = a // c
        if k >= 0:
            letters += ["X", "S", "R"] * k
        else:
            letters += ["R", "R", "S", "X"] * (-k)
        # work <- S^-1 T^-k work ; rows become (c, d), (-(a - k c), ...)
        t = Mat2(work.a11 - k * work.a21, work.a12 - k * work.a22, work.a21, work.a22)
        work = Mat2(t.a21, t.a22, -t.a11, -t.a12)
        letters.append("S")
        a, c = work.a11, work.a21
    # work is now [[1, b], [0, 1]] or [[-1, b], [0, -1]]
    b = work.a12
    if work.a11 == -1:
        letters.append("X")
        b = -b
    if b >= 0:
        letters += ["X", "S", "R"] * b
    else:
        letters += ["R", "R", "S", "X"] * (-b)
    word = canonicalize_letters(letters)
    m_orig = (GENERATORS["N"] * m) if d == -1 else m
    if eval_word(word) != m_orig:
        raise AssertionError(f"canonicalization failed for {m_orig!r}")
    return word


def canonical_shape_dfa() -> Dfa:
    """DFA of all canonical words (every state accepting, dead moves absent)."""
    states = ["start", "n", "x", "s", "r1", "r2", "sep"]
    trans = {
        ("start", "N"): "n",
        ("start", "X"): "x",
        ("start", "S"): "s",
        ("start", "R"): "r1",
        ("n", "X"): "x",
        ("n", "S"): "s",
        ("n", "R"): "r1",
        ("x", "S"): "s",
        ("x", "R"): "r1",
        ("s", "R"): "r1",
        ("r1", "R"): "r2",
        ("r1", "S"): "sep",
        ("r2", "S"): "sep",
        ("sep", "R"): "r1",
    }
    return build_dfa(states, "start", set(states), trans)


def enumerate_canonical(max_len: int):
    """All canonical words of length <= max_len, shortest first."""
    dfa = canonical_shape_dfa()
    frontier = [("", dfa.initial)]
    while frontier:
        nxt = []
        for word, s in frontier:
            yield word
            if len(word) < max_len:
                for lab in ALPHABET:
                    t = dfa.transitions.get((s, lab))
                    if t is not None:
                        nxt.append((word + lab, t))
        frontier = nxt


@dataclass(frozen=True)
class RegularSubset:
    """A set of GL(2,Z) matrices carried by a canonical-words-only NFA.

    Only constructors that guarantee the canonical-words invariant build
    these (canonicalize_nfa and the direct entry/sign constructors), which
    is what makes language-level Boolean operations agree with set-level
    ones: distinct canonical words never collide on the same matrix.
    """

    nfa: Nfa

    def is_empty(self) -> bool:
        return self.nfa.is_empty()

    def contains_matrix(self, m: Mat2) -> bool:
        return self.nfa.accepts(canonical_word(m))

    def contains_word(self, word: str) -> bool:
        return self.nfa.accepts(word)

    def union(self, other: "RegularSubset") -> "RegularSubset":
        return RegularSubset(nfa_union(self.nfa, other.nfa).trim())

    def intersection(self, other: "RegularSubset") -> "RegularSubset":
        return RegularSubset(nfa_intersect(self.nfa, other.nfa))

    def complement(self) -> "RegularSubset":
        comp = self.nfa.determinize().complement().to_nfa()
        return RegularSubset(nfa_intersect(comp, canonical_shape_dfa().to_nfa()))

    def difference(self, other: "RegularSubset") -> "RegularSubset":
        return self.intersection(other.complement())

    def same_set(self, other: "RegularSubset") -> bool:
        return nfa_language_equal(self.nfa, other.nfa)


def all_canonical_words() -> RegularSubset:
    return RegularSubset(canonical_shape_dfa().to_nfa())


def empty_subset() -> RegularSubset:
    return RegularSubset(nfa_empty())


def regular_bool_op(kind: str, left: RegularSubset, right: RegularSubset | None = None) -> RegularSubset:
    if kind == "union":
        return left.union(right)
    if kind == "intersection":
        return left.intersection(right)
    if kind == "complement":
        if right is not None:
            raise ValueError("complement takes a single operand")
        return left.complement()
    raise ValueError(f"bad operation {kind!r}")


def regular_is_empty(subset: RegularSubset) -> bool:
    return subset.is_empty()


# ---------------------------------------------------------------------------
# Rewriting an arbitrary automaton onto canonical words
# ---------------------------------------------------------------------------

def _saturate(n_nodes, s_edges, r_edges, z_seed):
    """Signed cancellation closure.

    Finds all pairs (p, q) connected by a path whose S/R letters cancel
    completely (through SS and RRR eliminations), together with the parity
    of sign flips picked up: each elimination flips, and seeded sign edges
    (from X letters) contribute their own parity.  The closure follows the
    derivation rules empty / chain / S-cancel-S / R-cancel-R-cancel-R.
    """
    s_in: dict[int, list[int]] = {}
    s_out: dict[int, list[int]] = {}
    r_in: dict[int, list[int]] = {}
    r_out: dict[int, list[int]] = {}
    for (p, q) in s_edges:
        s_out.setdefault(p, []).append(q)
        s_in.setdefault(q, []).append(p)
    for (p, q) in r_edges:
        r_out.setdefault(p, []).append(q)
        r_in.setdefault(q, []).append(p)

    z: set[tuple[int, int, int]] = set()
    zfrom: dict[int, set[tuple[int, int]]] = {}
    zto: dict[int, set[tuple[int, int]]] = {}
    work: list[tuple[int, int, int]] = []

    def add(p, q, x):
        e = (p, q, x)
        if e in z:
            return
        z.add(e)
        zfrom.setdefault(p, set()).add((q, x))
        zto.setdefault(q, set()).add((p, x))
        work.append(e)

    for p in range(n_nodes):
        add(p, p, 0)
    for (p, q, x) in z_seed:
        add(p, q, x)

    def r_triples_through(mid_edge):
        """R-rule instances using the given z-edge as first or second gap."""
        a, b, x = mid_edge
        out = []
        # as first gap: rp -R-> a ..z(x).. b -R-> m ..z(y).. c -R-> rq
        for rp in r_in.get(a, ()):
            for m in r_out.get(b, ()):
                for (c, y) in zfrom.get(m, set()):
                    for rq in r_out.get(c, ()):
                        out.append((rp, rq, x ^ y ^ 1))
        # as second gap: rp -R-> m ..z(y).. c -R-> a ..z(x).. b -R-> rq
        for rq in r_out.get(b, ()):
            for c in r_in.get(a, ()):
                for (m, y) in zto.get(c, set()):
                    for rp in r_in.get(m, ()):
                        out.append((rp, rq, x ^ y ^ 1))
        return out

    while work:
        (a, b, x) = work.pop()
        for (c, y) in list(zfrom.get(b, ())):
            add(a, c, x ^ y)
        for (c, y) in list(zto.get(a, ())):
            add(c, b, x ^ y)
        for sp in s_in.get(a, ()):
            for sq in s_out.get(b, ()):
                add(sp, sq, x ^ 1)
        for (p, q, s) in r_triples_through((a, b, x)):
            add(p, q, s)
    return z


_REDUCED_SR = {  # words over {S,R} with no SS and no RRR
    ("go", "S"): "s",
    ("go", "R"): "r1",
    ("s", "R"): "r1",
    ("r1", "R"): "r2",
    ("r1", "S"): "s",
    ("r2", "S"): "s",
}


def canonicalize_nfa(a: Nfa) -> RegularSubset:
    """Rewrite an automaton so it accepts only canonical words.

    The matrix image of the language is preserved.  Stage one guesses the
    total N-parity and eliminates N by conjugating the letters it hops
    over (S picks up a sign, R becomes SRRS); explicit X letters and the
    conjugation signs become parity-carrying epsilon edges.  Stage two
    closes the S/R graph under complete cancellations.  Stage three runs
    the closed graph against the reduced-word shape while accumulating the
    sign parity, and reattaches the N/X prefix the parities call for.
    """
    a = a.trim()
    if a.is_empty():
        return empty_subset()

    nodes: dict[tuple, int] = {}

    def node(key) -> int:
        if key not in nodes:
            nodes[key] = len(nodes)
        return nodes[key]

    s_edges: list[tuple[int, int]] = []
    r_edges: list[tuple[int, int]] = []
    z_seed: list[tuple[int, int, int]] = []

    by_state: dict[int, list[tuple[str, int]]] = {}
    for (p, lab, q) in a.transitions:
        by_state.setdefault(p, []).append((lab, q))

    starts = {g: node((a.initial, g, 0)) for g in (0, 1)}
    todo = [(a.initial, g, 0) for g in (0, 1)]
    seen = set(todo)
    while todo:
        p, guess, par = todo.pop()
        src = node((p, guess, par))
        for (lab, q) in by_state.get(p, ()):
            npar = par ^ 1 if lab == "N" else par
            key = (q, guess, npar)
            dst = node(key)
            if key not in seen:
                seen.add(key)
                todo.append(key)
            if lab == EPS or lab == "N":
                z_seed.append((src, dst, 0))
            elif lab == "X":
                z_seed.append((src, dst, 1))
            elif lab == "S":
                if guess ^ par:  # hopping N turns S into S with a sign
                    mid = node((p, q, guess, par, "s-mid"))
                    s_edges.append((src, mid))
                    z_seed.append((mid, dst, 1))
                else:
                    s_edges.append((src, dst))
            else:  # R
                if guess ^ par:  # hopping N turns R into SRRS
                    m1 = node((p, q, guess, par, 1))
                    m2 = node((p, q, guess, par, 2))
                    m3 = node((p, q, guess, par, 3))
                    s_edges.append((src, m1))
                    r_edges.append((m1, m2))
                    r_edges.append((m2, m3))
                    s_edges.append((m3, dst))
                else:
                    r_edges.append((src, dst))

    finals: dict[int, int] = {}
    for f in a.accepting:
        for g in (0, 1):
            key = (f, g, g)
            if key in nodes:
                finals[nodes[key]] = g

    z = _saturate(len(nodes), s_edges, r_edges, z_seed)

    zfrom: dict[int, list[tuple[int, int]]] = {}
    for (p, q, x) in z:
        if p != q or x != 0:
            zfrom.setdefault(p, []).append((q, x))
    s_out: dict[int, list[int]] = {}
    for (p, q) in s_edges:
        s_out.setdefault(p, []).append(q)
    r_out: dict[int, list[int]] = {}
    for (p, q) in r_edges:
        r_out.setdefault(p, []).append(q)

    # stage three: product with the reduced-word shape, the accumulated sign,
    # and the X-prefix choice the sign has to match at acceptance
    idx: dict[tuple[int, int, str, int], int] = {}
    order: list[tuple[int, int, str, int]] = []

    def pstate(key):
        if key not in idx:
            idx[key] = len(order)
            order.append(key)
        return idx[key]

    trans: list[tuple[int, str, int]] = []
    for g in (0, 1):
        for gamma in (0, 1):
            pstate((starts[g], 0, "go", gamma))
    i = 0
    while i < len(order):
        nd, sign, shape, gamma = order[i]
        for (q, x) in zfrom.get(nd, ()):
            trans.append((i, EPS, pstate((q, sign ^ x, shape, gamma))))
        nshape = _REDUCED_SR.get((shape, "S"))
        if nshape:
            for q in s_out.get(nd, ()):
                trans.append((i, "S", pstate((q, sign, nshape, gamma))))
        nshape = _REDUCED_SR.get((shape, "R"))
        if nshape:
            for q in r_out.get(nd, ()):
                trans.append((i, "R", pstate((q, sign, nshape, gamma))))
        i += 1

    base = len(order)
    start, after_n, after_x, after_nx = base, base + 1, base + 2, base + 3
    trans.append((start, "N", after_n))
    trans.append((start, "X", after_x))
    trans.append((after_n, "X", after_nx))
    entries = {(0, 0): start, (0, 1): after_x, (1, 0): after_n, (1, 1): after_nx}
    for g in (0, 1):
        for gamma in (0, 1):
            trans.append((entries[(g, gamma)], EPS, idx[(starts[g], 0, "go", gamma)]))
    accepting = set()
    for i, (nd, sign, shape, gamma) in enumerate(order):
        if finals.get(nd) is not None and sign == gamma:
            accepting.add(i)
    result = Nfa(base + 4, start, accepting, trans).trim().without_eps()
    return RegularSubset(result)
