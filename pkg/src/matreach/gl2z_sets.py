"""Regular-subset constructors for GL(2,Z) and the decision procedures on them.

The constructors produce RegularSubset values (automata over canonical
words): the sign-parity set of nonnegative entries, exact-entry-value
sets, entry bound sets, half-space sets u^T M v >= lambda, and semigroup
languages.  Half-space reachability and membership then reduce to language
intersection and emptiness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd

from .automata import Nfa, build_dfa, nfa_concat, nfa_literal, nfa_plus, nfa_union_all
from .verdict import Verdict
from .words import (
    DEGENERATE_CANONICAL,
    Mat2,
    NotInGL2ZError,
    RegularSubset,
    all_canonical_words,
    canonical_word,
    canonicalize_nfa,
    empty_subset,
    eval_word,
)


def sign_of(value: int) -> int:
    """1, -1, or 0; zero doubles as the wildcard in pattern comparison."""
    return 0 if value == 0 else (1 if value > 0 else -1)


def matrix_sign_pattern(m: Mat2):
    return (
        (sign_of(m.a11), sign_of(m.a12)),
        (sign_of(m.a21), sign_of(m.a22)),
    )


def signs_match(p, q) -> bool:
    """Entrywise comparison where 0 matches anything."""
    for row_p, row_q in zip(p, q):
        for a, b in zip(row_p, row_q):
            if a != 0 and b != 0 and a != b:
                return False
    return True


def canonical_sign_pattern(delta: int, gamma: int, beta: int, n: int, epsilon: int):
    """Sign matrix of a canonical word with n >= 1 growth blocks."""
    if n < 1:
        raise ValueError("sign pattern formula requires at least one R block")
    e11 = (-1) ** (n + gamma)
    e12 = (-1) ** (n + gamma + epsilon)
    e21 = (-1) ** (n - 1 + beta + gamma + delta)
    e22 = (-1) ** (n - 1 + beta + gamma + delta + epsilon)
    return ((e11, e12), (e21, e22))


# ---------------------------------------------------------------------------
# Exact entry-value sets
# ---------------------------------------------------------------------------
#
# The automaton for {M : M_ij = k} tracks the i-th row of the running
# product while reading a canonical word.  Row coordinates are kept exactly
# while within [-B, B] and collapse to a signed "big" token beyond; at the
# boundaries between R-blocks the two coordinates always share a sign, so
# the additive updates of the row dynamics never need the lost magnitudes,
# and a big coordinate can never return to the small range (block updates
# only add same-signed values).  The one subtraction in the letter dynamics
# is resolved against the stored pre-block row, never against a big token.

_BIG_POS = ("big", 1)
_BIG_NEG = ("big", -1)


def _sat(v, bound: int):
    if isinstance(v, tuple):
        return v
    if v > bound:
        return _BIG_POS
    if v < -bound:
        return _BIG_NEG
    return v


def _neg(v):
    if isinstance(v, tuple):
        return ("big", -v[1])
    return -v


def _sgn(v) -> int:
    if isinstance(v, tuple):
        return v[1]
    return sign_of(v)


def _add_same(x, y):
    """x + y for values that are exact or big with compatible signs."""
    if not isinstance(x, tuple) and not isinstance(y, tuple):
        return x + y
    sx, sy = _sgn(x), _sgn(y)
    if sx != 0 and sy != 0 and sx != sy:
        raise AssertionError("opposite-signed big addition should be unreachable")
    return ("big", sx if sx != 0 else sy)


def _eq(v, k: int) -> bool:
    return not isinstance(v, tuple) and v == k


@lru_cache(maxsize=None)
def entry_value_set(i: int, j: int, k: int) -> RegularSubset:
    """Regular subset {M in GL(2,Z) : M_ij = k}."""
    if i not in (1, 2) or j not in (1, 2):
        raise ValueError("entry indices must be 1 or 2")
    bound = max(abs(k), 2)
    e_row = (1, 0) if i == 1 else (0, 1)
    start = ("h", 0, e_row[0], e_row[1])

    def current_row(state):
        kind = state[0]
        if kind == "h":
            return (state[2], state[3])
        if kind == "r1":  # state stores the pre-R row (u, v)
            _, u, v = state
            return (v, _add_same(v, _neg(u)))
        if kind == "bb":
            return (state[1], state[2])
        # ps stores the pre-S row (x, y); the S swapped it to (y, -x)
        _, x, y = state
        return (y, _neg(x))

    def moves(state):
        kind = state[0]
        out = {}
        if kind == "h":
            stage, x, y = state[1], state[2], state[3]
            if stage == 0:
                out["N"] = ("h", 1, x, _neg(y))
            if stage <= 1:
                out["X"] = ("h", 2, _neg(x), _neg(y))
            if stage <= 2:
                out["S"] = ("h", 3, y, _neg(x))
            out["R"] = ("r1", x, y)
        elif kind == "r1":
            _, u, v = state
            diff = _add_same(v, _neg(u))
            out["R"] = ("bb", _sat(diff, bound), _sat(_neg(u), bound))
            out["S"] = ("ps", _sat(v, bound), _sat(diff, bound))
        elif kind == "bb":
            out["S"] = ("ps", state[1], state[2])
        else:  # ps
            _, x, y = state
            out["R"] = ("r1", y, _neg(x))
        return out

    states = [start]
    seen = {start}
    trans = {}
    qi = 0
    while qi < len(states):
        st = states[qi]
        qi += 1
        for lab, nxt in moves(st).items():
            trans[(st, lab)] = nxt
            if nxt not in seen:
                seen.add(nxt)
                states.append(nxt)
    accepting = {st for st in states if _eq(current_row(st)[j - 1], k)}
    return RegularSubset(build_dfa(states, start, accepting, trans).to_nfa())


@lru_cache(maxsize=None)
def _parity_nonneg_dfa(i: int, j: int) -> Nfa:
    """Canonical words with at least one R-block whose (i, j) sign parity
    is even; every such word's matrix has M_ij >= 0."""
    start = ("h", 0, 0, 0, 0)  # stage, delta, gamma, beta

    def moves(state):
        kind = state[0]
        out = {}
        if kind == "h":
            _, stage, d, g, b = state
            if stage == 0:
                out["N"] = ("h", 1, 1, g, b)
            if stage <= 1:
                out["X"] = ("h", 2, d, 1, b)
            if stage <= 2:
                out["S"] = ("h", 3, d, g, 1)
            out["R"] = ("r1", d, g, b, 1)
        else:
            _, d, g, b, npar = state
            if kind == "r1":
                out["R"] = ("bb", d, g, b, npar)
                out["S"] = ("sep", d, g, b, npar)
            elif kind == "bb":
                out["S"] = ("sep", d, g, b, npar)
            else:  # sep
                out["R"] = ("r1", d, g, b, npar ^ 1)
        return out

    def exponent(state):
        kind = state[0]
        if kind == "h":
            return None
        _, d, g, b, npar = state
        eps = 1 if kind == "sep" else 0
        if (i, j) == (1, 1):
            return npar + g
        if (i, j) == (1, 2):
            return npar + g + eps
        if (i, j) == (2, 1):
            return npar - 1 + b + g + d
        return npar - 1 + b + g + d + eps

    states = [start]
    seen = {start}
    trans = {}
    qi = 0
    while qi < len(states):
        st = states[qi]
        qi += 1
        for lab, nxt in moves(st).items():
            trans[(st, lab)] = nxt
            if nxt not in seen:
                seen.add(nxt)
                states.append(nxt)
    accepting = {st for st in states if exponent(st) is not None and exponent(st) % 2 == 0}
    return build_dfa(states, start, accepting, trans).to_nfa()


@lru_cache(maxsize=None)
def nonneg_entry_set(i: int, j: int) -> RegularSubset:
    """Regular subset {M in GL(2,Z) : M_ij >= 0}.

    Union of the even-sign-parity words, the exact-zero set (sign patterns
    treat zero entries as wildcards), and the blockless canonical words
    classified by direct evaluation.
    """
    parts = [_parity_nonneg_dfa(i, j), entry_value_set(i, j, 0).nfa]
    for w in DEGENERATE_CANONICAL:
        if eval_word(w).entry(i, j) >= 0:
            parts.append(nfa_literal(w))
    return RegularSubset(nfa_union_all(parts).trim())


def _compact(subset: RegularSubset) -> RegularSubset:
    return RegularSubset(subset.nfa.determinize().minimize().to_nfa())


@lru_cache(maxsize=None)
def entry_bound_set(i: int, j: int, k: int, direction: str) -> RegularSubset:
    """Regular subset {M : M_ij >= k} or {M : M_ij <= k}."""
    if direction == "le":
        return _compact(entry_bound_set(i, j, k + 1, "ge").complement())
    if direction != "ge":
        raise ValueError("direction must be 'ge' or 'le'")
    if k == 0:
        return _compact(nonneg_entry_set(i, j))
    if k > 0:
        cut = RegularSubset(
            nfa_union_all([entry_value_set(i, j, n).nfa for n in range(k)]).trim()
        )
        return _compact(nonneg_entry_set(i, j).difference(cut))
    add = RegularSubset(
        nfa_union_all([entry_value_set(i, j, n).nfa for n in range(k, 0)]).trim()
    )
    return _compact(nonneg_entry_set(i, j).union(add))


# ---------------------------------------------------------------------------
# Half-space sets and deciders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfSpaceQuery2:
    """Ask for M with u^T M v >= lam over 2-vectors of rationals."""

    u: tuple[Fraction, Fraction]
    v: tuple[Fraction, Fraction]
    lam: Fraction

    def __init__(self, u, v, lam):
        object.__setattr__(self, "u", tuple(Fraction(x) for x in u))
        object.__setattr__(self, "v", tuple(Fraction(x) for x in v))
        object.__setattr__(self, "lam", Fraction(lam))
        if len(self.u) != 2 or len(self.v) != 2:
            raise ValueError("u and v must be 2-vectors")

    def value(self, m: Mat2) -> Fraction:
        u1, u2 = self.u
        v1, v2 = self.v
        return (
            u1 * (m.a11 * v1 + m.a12 * v2)
            + u2 * (m.a21 * v1 + m.a22 * v2)
        )


def _primitive(vec):
    """Scale a nonzero rational 2-vector to coprime integers; returns
    (int vector, positive factor f) with new = f * old."""
    denom_lcm = vec[0].denominator * vec[1].denominator // gcd(
        vec[0].denominator, vec[1].denominator
    )
    ints = [int(x * denom_lcm) for x in vec]
    g = gcd(ints[0], ints[1])
    ints = [x // g for x in ints]
    return tuple(ints), Fraction(denom_lcm, g)


def normalize_query(q: HalfSpaceQuery2) -> HalfSpaceQuery2:
    """Equivalent query with coprime integer u, v and integer lambda."""
    if all(x == 0 for x in q.u) or all(x == 0 for x in q.v):
        raise ValueError("zero vectors must be short-circuited by the caller")
    u, fu = _primitive(q.u)
    v, fv = _primitive(q.v)
    lam = Fraction(ceil(q.lam * fu * fv))
    return HalfSpaceQuery2(u, v, lam)


def _ext_gcd(a: int, b: int):
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


@lru_cache(maxsize=None)
def _halfspace_cached(u1, u2, v1, v2, lam) -> RegularSubset:
    _g, s1, s2 = _ext_gcd(u1, u2)
    _g, t1, t2 = _ext_gcd(v1, v2)
    a = Mat2(u1, -s2, u2, s1)
    b = Mat2(v1, -t2, v2, t1)
    w1 = canonical_word(a.transpose().inverse())
    w2 = canonical_word(b.inverse())
    core = entry_bound_set(1, 1, lam, "ge")
    lang = nfa_concat(nfa_concat(nfa_literal(w1), core.nfa), nfa_literal(w2))
    return canonicalize_nfa(lang)


def halfspace_set(q: HalfSpaceQuery2) -> RegularSubset:
    """Regular subset {M in GL(2,Z) : u^T M v >= lam}."""
    if all(x == 0 for x in q.u) or all(x == 0 for x in q.v):
        return all_canonical_words() if 0 >= q.lam else empty_subset()
    qn = normalize_query(q)
    return _halfspace_cached(
        int(qn.u[0]), int(qn.u[1]), int(qn.v[0]), int(qn.v[1]), int(qn.lam)
    )


def semigroup_set(generators) -> RegularSubset:
    """Regular subset equal to the semigroup of nonempty products."""
    gens = list(generators)
    if not gens:
        return empty_subset()
    for m in gens:
        if m.det() not in (1, -1):
            raise NotInGL2ZError(f"generator {m!r} has determinant {m.det()}")
    lang = nfa_plus(nfa_union_all([nfa_literal(canonical_word(m)) for m in gens]))
    return canonicalize_nfa(lang)


def _product_search(generators, good, depth: int):
    """Shortest generator word (1-based indices) whose product satisfies
    `good`, up to the given depth; None if not found."""
    if not generators:
        return None
    frontier = {}
    for idx, m in enumerate(generators):
        frontier.setdefault(m, (idx + 1,))
    seen = dict(frontier)
    for _ in range(depth):
        for m, word in frontier.items():
            if good(m):
                return word
        nxt = {}
        for m, word in frontier.items():
            for idx, g in enumerate(generators):
                prod = m * g
                if prod not in seen:
                    cand = word + (idx + 1,)
                    seen[prod] = cand
                    nxt[prod] = cand
        frontier = nxt
        if not frontier:
            break
    return None


def decide_halfspace_gl2z(
    generators, q: HalfSpaceQuery2, witness_depth: int = 8
) -> Verdict:
    """Does some nonempty product M of the generators satisfy u^T M v >= lam?"""
    gens = list(generators)
    if not gens:
        return Verdict.no()
    sg = semigroup_set(gens)
    target = halfspace_set(q)
    if sg.intersection(target).is_empty():
        return Verdict.no()
    witness = _product_search(gens, lambda m: q.value(m) >= q.lam, witness_depth)
    return Verdict.yes(witness) if witness else Verdict.yes()


def decide_membership_gl2z(generators, target: Mat2, witness_depth: int = 8) -> Verdict:
    """Is the target a nonempty product of the generators?"""
    if target.det() not in (1, -1):
        raise NotInGL2ZError(f"target has determinant {target.det()}, not +-1")
    gens = list(generators)
    if not gens:
        return Verdict.no()
    sg = semigroup_set(gens)
    if not sg.contains_word(canonical_word(target)):
        return Verdict.no()
    witness = _product_search(gens, lambda m: m == target, witness_depth)
    return Verdict.yes(witness) if witness else Verdict.yes()
