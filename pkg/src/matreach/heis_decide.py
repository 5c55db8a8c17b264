"""Membership and half-space reachability for Heisenberg semigroups.

Membership runs a partition of the generators by how their additive (a, b)
coordinates sit in the dual of the generated cone.  Generators that pair
strictly positively with some dual vector can appear only boundedly often
in a product reaching the target; the rest have additive images closed
under negation.  If the latter commute, membership reduces to finitely
many nonnegative integer linear systems; if not, two central elements with
corner entries of both signs exist, and membership reduces to a walk
problem over corner residues solved by the flow engine.

Half-space reachability enumerates block orderings of the generators,
turns each power product into an exact quadratic polynomial in the
exponents, and decides the polynomial inequality soundly, reporting
UNKNOWN when the partial quadratic solver cannot certify either answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .heisenberg import (
    HeisTriple,
    LieTriple,
    bch_log_product,
    bracket_corner,
    heis_identity,
    heis_log,
    heis_mul,
    heis_product,
)
from .solvers import (
    FlowEdge,
    FlowInstance,
    IlpRow,
    IlpSystem,
    LinRow,
    LinSystem,
    flow_reach,
    ilp_nonneg,
    lp_feasible,
    lp_minimize,
    usage_to_walk,
)
from .verdict import Verdict

ZERO = Fraction(0)


@dataclass(frozen=True)
class MembershipInstance:
    generators: tuple[HeisTriple, ...]
    target: HeisTriple

    def __init__(self, generators, target):
        generators = tuple(generators)
        if not generators:
            raise ValueError("at least one generator is required")
        for g in generators:
            if g.dim != target.dim:
                raise ValueError(
                    f"dimension mismatch: generator dim {g.dim} vs target dim {target.dim}"
                )
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "target", target)

    @property
    def dim(self) -> int:
        return self.target.dim


def _sqrt_free_factor(m: int) -> int:
    """Smallest positive N with m dividing N^2."""
    n = 1
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        n *= p ** ((e + 1) // 2)
        p += 1
    if m > 1:
        n *= m
    return n


def scale_to_integer(inst: MembershipInstance) -> tuple[MembershipInstance, int]:
    """Equivalent integral instance via (a, b, c) -> (Na, Nb, N^2 c)."""
    n_ab = 1
    den_c = 1
    for t in inst.generators + (inst.target,):
        for x in t.ab:
            n_ab = lcm(n_ab, x.denominator)
        den_c = lcm(den_c, t.c.denominator)
    n = lcm(n_ab, _sqrt_free_factor(den_c))

    def scaled(t: HeisTriple) -> HeisTriple:
        return HeisTriple(
            t.dim,
            [n * x for x in t.a],
            [n * x for x in t.b],
            n * n * t.c,
        )

    return (
        MembershipInstance([scaled(g) for g in inst.generators], scaled(inst.target)),
        n,
    )


# ---------------------------------------------------------------------------
# Partition and occurrence bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorPartition:
    """Indices split by dual-cone pairing, with the certifying dual vectors.

    `stationary` holds indices whose (a, b) image pairs to zero with every
    vector of the dual cone; `bounded` holds the rest, each with a witness
    u satisfying psi_j . u >= 0 for all j and psi_i . u > 0.
    """

    stationary: tuple[int, ...]
    bounded: tuple[int, ...]
    dual_witnesses: dict
    psis: tuple[tuple[Fraction, ...], ...]


def _dot(x, y) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), ZERO)


def partition_generators(inst: MembershipInstance) -> GeneratorPartition:
    psis = tuple(g.ab for g in inst.generators)
    width = len(psis[0])
    cone_rows = [LinRow(p, ">=", 0) for p in psis]
    stationary, bounded, witnesses = [], [], {}
    for i, p in enumerate(psis):
        point = lp_feasible(LinSystem(width, cone_rows + [LinRow(p, ">=", 1)]))
        if point is None:
            stationary.append(i)
        else:
            bounded.append(i)
            witnesses[i] = tuple(point)
    return GeneratorPartition(tuple(stationary), tuple(bounded), witnesses, psis)


@dataclass(frozen=True)
class OccurrenceBounds:
    per_generator: dict
    total: int


def occurrence_bounds(
    inst: MembershipInstance, part: GeneratorPartition, target: HeisTriple
):
    """Caps on how often each bounded generator can occur, or a NO verdict.

    If some dual-cone vector pairs negatively with the target's (a, b)
    image, no product can reach it, since every factor pairs nonnegatively.
    Otherwise each bounded generator's cap is the minimum of target . u
    over dual vectors normalized against that generator, floored.
    """
    v = target.ab
    width = len(v)
    cone_rows = [LinRow(p, ">=", 0) for p in part.psis]
    reject = lp_feasible(
        LinSystem(width, cone_rows + [LinRow([-x for x in v], ">=", 1)])
    )
    if reject is not None:
        return Verdict.no()
    caps = {}
    for i in part.bounded:
        status, val, _pt = lp_minimize(
            LinSystem(width, cone_rows + [LinRow(part.psis[i], "=", 1)]), v
        )
        if status != "optimal" or val < 0:
            # the reject LP above already ruled out negative pairings
            raise AssertionError("bound LP inconsistent with the reject check")
        caps[i] = int(val.numerator // val.denominator)
    return OccurrenceBounds(caps, sum(caps.values()))


def _commutes(x: HeisTriple, y: HeisTriple) -> bool:
    return _dot(x.a, y.b) == _dot(y.a, x.b)


# ---------------------------------------------------------------------------
# Case I: stationary generators commute
# ---------------------------------------------------------------------------

def _distinct_orderings(multiset):
    """Distinct arrangements of a multiset given as a sorted tuple."""
    seen_first = []
    if not multiset:
        yield ()
        return
    for idx, g in enumerate(multiset):
        if g in seen_first:
            continue
        seen_first.append(g)
        rest = multiset[:idx] + multiset[idx + 1:]
        for tail in _distinct_orderings(rest):
            yield (g,) + tail


def decide_case_commutative(
    inst: MembershipInstance, part: GeneratorPartition, bounds: OccurrenceBounds
) -> Verdict:
    """Membership when the stationary generators pairwise commute.

    Every candidate arrangement of bounded generators (within the caps)
    yields one linear system over the per-gap counts of stationary
    generators: the log of the product is linear in those counts because
    all of their mutual brackets vanish.  The corner row is doubled so the
    half-unit bracket terms become integers.
    """
    gens = inst.generators
    target = inst.target
    d = inst.dim - 2
    stat = list(part.stationary)
    bnd = list(part.bounded)
    logs = [heis_log(g) for g in gens]
    tlog = heis_log(target)
    v = target.ab

    # exact pairing constraints: stationary factors pair to zero with every
    # dual witness, so the bounded multiset alone must balance the target
    pair_data = [
        (i, [_dot(part.psis[j], part.dual_witnesses[i]) for j in bnd],
         _dot(v, part.dual_witnesses[i]))
        for i in bnd
    ]

    def corner2(l: LieTriple) -> int:
        val = 2 * l.c
        assert val.denominator == 1
        return int(val)

    count_ranges = [range(bounds.per_generator[i] + 1) for i in bnd]
    combos = sorted(itertools.product(*count_ranges), key=sum)
    for counts in combos:
        total = sum(counts)
        if total == 0 and not stat:
            continue
        ok = True
        for _i, pairs, rhs in pair_data:
            if sum(c * p for c, p in zip(counts, pairs)) != rhs:
                ok = False
                break
        if not ok:
            continue
        multiset = tuple(
            sorted(itertools.chain(*([i] * c for i, c in zip(bnd, counts))))
        )
        # additive feasibility depends only on the multiset
        rem = [v[t] - sum(gens[g].ab[t] for g in multiset) for t in range(2 * d)]
        if stat:
            pre_rows = [
                IlpRow([int(part.psis[i][t]) for i in stat], "=", int(rem[t]))
                for t in range(2 * d)
            ]
            if ilp_nonneg(IlpSystem(len(stat), pre_rows)) is None:
                continue
        elif any(r != 0 for r in rem):
            continue

        seen_systems = set()
        for arrangement in _distinct_orderings(multiset):
            s = len(arrangement)
            nvars = len(stat) * (s + 1)
            rows = []
            for t in range(2 * d):
                coeffs = [0] * nvars
                for ii, i in enumerate(stat):
                    val = int(gens[i].ab[t])
                    for g in range(s + 1):
                        coeffs[ii * (s + 1) + g] = val
                rows.append(IlpRow(coeffs, "=", int(rem[t])))
            # doubled corner equation
            br = {
                (i, p): bracket_corner(logs[i], logs[arrangement[p]])
                for i in stat
                for p in range(s)
            }
            coeffs = [0] * nvars
            for ii, i in enumerate(stat):
                base2 = corner2(logs[i])
                for g in range(s + 1):
                    acc = sum((br[(i, p)] for p in range(g, s)), ZERO) - sum(
                        (br[(i, p)] for p in range(g)), ZERO
                    )
                    val = base2 + acc
                    assert val.denominator == 1
                    coeffs[ii * (s + 1) + g] = int(val)
            const = (
                2 * tlog.c
                - sum((2 * logs[p].c for p in arrangement), ZERO)
                - sum(
                    (
                        bracket_corner(logs[arrangement[p]], logs[arrangement[q]])
                        for p in range(s)
                        for q in range(p + 1, s)
                    ),
                    ZERO,
                )
            )
            assert const.denominator == 1
            rows.append(IlpRow(coeffs, "=", int(const)))
            if s == 0:
                rows.append(IlpRow([1] * nvars, ">=", 1))
            key = tuple(rows)
            if key in seen_systems:
                continue
            seen_systems.add(key)
            sol = ilp_nonneg(IlpSystem(nvars, tuple(rows)))
            if sol is None:
                continue
            witness = []
            for g in range(s + 1):
                for ii, i in enumerate(stat):
                    witness += [i + 1] * sol[ii * (s + 1) + g]
                if g < s:
                    witness.append(arrangement[g] + 1)
            assert witness, "empty witness escaped the nonempty constraint"
            prod = heis_product([gens[w - 1] for w in witness])
            assert prod == target, "case-I witness failed verification"
            return Verdict.yes(witness)
    return Verdict.no()


# ---------------------------------------------------------------------------
# Case II: noncommuting stationary generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralPair:
    """Central elements (0, 0, p) with p > 0 and (0, 0, q) with q < 0,
    realizable as products, plus the witnessing generator words."""

    plus: HeisTriple
    minus: HeisTriple
    modulus: int
    plus_word: tuple[int, ...]
    minus_word: tuple[int, ...]


def find_central_elements(
    inst: MembershipInstance, part: GeneratorPartition
) -> CentralPair:
    """Build the two central elements from a noncommuting stationary pair.

    A nonnegative combination of all additive images vanishes with the
    noncommuting pair used at least once; raising every element of such a
    sequence to the power t and multiplying in either order leaves a purely
    central element whose corner grows like t^2 times the ordering skew, so
    doubling t eventually realizes both signs.
    """
    gens = inst.generators
    stat = part.stationary
    pair = None
    for x in range(len(stat)):
        for y in range(x + 1, len(stat)):
            if not _commutes(gens[stat[x]], gens[stat[y]]):
                pair = (stat[x], stat[y])
                break
        if pair:
            break
    if pair is None:
        raise ValueError("no noncommuting stationary pair")
    i0, i1 = pair
    k = len(gens)
    width = len(part.psis[0])
    rows = [
        IlpRow([int(part.psis[i][t]) for i in range(k)], "=", 0) for t in range(width)
    ]
    unit0 = [0] * k
    unit0[i0] = 1
    unit1 = [0] * k
    unit1[i1] = 1
    rows.append(IlpRow(unit0, ">=", 1))
    rows.append(IlpRow(unit1, ">=", 1))
    box = 4
    sol = None
    while sol is None:
        sol = ilp_nonneg(IlpSystem(k, rows, [box] * k))
        box *= 2  # a solution is guaranteed to exist, so this terminates
    base = [i0, i1]
    for i in range(k):
        reps = sol[i] - base.count(i)
        base += [i] * reps
    logs = [heis_log(gens[i]) for i in base]
    skew = sum(
        (
            bracket_corner(logs[p], logs[q])
            for p in range(len(base))
            for q in range(p + 1, len(base))
        ),
        ZERO,
    )
    if skew == 0:
        base[0], base[1] = base[1], base[0]
        skew = -2 * bracket_corner(heis_log(gens[i0]), heis_log(gens[i1]))
    assert skew != 0
    if skew < 0:
        base.reverse()
    t = 1
    while True:
        word_plus = tuple(i + 1 for i in base for _ in range(t))
        word_minus = tuple(i + 1 for i in reversed(base) for _ in range(t))
        m_plus = heis_product([gens[i - 1] for i in word_plus])
        m_minus = heis_product([gens[i - 1] for i in word_minus])
        if m_plus.c > 0 and m_minus.c < 0:
            assert all(x == 0 for x in m_plus.ab + m_minus.ab)
            modulus = gcd(int(m_plus.c), int(-m_minus.c))
            return CentralPair(m_plus, m_minus, modulus, word_plus, word_minus)
        t *= 2


@dataclass(frozen=True)
class ResidueAutomaton:
    """Finite control over (a, b, c) residues mod m with additive registers.

    States are tuples (s_1..s_d, t_1..t_d, u); reading generator l updates
    s += a^l, t += b^l and u += c^l + s . b^l, all mod m, mirroring the
    triple product.  Register weights are the integer (a, b) vectors.
    """

    modulus: int
    dim: int
    generators: tuple[HeisTriple, ...]
    final_state: tuple[int, ...]

    @property
    def initial_state(self) -> tuple[int, ...]:
        return tuple([0] * (2 * self.dim + 1))

    def step(self, state: tuple[int, ...], gen_index: int) -> tuple[int, ...]:
        m = self.modulus
        d = self.dim
        g = self.generators[gen_index]
        s = state[:d]
        t = state[d : 2 * d]
        u = state[2 * d]
        a = [int(x) for x in g.a]
        b = [int(x) for x in g.b]
        c = int(g.c)
        s2 = tuple((s[i] + a[i]) % m for i in range(d))
        t2 = tuple((t[i] + b[i]) % m for i in range(d))
        u2 = (u + c + sum(s[i] * b[i] for i in range(d))) % m
        return s2 + t2 + (u2,)

    def register_weight(self, gen_index: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.generators[gen_index].ab)


def build_residue_automaton(inst: MembershipInstance, modulus: int) -> ResidueAutomaton:
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    d = inst.dim - 2
    tgt = inst.target
    final = tuple(int(x) % modulus for x in tgt.ab) + (int(tgt.c) % modulus,)
    return ResidueAutomaton(modulus, d, inst.generators, final)


def _nonneg_combo(p: int, q: int, delta: int) -> tuple[int, int]:
    """Nonnegative x, y with x*p + y*q = delta, given p > 0 > q and
    gcd(p, -q) dividing delta."""
    g, a, b = _ext_gcd(p, -q)
    assert delta % g == 0
    scale = delta // g
    x0, y0 = a * scale, -b * scale
    step_x, step_y = (-q) // g, p // g
    k = 0
    if x0 < 0:
        k = max(k, -(x0 // step_x))
    if y0 < 0:
        k = max(k, -(y0 // step_y))
    x, y = x0 + k * step_x, y0 + k * step_y
    assert x >= 0 and y >= 0 and x * p + y * q == delta
    return x, y


def _ext_gcd(a: int, b: int):
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def decide_case_noncommutative(inst: MembershipInstance, cp: CentralPair) -> Verdict:
    """Membership via residue-automaton reachability.

    The central pair makes every corner value congruent mod m realizable,
    so the target is reachable iff some product matches its (a, b) exactly
    and its corner mod m.  That is a walk question on the residue automaton
    with additive register weights, answered by the flow engine; a positive
    answer is turned into an explicit witness by walk reconstruction plus
    central padding.
    """
    gens = inst.generators
    target = inst.target
    k = len(gens)
    m = cp.modulus
    psi_t = [int(x) for x in target.ab]

    # letter-count relaxation: some nonnegative combination of the additive
    # images must hit the target's image exactly
    quick = ilp_nonneg(
        IlpSystem(
            k,
            [
                IlpRow([int(g.ab[t]) for g in gens], "=", psi_t[t])
                for t in range(len(psi_t))
            ]
            + [IlpRow([1] * k, ">=", 1)],
        )
    )
    if quick is None:
        return Verdict.no()

    auto = build_residue_automaton(inst, m)
    start = auto.initial_state
    states = {start: 0}
    order = [start]
    edges = []
    qi = 0
    while qi < len(order):
        st = order[qi]
        for l in range(k):
            nxt = auto.step(st, l)
            if nxt not in states:
                states[nxt] = len(order)
                order.append(nxt)
            edges.append((states[st], states[nxt], l))
        qi += 1
    if auto.final_state not in states:
        return Verdict.no()
    # keep only states on some start -> final path
    pred: dict[int, set[int]] = {}
    for (src, dst, _l) in edges:
        pred.setdefault(dst, set()).add(src)
    bwd = {states[auto.final_state]}
    stack = list(bwd)
    while stack:
        v = stack.pop()
        for p in pred.get(v, ()):
            if p not in bwd:
                bwd.add(p)
                stack.append(p)
    keep = sorted(bwd | {states[start]})
    ridx = {s: i for i, s in enumerate(keep)}
    kept_edges = [
        FlowEdge(ridx[src], ridx[dst], l, auto.register_weight(l))
        for (src, dst, l) in edges
        if src in ridx and dst in ridx
    ]
    flow = FlowInstance(
        len(keep),
        kept_edges,
        ridx[states[start]],
        ridx[states[auto.final_state]],
        psi_t,
    )
    usage = flow_reach(flow)
    if usage is None:
        return Verdict.no()
    walk = usage_to_walk(flow, usage)
    word = [flow.edges[j].label + 1 for j in walk]
    prod = heis_product([gens[w - 1] for w in word])
    delta = int(target.c - prod.c)
    x, y = _nonneg_combo(int(cp.plus.c), int(cp.minus.c), delta)
    witness = tuple(word) + cp.plus_word * x + cp.minus_word * y
    final = heis_product([gens[w - 1] for w in witness])
    assert final == target, "case-II witness failed verification"
    return Verdict.yes(witness)


# ---------------------------------------------------------------------------
# Main membership procedure
# ---------------------------------------------------------------------------

def decide_membership(inst: MembershipInstance, explain: bool = False):
    """Decide target membership in the generated sub-semigroup of H(n, Q).

    Returns a Verdict (never UNKNOWN); with explain=True also returns a
    diagnostics dict exposing the scaling factor, the partition, the
    occurrence caps, and for the noncommutative case the central modulus.
    """
    scaled, factor = scale_to_integer(inst)
    part = partition_generators(scaled)
    diag = {
        "scaling": factor,
        "stationary": [i + 1 for i in part.stationary],
        "bounded": [i + 1 for i in part.bounded],
        "dual_witnesses": {
            i + 1: [str(x) for x in u] for i, u in part.dual_witnesses.items()
        },
    }
    ob = occurrence_bounds(scaled, part, scaled.target)
    if isinstance(ob, Verdict):
        diag["case"] = "rejected-by-pairing"
        return (ob, diag) if explain else ob
    diag["occurrence_caps"] = {i + 1: c for i, c in ob.per_generator.items()}
    stat_gens = [scaled.generators[i] for i in part.stationary]
    commutative = all(
        _commutes(stat_gens[x], stat_gens[y])
        for x in range(len(stat_gens))
        for y in range(x + 1, len(stat_gens))
    )
    if commutative:
        diag["case"] = "commutative"
        verdict = decide_case_commutative(scaled, part, ob)
    else:
        diag["case"] = "noncommutative"
        cp = find_central_elements(scaled, part)
        diag["central_modulus"] = cp.modulus
        diag["central_corners"] = (int(cp.plus.c), int(cp.minus.c))
        verdict = decide_case_noncommutative(scaled, cp)
    if verdict.is_yes and verdict.witness:
        prod = heis_product([inst.generators[w - 1] for w in verdict.witness])
        assert prod == inst.target, "witness does not survive unscaling"
    return (verdict, diag) if explain else verdict


# ---------------------------------------------------------------------------
# Pure sequences and the half-space procedure
# ---------------------------------------------------------------------------

def sequence_skew(seq) -> Fraction:
    """Sum of pairwise log-bracket corners, in sequence order."""
    logs = [heis_log(t) for t in seq]
    return sum(
        (
            bracket_corner(logs[i], logs[j])
            for i in range(len(logs))
            for j in range(i + 1, len(logs))
        ),
        ZERO,
    )


def _runs(seq):
    runs = []
    start = 0
    for i in range(1, len(seq) + 1):
        if i == len(seq) or seq[i] != seq[start]:
            runs.append((start, i - 1, seq[start]))
            start = i
    return runs


def purify_sequence(seq):
    """Permute the sequence so each distinct matrix forms a single run,
    without decreasing the skew.

    Two runs of the same matrix are merged by sliding one run across the
    separating segment; the direction is chosen by the sign of the summed
    brackets against that segment, which makes the skew difference
    nonnegative.
    """
    if not seq:
        raise ValueError("empty sequence")
    seq = list(seq)
    while True:
        runs = _runs(seq)
        first = {}
        dup = None
        for idx, (_s, _e, mat) in enumerate(runs):
            if mat in first:
                dup = (first[mat], idx)
                break
            first[mat] = idx
        if dup is None:
            return tuple(seq)
        (i1, j1, mat) = runs[dup[0]]
        (i2, j2, _m) = runs[dup[1]]
        mid = seq[j1 + 1 : i2]
        c = heis_log(mat)
        s = sum((bracket_corner(heis_log(b), c) for b in mid), ZERO)
        if s <= 0:
            seq = seq[: j1 + 1] + seq[i2 : j2 + 1] + mid + seq[j2 + 1 :]
        else:
            seq = seq[:i1] + mid + seq[i1 : j1 + 1] + seq[j2 + 1 :]


@dataclass(frozen=True)
class QuadPoly:
    """Quadratic polynomial over nonnegative integer points, exact."""

    nvars: int
    quad: tuple  # ((i, j), coeff) pairs with i <= j
    lin: tuple[Fraction, ...]
    const: Fraction

    def __init__(self, nvars, quad, lin, const):
        object.__setattr__(self, "nvars", int(nvars))
        qd = tuple(sorted(((i, j), Fraction(c)) for ((i, j), c) in dict(quad).items() if c != 0))
        object.__setattr__(self, "quad", qd)
        object.__setattr__(self, "lin", tuple(Fraction(x) for x in lin))
        object.__setattr__(self, "const", Fraction(const))

    def evaluate(self, point) -> Fraction:
        val = self.const
        for x, c in zip(point, self.lin):
            val += c * x
        for (i, j), c in self.quad:
            val += c * point[i] * point[j]
        return val

    def quad_matrix(self):
        """Symmetric matrix A with value(n) = n^T A n + lin . n + const."""
        a = [[ZERO] * self.nvars for _ in range(self.nvars)]
        for (i, j), c in self.quad:
            if i == j:
                a[i][i] = c
            else:
                a[i][j] = c / 2
                a[j][i] = c / 2
        return a


def quadratic_for_permutation(generators, sigma, u, v) -> QuadPoly:
    """Exact polynomial n -> u^T (A_sigma(1)^n1 ... A_sigma(k)^nk) v."""
    gens = [generators[s] for s in sigma]
    k = len(gens)
    n = gens[0].dim if gens else len(u)
    if len(u) != n or len(v) != n:
        raise ValueError("u and v must have length equal to the matrix dimension")
    u = [Fraction(x) for x in u]
    v = [Fraction(x) for x in v]
    u1, un = u[0], u[n - 1]
    v1, vn = v[0], v[n - 1]
    u_mid, v_mid = u[1 : n - 1], v[1 : n - 1]
    logs = [heis_log(g) for g in gens]
    const = _dot(u, v)
    lin = []
    for c in logs:
        lin.append(u1 * _dot(c.a, v_mid) + vn * _dot(u_mid, c.b) + u1 * vn * c.c)
    quad = {}
    for i in range(k):
        quad[(i, i)] = u1 * vn * _dot(logs[i].a, logs[i].b) / 2
        for j in range(i + 1, k):
            quad[(i, j)] = u1 * vn * _dot(logs[i].a, logs[j].b)
    return QuadPoly(k, quad, lin, const)


def _is_negative_semidefinite(a) -> bool:
    n = len(a)
    m = [[-x for x in row] for row in a]
    active = list(range(n))
    while active:
        piv = None
        for i in active:
            if m[i][i] < 0:
                return False
            if m[i][i] > 0 and piv is None:
                piv = i
        if piv is None:
            return all(m[i][j] == 0 for i in active for j in active)
        active.remove(piv)
        d = m[piv][piv]
        for i in active:
            f = m[i][piv] / d
            for j in active:
                m[i][j] -= f * m[piv][j]
    return True


def _box_points(k, hi, skip_origin):
    for pt in itertools.product(range(hi + 1), repeat=k):
        if skip_origin and all(x == 0 for x in pt):
            continue
        yield pt


def decide_quadratic_geq(
    q: QuadPoly, lam, bound: int = 64, exclude_origin: bool = False
) -> Verdict:
    """Does Q(n) >= lam hold for some nonnegative integer point?

    Sound and partial: YES always carries a checked witness; NO only comes
    with an exact certificate (one-variable analysis, or a concave Q whose
    real maximum over the orthant is below lam); everything else is
    UNKNOWN with the exhausted box bound.
    """
    lam = Fraction(lam)
    k = q.nvars
    if k == 0:
        return Verdict.yes(()) if q.const >= lam else Verdict.no()

    # cheap scan for an early witness
    quick = min(bound, 6)
    for pt in _box_points(k, quick, exclude_origin):
        if q.evaluate(pt) >= lam:
            return Verdict.yes(pt)

    # unbounded growth along a 0/1 ray gives a witness by doubling
    for ray in itertools.product((0, 1), repeat=k):
        if not any(ray):
            continue
        qq = q.evaluate(ray) + q.evaluate(tuple(-x for x in ray))  # 2*(quad part)
        qq = qq / 2 - q.const
        ll = (q.evaluate(ray) - q.evaluate(tuple(-x for x in ray))) / 2
        if qq > 0 or (qq == 0 and ll > 0):
            t = 1
            while True:
                pt = tuple(t * x for x in ray)
                if q.evaluate(pt) >= lam:
                    return Verdict.yes(pt)
                t *= 2

    if k == 1:
        a = dict(q.quad).get((0, 0), ZERO)
        b = q.lin[0]
        lo = 1 if exclude_origin else 0
        if a == 0:
            # growth already handled; maximum sits at the smallest point
            return Verdict.yes((lo,)) if q.evaluate((lo,)) >= lam else Verdict.no()
        # a < 0: concave parabola, integer maximum next to the vertex
        vertex = -b / (2 * a)
        cands = {lo}
        fl = vertex.numerator // vertex.denominator
        for c in (fl, fl + 1):
            if c >= lo:
                cands.add(c)
        best = max(cands, key=lambda c: q.evaluate((c,)))
        if q.evaluate((best,)) >= lam:
            return Verdict.yes((best,))
        return Verdict.no()

    a = q.quad_matrix()
    if _is_negative_semidefinite(a):
        # unbounded concave direction: A d = 0, lin . d >= 1, d >= 0
        rows = []
        for i in range(k):
            rows.append(LinRow([a[i][j] for j in range(k)], "=", 0))
        rows.append(LinRow(q.lin, ">=", 1))
        ray = lp_feasible(LinSystem(k, rows), nonneg=True)
        if ray is not None:
            mult = lcm(*[x.denominator for x in ray])
            ray_i = tuple(int(x * mult) for x in ray)
            t = 1
            while True:
                pt = tuple(t * x for x in ray_i)
                if q.evaluate(pt) >= lam and (not exclude_origin or any(pt)):
                    return Verdict.yes(pt)
                t *= 2
        # bounded concave: exact maximum over the orthant via face LPs
        best = None
        for mask in range(1 << k):
            free = [i for i in range(k) if mask >> i & 1]
            fixed = [i for i in range(k) if not mask >> i & 1]
            rows = []
            width = len(free)
            for f in free:
                rows.append(
                    LinRow([2 * a[f][j] for j in free], "=", -q.lin[f])
                )
            for g in fixed:
                rows.append(
                    LinRow([-2 * a[g][j] for j in free], ">=", q.lin[g])
                )
            pt = lp_feasible(LinSystem(width, rows), nonneg=True)
            if pt is None:
                continue
            full = [ZERO] * k
            for i, f in enumerate(free):
                full[f] = pt[i]
            val = q.evaluate(full)
            if best is None or val > best:
                best = val
        if best is not None and best < lam:
            return Verdict.no()

    for pt in _box_points(k, bound, exclude_origin):
        if q.evaluate(pt) >= lam:
            return Verdict.yes(pt)
    return Verdict.unknown(bound)


def decide_halfspace_heis(generators, u, v, lam, bound: int = 64) -> Verdict:
    """Is there a nonempty product P of generators with u^T P v >= lam?

    Block orderings suffice: any product permutes into one-block-per-matrix
    form without decreasing (or, reversed, without increasing) the only
    order-sensitive entry, so the polynomial of exponents per permutation
    covers the reachable values.  Combines per-permutation answers; any
    YES wins, all NO is NO, otherwise UNKNOWN.
    """
    gens = list(generators)
    if not gens:
        return Verdict.no()
    lam = Fraction(lam)
    unknown = False
    for sigma in itertools.permutations(range(len(gens))):
        q = quadratic_for_permutation(gens, sigma, u, v)
        r = decide_quadratic_geq(q, lam, bound=bound, exclude_origin=True)
        if r.is_yes:
            word = []
            for pos, e in enumerate(r.witness):
                word += [sigma[pos] + 1] * e
            prod = heis_product([gens[w - 1] for w in word])
            uu = [Fraction(x) for x in u]
            vv = [Fraction(x) for x in v]
            n = gens[0].dim
            val = (
                _dot(uu, vv)
                + uu[0] * _dot(prod.a, vv[1 : n - 1])
                + vv[n - 1] * _dot(uu[1 : n - 1], prod.b)
                + uu[0] * vv[n - 1] * prod.c
            )
            assert val >= lam, "half-space witness failed verification"
            return Verdict.yes(word)
        if r.is_unknown:
            unknown = True
    return Verdict.unknown(bound) if unknown else Verdict.no()
