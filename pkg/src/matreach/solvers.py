"""Exact rational LP, nonnegative integer linear systems, and flow reachability.

Everything here works over fractions.Fraction.  The simplex uses Bland's
rule, so it never cycles; feasibility and optimality answers are exact.
The integer solver is branch and bound over the exact LP relaxation, with
a finite theoretical box substituted when no explicit variable bounds are
given, so both the "solution" and the "no solution" answers are decisions,
not heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinRow:
    """coeffs . x  REL  rhs with REL in {">=", "="} over free rational x."""

    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def __init__(self, coeffs: Iterable, rel: str, rhs):
        if rel not in (">=", "="):
            raise ValueError(f"bad relation {rel!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))
        object.__setattr__(self, "rel", rel)
        object.__setattr__(self, "rhs", Fraction(rhs))


@dataclass(frozen=True)
class LinSystem:
    nvars: int
    rows: tuple[LinRow, ...]

    def __init__(self, nvars: int, rows: Iterable[LinRow]):
        rows = tuple(rows)
        for r in rows:
            if len(r.coeffs) != nvars:
                raise ValueError("row width does not match nvars")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "rows", rows)


class _Tableau:
    """Dense simplex tableau over Fractions with Bland's rule."""

    def __init__(self, rows, basis, ncols):
        self.rows = rows          # each: list of ncols coeffs + rhs at [-1]
        self.basis = basis        # basis[i] = column basic in row i
        self.ncols = ncols

    def pivot(self, r, c):
        row = self.rows[r]
        piv = row[c]
        inv = ONE / piv
        self.rows[r] = [v * inv for v in row]
        prow = self.rows[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f != 0:
                self.rows[i] = [o - f * p for o, p in zip(other, prow)]
        self.basis[r] = c

    def minimize(self, cost):
        """Minimize cost . x over the tableau; returns (status, value).

        status is "optimal" or "unbounded".  cost has length ncols.
        """
        m = len(self.rows)
        # reduced-cost row: cost eliminated over the basic columns
        z = list(cost) + [ZERO]
        for i in range(m):
            f = z[self.basis[i]]
            if f != 0:
                row = self.rows[i]
                z = [a - f * b for a, b in zip(z, row)]
        while True:
            enter = -1
            for j in range(self.ncols):
                if z[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal", -z[-1]
            leave = -1
            best = None
            for i in range(m):
                a = self.rows[i][enter]
                if a > 0:
                    ratio = self.rows[i][-1] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded", None
            self.pivot(leave, enter)
            f = z[enter]
            row = self.rows[leave]
            z = [a - f * b for a, b in zip(z, row)]

    def solution(self, ncols_orig):
        x = [ZERO] * ncols_orig
        for i, b in enumerate(self.basis):
            if b < ncols_orig:
                x[b] = self.rows[i][-1]
        return x


def _standardize(sys: LinSystem, nonneg: bool):
    """Convert to equality form over nonnegative variables.

    Free variables are split x = x+ - x- unless nonneg is set.  ">=" rows
    get a surplus column.  Returns (rows, ncols, recover) where recover
    maps a standard-form point back to the original variables.
    """
    n = sys.nvars
    width = n if nonneg else 2 * n
    nsurplus = sum(1 for r in sys.rows if r.rel == ">=")
    ncols = width + nsurplus
    rows = []
    si = 0
    for r in sys.rows:
        if nonneg:
            row = list(r.coeffs)
        else:
            row = []
            for c in r.coeffs:
                row.append(c)
            row += [-c for c in r.coeffs]
        row += [ZERO] * nsurplus
        if r.rel == ">=":
            row[width + si] = -ONE
            si += 1
        row.append(r.rhs)
        rows.append(row)

    def recover(x):
        if nonneg:
            return list(x[:n])
        return [x[j] - x[n + j] for j in range(n)]

    return rows, ncols, recover


def _phase1(rows, ncols):
    """Phase-I simplex; returns a feasible tableau or None."""
    m = len(rows)
    work = []
    for row in rows:
        if row[-1] < 0:
            work.append([-v for v in row])
        else:
            work.append(list(row))
    total = ncols + m
    basis = []
    trows = []
    for i, row in enumerate(work):
        t = row[:-1] + [ZERO] * m + [row[-1]]
        t[ncols + i] = ONE
        trows.append(t)
        basis.append(ncols + i)
    tab = _Tableau(trows, basis, total)
    cost = [ZERO] * ncols + [ONE] * m
    status, val = tab.minimize(cost)
    if status != "optimal" or val != 0:
        return None
    # drive remaining artificials out of the basis
    for i in range(m):
        if tab.basis[i] >= ncols:
            piv = -1
            for j in range(ncols):
                if tab.rows[i][j] != 0:
                    piv = j
                    break
            if piv >= 0:
                tab.pivot(i, piv)
    # drop rows still basic in an artificial (redundant constraints)
    keep = [i for i in range(m) if tab.basis[i] < ncols]
    rows2 = [tab.rows[i][:ncols] + [tab.rows[i][-1]] for i in keep]
    basis2 = [tab.basis[i] for i in keep]
    return _Tableau(rows2, basis2, ncols)


def lp_feasible(sys: LinSystem, nonneg: bool = False):
    """Exact feasible point of the system, or None if infeasible."""
    rows, ncols, recover = _standardize(sys, nonneg)
    tab = _phase1(rows, ncols)
    if tab is None:
        return None
    return recover(tab.solution(ncols))


def lp_minimize(sys: LinSystem, objective: Sequence, nonneg: bool = False):
    """Minimize objective . x subject to the system.

    Returns ("infeasible", None, None), ("unbounded", None, None) or
    ("optimal", value, point).
    """
    obj = [Fraction(c) for c in objective]
    if len(obj) != sys.nvars:
        raise ValueError("objective width mismatch")
    rows, ncols, recover = _standardize(sys, nonneg)
    tab = _phase1(rows, ncols)
    if tab is None:
        return "infeasible", None, None
    n = sys.nvars
    if nonneg:
        cost = obj + [ZERO] * (ncols - n)
    else:
        cost = obj + [-c for c in obj] + [ZERO] * (ncols - 2 * n)
    status, val = tab.minimize(cost)
    if status == "unbounded":
        return "unbounded", None, None
    return "optimal", val, recover(tab.solution(ncols))


# ---------------------------------------------------------------------------
# Nonnegative integer linear systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IlpRow:
    """Integer row coeffs . x REL rhs, REL in {"=", ">=", "<="}."""

    coeffs: tuple[int, ...]
    rel: str
    rhs: int

    def __init__(self, coeffs: Iterable[int], rel: str, rhs: int):
        if rel not in ("=", ">=", "<="):
            raise ValueError(f"bad relation {rel!r}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))
        object.__setattr__(self, "rel", rel)
        object.__setattr__(self, "rhs", int(rhs))


@dataclass(frozen=True)
class IlpSystem:
    nvars: int
    rows: tuple[IlpRow, ...]
    upper_bounds: tuple[int | None, ...] = None

    def __init__(self, nvars, rows, upper_bounds=None):
        rows = tuple(rows)
        for r in rows:
            if len(r.coeffs) != nvars:
                raise ValueError("row width does not match nvars")
        if upper_bounds is None:
            upper_bounds = tuple([None] * nvars)
        else:
            upper_bounds = tuple(upper_bounds)
            if len(upper_bounds) != nvars:
                raise ValueError("bounds width mismatch")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "upper_bounds", upper_bounds)


def solution_box_bound(sys: IlpSystem) -> int:
    """Finite bound B: if the system is solvable, a solution fits in [0, B]^n.

    Classical small-solution bound for nonnegative integer linear systems
    in equality form: components of some solution are at most
    n * (m * a)^(2m + 1) where a bounds all coefficient magnitudes.  The
    inequality rows are counted via their implicit slack columns.
    """
    m = len(sys.rows)
    if m == 0:
        return 1
    n = sys.nvars + sum(1 for r in sys.rows if r.rel != "=")
    a = 1
    for r in sys.rows:
        for c in r.coeffs:
            a = max(a, abs(c))
        a = max(a, abs(r.rhs))
    return max(1, n) * (m * a) ** (2 * m + 1)


def _relax(sys: IlpSystem, extra_rows, bounds):
    """LP relaxation over nonnegative rationals with the given box."""
    rows = []
    for r in list(sys.rows) + extra_rows:
        if r.rel == "=":
            rows.append(LinRow(r.coeffs, "=", r.rhs))
        elif r.rel == ">=":
            rows.append(LinRow(r.coeffs, ">=", r.rhs))
        else:
            rows.append(LinRow([-c for c in r.coeffs], ">=", -r.rhs))
    for j, (lo, hi) in enumerate(bounds):
        e = [0] * sys.nvars
        e[j] = 1
        if lo > 0:
            rows.append(LinRow(e, ">=", lo))
        if hi is not None:
            rows.append(LinRow([-c for c in e], ">=", -hi))
    return LinSystem(sys.nvars, rows)


def ilp_nonneg(sys: IlpSystem, extra_rows: Sequence[IlpRow] = ()):
    """A nonnegative integer solution of the system, or None.

    Exact branch and bound on the rational relaxation.  Variables without
    an explicit upper bound get the theoretical solution box, so the None
    answer is a proof of infeasibility, not a timeout.  The relaxation
    minimizes the coordinate sum, which keeps returned witnesses small.
    """
    extra_rows = list(extra_rows)
    box = None
    bounds = []
    for hi in sys.upper_bounds:
        if hi is None:
            if box is None:
                full = IlpSystem(sys.nvars, tuple(list(sys.rows) + extra_rows))
                box = solution_box_bound(full)
            bounds.append((0, box))
        else:
            bounds.append((0, hi))

    if sys.nvars == 0:
        ok = all(
            (r.rel == "=" and r.rhs == 0)
            or (r.rel == ">=" and 0 >= r.rhs)
            or (r.rel == "<=" and 0 <= r.rhs)
            for r in list(sys.rows) + extra_rows
        )
        return () if ok else None

    ones = [ONE] * sys.nvars
    stack = [tuple(bounds)]
    while stack:
        bnds = stack.pop()
        status, _val, point = lp_minimize(_relax(sys, extra_rows, bnds), ones, nonneg=True)
        if status != "optimal":
            continue
        frac_j = -1
        for j, v in enumerate(point):
            if v.denominator != 1:
                frac_j = j
                break
        if frac_j < 0:
            return tuple(int(v) for v in point)
        lo, hi = bnds[frac_j]
        v = point[frac_j]
        floor_v = v.numerator // v.denominator
        upper = list(bnds)
        upper[frac_j] = (floor_v + 1, hi)
        lower = list(bnds)
        lower[frac_j] = (lo, floor_v)
        stack.append(tuple(upper))
        stack.append(tuple(lower))
    return None


# ---------------------------------------------------------------------------
# Walk reachability with vector weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowEdge:
    src: int
    dst: int
    label: int
    weight: tuple[int, ...]

    def __init__(self, src, dst, label, weight):
        object.__setattr__(self, "src", int(src))
        object.__setattr__(self, "dst", int(dst))
        object.__setattr__(self, "label", int(label))
        object.__setattr__(self, "weight", tuple(int(w) for w in weight))


@dataclass(frozen=True)
class FlowInstance:
    """Directed multigraph with weighted edges; asks for a nonempty walk
    source -> target whose edge weights sum to total_weight."""

    n_nodes: int
    edges: tuple[FlowEdge, ...]
    source: int
    target: int
    total_weight: tuple[int, ...]

    def __init__(self, n_nodes, edges, source, target, total_weight):
        object.__setattr__(self, "n_nodes", int(n_nodes))
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "source", int(source))
        object.__setattr__(self, "target", int(target))
        object.__setattr__(self, "total_weight", tuple(int(w) for w in total_weight))


def _flow_rows(inst: FlowInstance):
    ne = len(inst.edges)
    rows = []
    for v in range(inst.n_nodes):
        coeffs = [0] * ne
        for j, e in enumerate(inst.edges):
            if e.dst == v:
                coeffs[j] += 1
            if e.src == v:
                coeffs[j] -= 1
        rhs = (1 if v == inst.target else 0) - (1 if v == inst.source else 0)
        rows.append(IlpRow(coeffs, "=", rhs))
    wdim = len(inst.total_weight)
    for t in range(wdim):
        rows.append(IlpRow([e.weight[t] for e in inst.edges], "=", inst.total_weight[t]))
    rows.append(IlpRow([1] * ne, ">=", 1))
    return rows


def _support_components(inst: FlowInstance, usage):
    """Undirected components of the used-edge subgraph plus the source node."""
    adj = {inst.source: set()}
    for j, cnt in enumerate(usage):
        if cnt > 0:
            e = inst.edges[j]
            adj.setdefault(e.src, set()).add(e.dst)
            adj.setdefault(e.dst, set()).add(e.src)
    comps = []
    seen = set()
    for start in adj:
        if start in seen:
            continue
        comp = set()
        stack = [start]
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj.get(v, ()))
        seen |= comp
        comps.append(comp)
    return comps


def flow_reach(inst: FlowInstance):
    """Edge-usage counts of a walk source -> target realizing the weight goal.

    Solves the balance/weight integer system, then enforces that the used
    edges form one component touching the source (the walk condition).  A
    disconnected solution is eliminated by branching: either the offending
    component's internal edges are all unused, or some edge crossing into
    it is used.  Both branches preserve every genuine walk, so None means
    no walk exists.
    """
    base = _flow_rows(inst)
    sys0 = IlpSystem(len(inst.edges), base)
    ne = len(inst.edges)

    def search(forbidden: frozenset, cuts: tuple):
        extra = list(cuts)
        ub = [0 if j in forbidden else None for j in range(ne)]
        sol = ilp_nonneg(IlpSystem(ne, base, ub), extra)
        if sol is None:
            return None
        comps = _support_components(inst, sol)
        bad = None
        for comp in comps:
            if inst.source not in comp:
                bad = comp
                break
        if bad is None:
            return dict((j, c) for j, c in enumerate(sol) if c > 0)
        inside = frozenset(
            j for j, e in enumerate(inst.edges) if e.src in bad and e.dst in bad
        )
        crossing = [
            1 if (inst.edges[j].src in bad) != (inst.edges[j].dst in bad) else 0
            for j in range(ne)
        ]
        res = search(forbidden | inside, cuts)
        if res is not None:
            return res
        return search(forbidden, cuts + (IlpRow(crossing, ">=", 1),))

    return search(frozenset(), ())


def usage_to_walk(inst: FlowInstance, usage: dict):
    """Expand usage counts into an explicit edge walk (Hierholzer)."""
    remaining = {j: c for j, c in usage.items() if c > 0}
    out = {}
    for j in remaining:
        out.setdefault(inst.edges[j].src, []).append(j)
    path = []
    stack = [(inst.source, None)]
    while stack:
        v, via = stack[-1]
        cand = None
        for j in out.get(v, []):
            if remaining.get(j, 0) > 0:
                cand = j
                break
        if cand is None:
            stack.pop()
            if via is not None:
                path.append(via)
        else:
            remaining[cand] -= 1
            stack.append((inst.edges[cand].dst, cand))
    path.reverse()
    if sum(usage.values()) != len(path):
        raise ValueError("usage counts do not form a single walk")
    v = inst.source
    for j in path:
        if inst.edges[j].src != v:
            raise ValueError("walk reconstruction failed")
        v = inst.edges[j].dst
    if v != inst.target:
        raise ValueError("walk does not end at the target")
    return path
