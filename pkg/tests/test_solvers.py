"""Exact LP, ILP, and flow reachability against brute-force enumeration."""

import itertools
import random
from fractions import Fraction

from matreach.solvers import (
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


def test_lp_feasible_examples():
    sys = LinSystem(2, [LinRow([1, 0], ">=", 0), LinRow([-1, 0], ">=", 0), LinRow([0, 1], ">=", 1)])
    pt = lp_feasible(sys)
    assert pt is not None and pt[0] == 0 and pt[1] >= 1

    sys = LinSystem(1, [LinRow([1], ">=", 1), LinRow([-1], ">=", 0)])
    assert lp_feasible(sys) is None


def test_lp_dual_cone_witness():
    # generators (1,0), (-1,0), (0,1): dual cone is {0} x R>=0
    rows = [
        LinRow([1, 0], ">=", 0),
        LinRow([-1, 0], ">=", 0),
        LinRow([0, 1], ">=", 0),
        LinRow([0, 1], ">=", 1),
    ]
    pt = lp_feasible(LinSystem(2, rows))
    assert pt is not None
    assert pt[0] == 0 and pt[1] >= 1


def test_lp_points_satisfy_rows_exactly(rnd):
    for _ in range(60):
        nv = rnd.randint(1, 4)
        rows = []
        for _ in range(rnd.randint(1, 5)):
            coeffs = [Fraction(rnd.randint(-3, 3)) for _ in range(nv)]
            rows.append(LinRow(coeffs, rnd.choice([">=", "="]), Fraction(rnd.randint(-4, 4))))
        pt = lp_feasible(LinSystem(nv, rows))
        if pt is None:
            continue
        for r in rows:
            val = sum(c * x for c, x in zip(r.coeffs, pt))
            assert val == r.rhs if r.rel == "=" else val >= r.rhs


def test_lp_minimize_statuses():
    sys = LinSystem(1, [LinRow([1], ">=", 2)])
    status, val, pt = lp_minimize(sys, [1])
    assert status == "optimal" and val == 2 and pt[0] == 2
    status, _, _ = lp_minimize(sys, [-1])
    assert status == "unbounded"
    status, _, _ = lp_minimize(LinSystem(1, [LinRow([1], ">=", 1), LinRow([-1], ">=", 0)]), [1])
    assert status == "infeasible"


def _brute_ilp(sys: IlpSystem, box: int):
    for pt in itertools.product(range(box + 1), repeat=sys.nvars):
        ok = True
        for r in sys.rows:
            v = sum(c * x for c, x in zip(r.coeffs, pt))
            if r.rel == "=" and v != r.rhs:
                ok = False
            elif r.rel == ">=" and v < r.rhs:
                ok = False
            elif r.rel == "<=" and v > r.rhs:
                ok = False
            if not ok:
                break
        if ok:
            return pt
    return None


def test_ilp_examples():
    assert ilp_nonneg(IlpSystem(2, [IlpRow([1, -1], "=", 0), IlpRow([0, 0], "=", 5)])) is None
    sol = ilp_nonneg(IlpSystem(2, [IlpRow([3, 5], "=", 8)]))
    assert sol == (1, 1)
    sol = ilp_nonneg(
        IlpSystem(
            3,
            [
                IlpRow([1, 0, -1], "=", 0),
                IlpRow([0, 1, -1], "=", 0),
                IlpRow([1, 0, 0], ">=", 1),
                IlpRow([0, 1, 0], ">=", 1),
            ],
        )
    )
    assert sol == (1, 1, 1)


def test_ilp_agrees_with_brute_force(rnd):
    box = 15
    for _ in range(150):
        nv = rnd.randint(1, 4)
        rows = []
        for _ in range(rnd.randint(1, 3)):
            rows.append(
                IlpRow(
                    [rnd.randint(-3, 3) for _ in range(nv)],
                    rnd.choice(["=", ">=", "<="]),
                    rnd.randint(-6, 10),
                )
            )
        sys = IlpSystem(nv, rows, [box] * nv)
        got = ilp_nonneg(sys)
        want = _brute_ilp(sys, box)
        assert (got is None) == (want is None)
        if got is not None:
            assert _brute_ilp(IlpSystem(nv, rows, got), max(got)) is not None
            for r in rows:
                v = sum(c * x for c, x in zip(r.coeffs, got))
                assert (
                    v == r.rhs
                    if r.rel == "="
                    else (v >= r.rhs if r.rel == ">=" else v <= r.rhs)
                )


def test_flow_examples():
    # single node, three self loops
    inst = FlowInstance(
        1,
        [
            FlowEdge(0, 0, 0, (1, 0)),
            FlowEdge(0, 0, 1, (0, 1)),
            FlowEdge(0, 0, 2, (-1, -1)),
        ],
        0,
        0,
        (0, 1),
    )
    usage = flow_reach(inst)
    assert usage == {1: 1}

    inst = FlowInstance(
        2,
        [FlowEdge(0, 1, 0, (1,)), FlowEdge(1, 1, 1, (3,))],
        0,
        1,
        (7,),
    )
    usage = flow_reach(inst)
    assert usage == {0: 1, 1: 2}
    walk = usage_to_walk(inst, usage)
    assert walk == [0, 1, 1]


def test_flow_disconnected_support_rejected():
    # reaching weight 1 would need the isolated loop at node 1
    inst = FlowInstance(
        2,
        [FlowEdge(0, 0, 0, (0,)), FlowEdge(1, 1, 1, (1,))],
        0,
        0,
        (1,),
    )
    assert flow_reach(inst) is None


def _config_bfs(inst: FlowInstance, clamp: int, max_len: int):
    """Reachable weight vectors at the target via explicit walk search."""
    start = (inst.source, tuple([0] * len(inst.total_weight)))
    seen = {start}
    frontier = [start]
    hits = set()
    for _ in range(max_len):
        nxt = []
        for (node, w) in frontier:
            for e in inst.edges:
                if e.src != node:
                    continue
                w2 = tuple(a + b for a, b in zip(w, e.weight))
                if any(abs(x) > clamp for x in w2):
                    continue
                key = (e.dst, w2)
                if e.dst == inst.target:
                    hits.add(w2)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        frontier = nxt
        if not frontier:
            break
    return hits


def test_flow_agrees_with_config_bfs(rnd):
    for _ in range(40):
        n = rnd.randint(1, 4)
        wdim = rnd.randint(1, 2)
        edges = []
        for idx in range(rnd.randint(1, 6)):
            edges.append(
                FlowEdge(
                    rnd.randrange(n),
                    rnd.randrange(n),
                    idx,
                    tuple(rnd.randint(-2, 2) for _ in range(wdim)),
                )
            )
        inst = FlowInstance(
            n,
            edges,
            rnd.randrange(n),
            rnd.randrange(n),
            tuple(rnd.randint(-6, 6) for _ in range(wdim)),
        )
        reachable = _config_bfs(inst, clamp=14, max_len=12)
        usage = flow_reach(inst)
        if inst.total_weight in reachable:
            assert usage is not None
        if usage is not None:
            # decodes to an actual walk with the right weight total
            walk = usage_to_walk(inst, usage)
            total = [0] * wdim
            for j in walk:
                total = [a + b for a, b in zip(total, inst.edges[j].weight)]
            assert tuple(total) == inst.total_weight
            assert len(walk) >= 1
