"""Command-line interface: decide, canonical, and oracle subcommands.

Requests are JSON documents.  Rationals are written as integers or strings
like "3/4" so parsing round-trips exactly; Heisenberg elements may be
given as [a, b, c] triples (a, b lists, c scalar) or as full n x n
matrices of the expected unitriangular shape.  Exit codes: 0 yes, 1 no,
2 unknown, 3 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .gl2z_sets import (
    HalfSpaceQuery2,
    decide_halfspace_gl2z,
    decide_membership_gl2z,
)
from .heis_decide import MembershipInstance, decide_halfspace_heis, decide_membership
from .heisenberg import DimensionMismatchError, HeisTriple, heis_mul
from .oracle import bfs_oracle
from .verdict import Verdict
from .words import Mat2, NotInGL2ZError, canonical_word

EXIT = {"yes": 0, "no": 1, "unknown": 2}
EXIT_ERROR = 3

PROBLEMS = (
    "heisenberg-membership",
    "heisenberg-halfspace",
    "gl2z-membership",
    "gl2z-halfspace",
    "gl2z-canonical",
)


class RequestError(ValueError):
    pass


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise RequestError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise RequestError(f"bad rational {value!r}: {exc}") from None
    raise RequestError(f"rationals must be integers or 'p/q' strings, got {value!r}")


def format_rational(value: Fraction):
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def parse_heis_triple(doc, dim: int) -> HeisTriple:
    if not isinstance(doc, list):
        raise RequestError("Heisenberg element must be a list")
    if len(doc) == 3 and isinstance(doc[0], list) and not isinstance(doc[2], list):
        a = [parse_rational(x) for x in doc[0]]
        b = [parse_rational(x) for x in doc[1]]
        return HeisTriple(dim, a, b, parse_rational(doc[2]))
    if len(doc) == dim and all(isinstance(row, list) and len(row) == dim for row in doc):
        m = [[parse_rational(x) for x in row] for row in doc]
        shape_error = RequestError(
            "matrix must be unitriangular: ones on the diagonal, free first "
            "row and last column, zeros elsewhere"
        )
        for i in range(dim):
            for j in range(dim):
                free = (i == 0 and j > 0) or (j == dim - 1 and i < dim - 1)
                if free:
                    continue
                expected = Fraction(1 if i == j else 0)
                if m[i][j] != expected:
                    raise shape_error
        a = [m[0][j] for j in range(1, dim - 1)]
        b = [m[i][dim - 1] for i in range(1, dim - 1)]
        return HeisTriple(dim, a, b, m[0][dim - 1])
    raise RequestError("Heisenberg element must be an [a, b, c] triple or an n x n matrix")


def parse_mat2(doc) -> Mat2:
    if (
        not isinstance(doc, list)
        or len(doc) != 2
        or any(not isinstance(r, list) or len(r) != 2 for r in doc)
    ):
        raise RequestError("GL(2,Z) element must be a 2x2 integer matrix")
    vals = [doc[0][0], doc[0][1], doc[1][0], doc[1][1]]
    for v in vals:
        if not isinstance(v, int) or isinstance(v, bool):
            raise RequestError("GL(2,Z) entries must be integers")
    m = Mat2(*vals)
    if m.det() not in (1, -1):
        raise RequestError(f"matrix has determinant {m.det()}, not +-1")
    return m


def parse_request(doc: dict):
    if not isinstance(doc, dict):
        raise RequestError("request must be a JSON object")
    problem = doc.get("problem")
    if problem not in PROBLEMS:
        raise RequestError(f"problem must be one of {', '.join(PROBLEMS)}")
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise RequestError("options must be an object")
    out = {"problem": problem, "options": options}
    if problem.startswith("heisenberg"):
        dim = doc.get("dim", 3)
        if not isinstance(dim, int) or dim < 3:
            raise RequestError("dim must be an integer >= 3")
        gens = doc.get("generators")
        if not isinstance(gens, list) or not gens:
            raise RequestError("generators must be a nonempty list")
        out["generators"] = [parse_heis_triple(g, dim) for g in gens]
        out["dim"] = dim
        if problem == "heisenberg-membership":
            if "target" not in doc:
                raise RequestError("membership request needs a target")
            out["target"] = parse_heis_triple(doc["target"], dim)
        else:
            out["u"] = [parse_rational(x) for x in doc.get("u", [])]
            out["v"] = [parse_rational(x) for x in doc.get("v", [])]
            if len(out["u"]) != dim or len(out["v"]) != dim:
                raise RequestError("u and v must have length dim")
            out["lambda"] = parse_rational(doc.get("lambda", 0))
    elif problem in ("gl2z-membership", "gl2z-halfspace"):
        gens = doc.get("generators")
        if not isinstance(gens, list) or not gens:
            raise RequestError("generators must be a nonempty list")
        out["generators"] = [parse_mat2(g) for g in gens]
        if problem == "gl2z-membership":
            if "target" not in doc:
                raise RequestError("membership request needs a target")
            out["target"] = parse_mat2(doc["target"])
        else:
            u = doc.get("u", [])
            v = doc.get("v", [])
            if len(u) != 2 or len(v) != 2:
                raise RequestError("u and v must be 2-vectors")
            out["u"] = [parse_rational(x) for x in u]
            out["v"] = [parse_rational(x) for x in v]
            out["lambda"] = parse_rational(doc.get("lambda", 0))
    else:  # gl2z-canonical
        if "target" not in doc:
            raise RequestError("canonical request needs a target matrix")
        out["target"] = parse_mat2(doc["target"])
    return out


def run_request(req: dict, want_witness: bool = True, diagnostics: bool = False) -> dict:
    problem = req["problem"]
    options = req.get("options", {})
    bound = int(options.get("bound", 64))
    result: dict = {"problem": problem}
    diag = None

    if problem == "heisenberg-membership":
        inst = MembershipInstance(req["generators"], req["target"])
        verdict, diag = decide_membership(inst, explain=True)
    elif problem == "heisenberg-halfspace":
        verdict = decide_halfspace_heis(
            req["generators"], req["u"], req["v"], req["lambda"], bound=bound
        )
    elif problem == "gl2z-membership":
        verdict = decide_membership_gl2z(req["generators"], req["target"])
    elif problem == "gl2z-halfspace":
        q = HalfSpaceQuery2(req["u"], req["v"], req["lambda"])
        verdict = decide_halfspace_gl2z(req["generators"], q)
    else:  # gl2z-canonical
        word = canonical_word(req["target"])
        return {"problem": problem, "verdict": "yes", "word": word}

    result["verdict"] = verdict.kind
    if verdict.is_yes and verdict.witness is not None and want_witness:
        witness = list(verdict.witness)
        _verify_witness(problem, req, witness)
        result["witness"] = witness
    if verdict.is_unknown and verdict.bound is not None:
        result["search_bound"] = verdict.bound
    if diagnostics and diag is not None:
        result["diagnostics"] = diag
    return result


def _verify_witness(problem: str, req: dict, witness: list):
    """Re-check a witness before it is printed."""
    gens = req["generators"]
    if problem == "heisenberg-membership":
        prod = gens[witness[0] - 1]
        for w in witness[1:]:
            prod = heis_mul(prod, gens[w - 1])
        if prod != req["target"]:
            raise AssertionError("witness does not multiply to the target")
    elif problem == "heisenberg-halfspace":
        prod = gens[witness[0] - 1]
        for w in witness[1:]:
            prod = heis_mul(prod, gens[w - 1])
        dim = req["dim"]
        u, v = req["u"], req["v"]
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(dim):
            rows[i][i] = Fraction(1)
        for j in range(dim - 2):
            rows[0][j + 1] = prod.a[j]
            rows[j + 1][dim - 1] = prod.b[j]
        rows[0][dim - 1] = prod.c
        val = sum(u[i] * rows[i][j] * v[j] for i in range(dim) for j in range(dim))
        if val < req["lambda"]:
            raise AssertionError("witness does not satisfy the inequality")
    elif problem == "gl2z-membership":
        prod = gens[witness[0] - 1]
        for w in witness[1:]:
            prod = prod * gens[w - 1]
        if prod != req["target"]:
            raise AssertionError("witness does not multiply to the target")
    elif problem == "gl2z-halfspace":
        prod = gens[witness[0] - 1]
        for w in witness[1:]:
            prod = prod * gens[w - 1]
        q = HalfSpaceQuery2(req["u"], req["v"], req["lambda"])
        if q.value(prod) < q.lam:
            raise AssertionError("witness does not satisfy the inequality")


def run_oracle(req: dict, depth: int) -> dict:
    problem = req["problem"]
    gens = req["generators"]
    if problem.startswith("heisenberg"):
        result = bfs_oracle(gens, depth, heis_mul)
        elements = [
            {
                "a": [format_rational(x) for x in e.a],
                "b": [format_rational(x) for x in e.b],
                "c": format_rational(e.c),
                "witness": list(w),
            }
            for e, w in sorted(result.elements.items(), key=lambda kv: (len(kv[1]), kv[1]))
        ]
    else:
        result = bfs_oracle(gens, depth, lambda x, y: x * y)
        elements = [
            {"matrix": e.rows(), "witness": list(w)}
            for e, w in sorted(result.elements.items(), key=lambda kv: (len(kv[1]), kv[1]))
        ]
    return {
        "problem": problem,
        "depth": depth,
        "count": len(elements),
        "closed": result.closed,
        "elements": elements,
    }


def _load_request(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise RequestError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise RequestError(f"{path} is not valid JSON: {exc}") from None
    return parse_request(doc)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="matreach",
        description="Exact decision procedures for matrix semigroup reachability",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="decide a request file")
    p_decide.add_argument("request", help="path to a JSON request document")
    p_decide.add_argument("--witness", action="store_true", help="include a witness when available")
    p_decide.add_argument("--diagnostics", action="store_true", help="include solver diagnostics")
    p_decide.add_argument("--bound", type=int, default=None, help="search bound for the quadratic solver")

    p_canon = sub.add_parser("canonical", help="canonical word of a 2x2 matrix")
    p_canon.add_argument("matrix", help='matrix as JSON, e.g. "[[1,1],[0,1]]"')

    p_oracle = sub.add_parser("oracle", help="brute-force product enumeration")
    p_oracle.add_argument("request", help="path to a JSON request document")
    p_oracle.add_argument("--depth", type=int, required=True, help="maximum product length")

    args = parser.parse_args(argv)
    try:
        if args.command == "decide":
            req = _load_request(args.request)
            if args.bound is not None:
                req.setdefault("options", {})["bound"] = args.bound
            result = run_request(req, want_witness=True, diagnostics=args.diagnostics)
            if not args.witness:
                result.pop("witness", None)
            print(json.dumps(result, indent=2, default=str))
            return EXIT[result["verdict"]]
        if args.command == "canonical":
            try:
                doc = json.loads(args.matrix)
            except json.JSONDecodeError as exc:
                raise RequestError(f"matrix is not valid JSON: {exc}") from None
            m = parse_mat2(doc)
            print(json.dumps({"matrix": m.rows(), "word": canonical_word(m)}))
            return 0
        if args.command == "oracle":
            req = _load_request(args.request)
            if args.depth < 1:
                raise RequestError("depth must be >= 1")
            print(json.dumps(run_oracle(req, args.depth), indent=2))
            return 0
    except RequestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (DimensionMismatchError, NotInGL2ZError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
