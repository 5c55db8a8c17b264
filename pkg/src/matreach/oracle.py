"""Brute-force product enumeration used for validation and the CLI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class OracleResult:
    """All nonempty products up to the depth, with shortest witnesses.

    `elements` maps each reachable element to a tuple of 1-based generator
    indices of minimal length producing it.  `closed` reports whether the
    enumeration reached a fixed point before exhausting the depth.
    """

    elements: dict
    closed: bool
    depth: int


def bfs_oracle(generators, depth: int, multiply) -> OracleResult:
    """Breadth-first closure of nonempty products of length <= depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    gens = list(generators)
    elements = {}
    frontier = {}
    for idx, g in enumerate(gens):
        if g not in elements:
            elements[g] = (idx + 1,)
            frontier[g] = (idx + 1,)
    closed = False
    for _level in range(2, depth + 1):
        nxt = {}
        for elem, word in frontier.items():
            for idx, g in enumerate(gens):
                prod = multiply(elem, g)
                if prod not in elements:
                    cand = word + (idx + 1,)
                    elements[prod] = cand
                    nxt[prod] = cand
        frontier = nxt
        if not frontier:
            closed = True
            break
    else:
        # one probe level to detect closure exactly at the depth boundary
        probe = False
        for elem, word in frontier.items():
            for g in gens:
                if multiply(elem, g) not in elements:
                    probe = True
                    break
            if probe:
                break
        closed = not probe and bool(gens)
    return OracleResult(elements, closed, depth)
