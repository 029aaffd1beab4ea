"""Certificate-producing equivalence decisions for closures and G-closures.

A decision first screens with invariants every move fixes (linking numbers
and the residues of Milnor invariants modulo the gcd of their shorter
cyclic subsequences). If those agree it runs a breadth-first search from both
ends over canonical invariant vectors, expanding at most ``budget`` nodes.
A meeting point gives a replayable witness; an orbit exhausted without a
meeting proves the two inputs distinct.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from homotopy.errors import AmbientMismatchError, InputError
from homotopy.homotopyact import Move, scl_generator_set, sg_generator_set
from homotopy.scheme import ComponentDecomposition, ComponentId, IndexSequence, enumerate_all_levels
from homotopy.stringlink import ColoredStringLink, canonical_form

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]


class Verdict(str, Enum):
    EQUIVALENT = "equivalent"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ResidueInvariant:
    sequence: IndexSequence
    modulus: int
    residue: int

    def __post_init__(self) -> None:
        if self.modulus < 0:
            raise InputError(f"modulus must be nonnegative, got {self.modulus}")
        if self.modulus:
            object.__setattr__(self, "residue", self.residue % self.modulus)

    def describe(self) -> Dict[str, object]:
        return {"seq": self.sequence.flattened(), "modulus": self.modulus, "residue": self.residue}

    def __str__(self) -> str:
        if self.modulus:
            return f"mu{self.sequence} = {self.residue} mod {self.modulus}"
        return f"mu{self.sequence} = {self.residue}"


@dataclass(frozen=True)
class Certificate:
    """Why two inputs are distinct: an invariant that differs, or an exhausted orbit."""

    kind: str
    left: Optional[ResidueInvariant] = None
    right: Optional[ResidueInvariant] = None
    orbit_size: int = 0

    def describe(self) -> Dict[str, object]:
        out: Dict[str, object] = {"kind": self.kind}
        if self.left is not None:
            out["left"] = self.left.describe()
            out["right"] = self.right.describe()
        if self.kind == "orbit":
            out["orbit_size"] = self.orbit_size
        return out

    def __str__(self) -> str:
        if self.kind == "orbit":
            return f"orbit of {self.orbit_size} classes exhausted without reaching the target"
        return f"{self.kind}: {self.left} vs {self.right}"


@dataclass(frozen=True)
class SearchStats:
    nodes_expanded: int = 0
    budget: int = 0
    visited: int = 0
    depth: int = 0


@dataclass(frozen=True)
class DecisionOutcome:
    verdict: Verdict
    witness: Tuple[Move, ...] = ()
    certificate: Optional[Certificate] = None
    stats: SearchStats = field(default_factory=SearchStats)

    def describe(self) -> Dict[str, object]:
        return {
            "verdict": self.verdict.value,
            "witness": [m.describe() for m in self.witness],
            "certificate": self.certificate.describe() if self.certificate else None,
            "stats": {
                "nodes_expanded": self.stats.nodes_expanded,
                "budget": self.stats.budget,
                "visited": self.stats.visited,
                "depth": self.stats.depth,
            },
        }


def _cyclic_subsequences(seq: IndexSequence) -> List[Tuple[ComponentId, ...]]:
    entries = seq.entries
    out = []
    for size in range(2, len(entries)):
        for picks in itertools.combinations(entries, size):
            for shift in range(size):
                out.append(picks[shift:] + picks[:shift])
    return out


def delta(a: ColoredStringLink, seq: IndexSequence) -> int:
    """gcd of the invariants of every shorter cyclic subsequence of ``seq`` (0 if none)."""
    seq.validate(a.ambient)
    g = 0
    for sub in _cyclic_subsequences(seq):
        g = math.gcd(g, a.mu(sub))
    return g


def mu_bar(a: ColoredStringLink, seq: IndexSequence) -> ResidueInvariant:
    return ResidueInvariant(seq, delta(a, seq), a.mu(seq))


def residue_vector(a: ColoredStringLink) -> Dict[IndexSequence, ResidueInvariant]:
    return {J: mu_bar(a, J) for J in enumerate_all_levels(a.ambient) if J.level >= 2}


def certificate_screen(a: ColoredStringLink, b: ColoredStringLink) -> Optional[Certificate]:
    """The first screening invariant on which ``a`` and ``b`` differ, if any."""
    va, vb = a.invariant_vector(), b.invariant_vector()
    for J in enumerate_all_levels(a.ambient):
        if J.level == 1 and va[J] != vb[J]:
            return Certificate("linking", ResidueInvariant(J, 0, va[J]), ResidueInvariant(J, 0, vb[J]))
    ra, rb = residue_vector(a), residue_vector(b)
    for J, left in ra.items():
        right = rb[J]
        if (left.modulus, left.residue) != (right.modulus, right.residue):
            return Certificate("residue", left, right)
    return None


def _key(link: ColoredStringLink) -> Key:
    return link.invariant_vector().key()


class _Side:
    """One direction of the bidirectional search."""

    def __init__(self, start: ColoredStringLink) -> None:
        root = _key(start)
        self.parents: Dict[Key, Optional[Tuple[Key, Move]]] = {root: None}
        self.nodes: Dict[Key, ColoredStringLink] = {root: start}
        self.frontier: List[Key] = [root]
        self.depth = 0

    def path(self, key: Key) -> List[Move]:
        """Moves leading from this side's root to ``key``."""
        moves: List[Move] = []
        step = self.parents[key]
        while step is not None:
            key, move = step
            moves.append(move)
            step = self.parents[key]
        moves.reverse()
        return moves


def _expand(link: ColoredStringLink, moves: Sequence[Move]) -> List[Tuple[Move, ColoredStringLink]]:
    return [(move, move.apply(link)) for move in moves]


def _witness(forward: _Side, backward: _Side, key: Key) -> Tuple[Move, ...]:
    there = forward.path(key)
    back = [m.inverse() for m in reversed(backward.path(key))]
    return tuple(there + back)


def _witness_order(witness: Tuple[Move, ...]) -> Tuple:
    return (len(witness), tuple(m.sort_key() for m in witness))


def _search(
    a: ColoredStringLink,
    b: ColoredStringLink,
    moves: Sequence[Move],
    budget: int,
    workers: int,
) -> DecisionOutcome:
    if a.ambient != b.ambient:
        raise AmbientMismatchError(f"cannot compare string links over {a.ambient} and {b.ambient}")
    if budget < 0:
        raise InputError(f"budget must be nonnegative, got {budget}")

    certificate = certificate_screen(a, b)
    if certificate is not None:
        return DecisionOutcome(Verdict.DISTINCT, certificate=certificate, stats=SearchStats(budget=budget))

    forward, backward = _Side(canonical_form(a)), _Side(canonical_form(b))
    if forward.frontier[0] == backward.frontier[0]:
        return DecisionOutcome(Verdict.EQUIVALENT, stats=SearchStats(budget=budget, visited=1))

    expanded = 0
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while True:
            side, other = (forward, backward) if len(forward.frontier) <= len(backward.frontier) else (backward, forward)
            batch = side.frontier[: max(0, budget - expanded)]
            truncated = len(batch) < len(side.frontier)
            if not batch:
                break
            links = [side.nodes[k] for k in batch]
            if pool is not None:
                results = list(pool.map(_expand, links, [moves] * len(links)))
            else:
                results = [_expand(link, moves) for link in links]
            expanded += len(batch)

            meets: List[Key] = []
            next_frontier: List[Key] = []
            for parent, children in zip(batch, results):
                for move, child in children:
                    key = _key(child)
                    if key in side.parents:
                        continue
                    side.parents[key] = (parent, move)
                    side.nodes[key] = child
                    next_frontier.append(key)
                    if key in other.parents:
                        meets.append(key)
            side.frontier = next_frontier
            side.depth += 1
            logger.debug(
                "search level %d: expanded %d, frontier %d, visited %d",
                side.depth,
                expanded,
                len(next_frontier),
                len(forward.parents) + len(backward.parents),
            )
            stats = SearchStats(
                nodes_expanded=expanded,
                budget=budget,
                visited=len(forward.parents) + len(backward.parents),
                depth=forward.depth + backward.depth,
            )

            if meets:
                candidates = [
                    _witness(forward, backward, key) for key in meets
                ]
                return DecisionOutcome(Verdict.EQUIVALENT, witness=min(candidates, key=_witness_order), stats=stats)
            if not next_frontier and not truncated:
                return DecisionOutcome(
                    Verdict.DISTINCT,
                    certificate=Certificate("orbit", orbit_size=len(side.parents)),
                    stats=stats,
                )
            if truncated:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    logger.info("search budget of %d nodes exhausted", budget)
    return DecisionOutcome(
        Verdict.UNKNOWN,
        stats=SearchStats(
            nodes_expanded=expanded,
            budget=budget,
            visited=len(forward.parents) + len(backward.parents),
            depth=forward.depth + backward.depth,
        ),
    )


def closure_equivalent(
    a: ColoredStringLink, b: ColoredStringLink, budget: int = 10_000, workers: int = 1
) -> DecisionOutcome:
    """Decide whether the closures of ``a`` and ``b`` are CL-homotopic."""
    return _search(a, b, scl_generator_set(a.ambient), budget, workers)


def gclosure_equivalent(
    a: ColoredStringLink, b: ColoredStringLink, budget: int = 10_000, workers: int = 1
) -> DecisionOutcome:
    """Decide whether the G-closures of ``a`` and ``b`` are component-homotopic."""
    return _search(a, b, sg_generator_set(a.ambient), budget, workers)


def replay(a: ColoredStringLink, witness: Sequence[Move]) -> ColoredStringLink:
    out = canonical_form(a)
    for move in witness:
        out = move.apply(out)
    return out


def bouquet_reduction(components: Sequence[Tuple[int, int]]) -> ComponentDecomposition:
    """Loops per component after contracting a spanning tree: ``E - V + 1``."""
    if not components:
        raise InputError("a graph needs at least one component")
    counts = []
    for number, (vertices, edges) in enumerate(components, start=1):
        if vertices < 1 or edges < 0:
            raise InputError(f"component {number}: invalid counts V={vertices}, E={edges}")
        if edges < vertices - 1:
            raise InputError(f"component {number}: V={vertices}, E={edges} cannot be connected")
        loops = edges - vertices + 1
        if loops == 0:
            raise InputError(f"component {number}: a tree contracts to a point with no loops")
        counts.append(loops)
    return ComponentDecomposition(tuple(counts))
