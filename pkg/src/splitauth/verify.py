"""Exhaustive verification that a block list is a splitting design.

Verification is exact and brute force: every t-subset of points is
checked against every block.  A block covers a t-subset when each of
its points lies in some part of the block and those parts are pairwise
distinct; two points inside the same part are not covered by it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product

from .construct import Block, SplittingDesign
from .params import DesignParams, lambda_level


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of exhaustive checking.

    ``params`` is filled in only when the design verifies; ``defects``
    lists human-readable reasons otherwise, and ``witness`` pins the
    lexicographically first t-subset whose coverage count is off, as
    (subset, actual count, count of the first subset scanned).
    """

    ok: bool
    params: DesignParams | None
    defects: tuple[str, ...] = ()
    witness: tuple[tuple[int, ...], int, int] | None = None


def _structure(blocks: tuple[Block, ...], v: int) -> tuple[list[str], int, int]:
    """Structural defects of a block list, plus the inferred (c, u).

    (c, u) is read off the first block; every block must consist of u
    pairwise-disjoint parts of c points drawn from 1..v.  Metadata is
    never trusted; mixed shapes are defects.  Returns c = u = 0 when
    the list is empty or the first block is degenerate.
    """
    defects: list[str] = []
    if not blocks:
        return ["design has no blocks"], 0, 0
    first = blocks[0]
    u = len(first)
    c = len(first[0]) if first else 0
    if u == 0 or c == 0:
        return [f"block 1 is degenerate: {first!r}"], 0, 0
    for idx, block in enumerate(blocks, start=1):
        if len(block) != u:
            defects.append(f"block {idx} has {len(block)} parts, expected {u}")
            continue
        seen: set[int] = set()
        for part in block:
            if len(part) != c:
                defects.append(
                    f"block {idx} has a part of size {len(part)}, expected {c}"
                )
            for x in part:
                if not 1 <= x <= v:
                    defects.append(f"block {idx} uses point {x} outside 1..{v}")
                elif x in seen:
                    defects.append(f"block {idx} repeats point {x}")
                seen.add(x)
    return defects, c, u


def check_structure(design: SplittingDesign) -> list[str]:
    """Structural defects of a design's blocks (empty list = clean)."""
    defects, _, _ = _structure(design.blocks, design.v)
    return defects


def covered_subsets(block: Block, t: int) -> list[tuple[int, ...]]:
    """All t-subsets of points that this block covers, as sorted tuples.

    One covered subset per way of picking t mutually distinct parts and
    one point from each; since parts are disjoint, no subset repeats.
    """
    out: list[tuple[int, ...]] = []
    for parts in combinations(block, t):
        for points in product(*parts):
            out.append(tuple(sorted(points)))
    return out


def count_covering_blocks(design: SplittingDesign, points: tuple[int, ...]) -> int:
    """How many blocks cover the given point subset (with multiplicity)."""
    if len(set(points)) != len(points) or not points:
        raise ValueError(f"points {points} are not a nonempty subset")
    for x in points:
        if not 1 <= x <= design.v:
            raise ValueError(f"point {x} outside 1..{design.v}")
    target = tuple(sorted(points))
    t = len(target)
    return sum(target in set(covered_subsets(block, t)) for block in design.blocks)


def verify_design(design: SplittingDesign, t: int) -> VerificationResult:
    """Exhaustively test whether ``design`` is a t-splitting design.

    Checks structure, then counts coverage of every t-subset of 1..v
    and requires one common value lambda >= 1.  The verified parameters
    (t, v, b, c, u, lambda) are returned on success.
    """
    if t < 1:
        raise ValueError(f"strength t={t} must be positive")
    defects, c, u = _structure(design.blocks, design.v)
    if defects:
        return VerificationResult(ok=False, params=None, defects=tuple(defects))
    if t > u:
        raise ValueError(f"strength t={t} exceeds parts per block u={u}")

    counts: Counter[tuple[int, ...]] = Counter()
    for block in design.blocks:
        counts.update(covered_subsets(block, t))

    reference: int | None = None
    for subset in combinations(range(1, design.v + 1), t):
        n = counts.get(subset, 0)
        if reference is None:
            reference = n
        elif n != reference:
            return VerificationResult(
                ok=False,
                params=None,
                defects=(
                    f"subset {subset} is covered {n} times, "
                    f"but {tuple(range(1, t + 1))} is covered {reference} times",
                ),
                witness=(subset, n, reference),
            )
    if not reference:
        first = tuple(range(1, t + 1))
        return VerificationResult(
            ok=False,
            params=None,
            defects=(f"subset {first} is covered 0 times",),
            witness=(first, 0, 0),
        )
    params = DesignParams(t=t, v=design.v, b=design.b, c=c, u=u, lam=reference)
    return VerificationResult(ok=True, params=params)


def downgrade_check(design: SplittingDesign, t: int) -> bool:
    """Whether the design is also an s-splitting design for every s < t,
    with the index the replication formula predicts.

    Requires the design to verify at strength t first.
    """
    top = verify_design(design, t)
    if not top.ok or top.params is None:
        raise ValueError(
            "downgrade check requires a design that verifies at strength t: "
            + "; ".join(top.defects)
        )
    for s in range(1, t):
        expected = lambda_level(top.params, s)
        result = verify_design(design, s)
        if not result.ok or result.params is None or result.params.lam != expected:
            return False
    return True
