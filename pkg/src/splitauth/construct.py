"""Cyclic construction of splitting designs from base blocks over Z_v.

Points are 1..v.  A block is a tuple of u parts, each part a tuple of c
points; the parts of one block are pairwise disjoint.  Development
translates every base block by each element of Z_v and keeps one copy
of each distinct translate (block equality ignores part order and the
order of points inside a part).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

Part = tuple[int, ...]
Block = tuple[Part, ...]


def _block_key(block: Block) -> frozenset[frozenset[int]]:
    """Canonical form for block equality: a set of sets of points."""
    return frozenset(frozenset(part) for part in block)


def _check_block_shape(block: Block, u: int, c: int, v: int) -> None:
    if len(block) != u:
        raise ValueError(f"base block {block} has {len(block)} parts, expected {u}")
    seen: set[int] = set()
    for part in block:
        if len(part) != c:
            raise ValueError(
                f"base block {block} has a part of size {len(part)}, expected {c}"
            )
        for x in part:
            if not 1 <= x <= v:
                raise ValueError(f"point {x} outside 1..{v} in base block {block}")
            if x in seen:
                raise ValueError(f"point {x} repeated within base block {block}")
            seen.add(x)


@dataclass(frozen=True)
class BaseBlockFamily:
    """Base blocks to be developed cyclically over Z_v.

    May be empty (developing an empty family gives an empty design).
    Every base block must consist of u pairwise-disjoint parts of c
    points each.
    """

    v: int
    u: int
    c: int
    base_blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        if self.v < 1 or self.u < 1 or self.c < 1:
            raise ValueError("v, u, c must be positive")
        if self.c * self.u > self.v:
            raise ValueError(f"block size c*u={self.c * self.u} exceeds v={self.v}")
        for block in self.base_blocks:
            _check_block_shape(block, self.u, self.c, self.v)


@dataclass(frozen=True)
class OrbitInfo:
    """One orbit of the translation action on blocks.

    ``base_index`` identifies which base block generated the orbit
    (0-based position in the family); the orbit is full when its length
    reaches the modulus v.
    """

    base_index: int
    length: int
    is_full: bool


@dataclass(frozen=True)
class SplittingDesign:
    """A concrete splitting design: points 1..v and an explicit block list.

    Blocks form a multiset; duplicates are permitted and count with
    multiplicity.  ``t`` is the intended strength, metadata only --
    nothing is trusted until :func:`splitauth.verify.verify_design`
    confirms it.  ``family`` and ``orbits`` record provenance when the
    design came from cyclic development.
    """

    v: int
    blocks: tuple[Block, ...]
    t: int = 2
    family: BaseBlockFamily | None = None
    orbits: tuple[OrbitInfo, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.v < 1:
            raise ValueError("v must be positive")
        if self.t < 1:
            raise ValueError("t must be positive")

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def orbit_lengths(self) -> tuple[int, ...]:
        return tuple(orbit.length for orbit in self.orbits)


def translate_block(block: Block, j: int, v: int) -> Block:
    """Shift every point of a block by j in Z_v, on points 1..v.

    Part structure and part order are preserved, so developed cells
    keep the wrap-around point order (e.g. (9, 1) rather than (1, 9)).
    """
    return tuple(tuple((x - 1 + j) % v + 1 for x in part) for part in block)


def orbit_of(block: Block, v: int, base_index: int = 0) -> tuple[OrbitInfo, tuple[Block, ...]]:
    """All distinct translates of a block, in translation order j = 0, 1, ...

    Two translates are equal when they have the same parts as an
    unordered set of point sets.
    """
    seen: set[frozenset[frozenset[int]]] = set()
    blocks: list[Block] = []
    for j in range(v):
        translate = translate_block(block, j, v)
        key = _block_key(translate)
        if key not in seen:
            seen.add(key)
            blocks.append(translate)
    info = OrbitInfo(base_index=base_index, length=len(blocks), is_full=len(blocks) == v)
    return info, tuple(blocks)


def develop_cyclic(family: BaseBlockFamily) -> SplittingDesign:
    """Develop every base block over Z_v and concatenate the orbits.

    Block order is: all translates of base block 1 for j = 0, 1, ...,
    then base block 2, and so on.  If two base blocks generate the same
    orbit the blocks repeat and count with multiplicity; deciding
    whether that was intended is the verifier's job, not ours.
    """
    all_blocks: list[Block] = []
    orbits: list[OrbitInfo] = []
    for index, base in enumerate(family.base_blocks):
        info, blocks = orbit_of(base, family.v, base_index=index)
        orbits.append(info)
        all_blocks.extend(blocks)
    return SplittingDesign(
        v=family.v,
        blocks=tuple(all_blocks),
        t=2,
        family=family,
        orbits=tuple(orbits),
    )


class CongruenceCase(enum.Enum):
    """Residue class of v modulo u*(u-1)*c^2, the arithmetic
    precondition for the cyclic constructions implemented here."""

    ONE = "one"
    BLOCK_SIZE = "block size"
    NEITHER = "neither"


def congruence_condition(v: int, c: int, u: int) -> CongruenceCase:
    """Classify v modulo u*(u-1)*c^2.

    ONE (v = 1 mod m) additionally guarantees that every orbit of a
    structurally valid base block is full; BLOCK_SIZE is v = c*u mod m,
    which permits short orbits.
    """
    if u < 2:
        raise ValueError(f"congruence condition requires u >= 2, got u={u}")
    if v < 1 or c < 1:
        raise ValueError("v and c must be positive")
    m = u * (u - 1) * c * c
    if v % m == 1 % m:
        return CongruenceCase.ONE
    if v % m == (c * u) % m:
        return CongruenceCase.BLOCK_SIZE
    return CongruenceCase.NEITHER


def family_u2(c: int, n: int) -> BaseBlockFamily:
    """Base blocks of a 2-(2c²n+1, (2c²n+1)n, 2c, 1) splitting design.

    v = 2*c^2*n + 1 points and u = 2 parts of size c per block.  Base
    block h (1 <= h <= n) pairs {1, ..., c} with the c-term arithmetic
    progression of step c starting at 2*c^2*h - (2*c^2 - c) + 1.
    """
    if c < 1 or n < 1:
        raise ValueError("c and n must be positive")
    v = 2 * c * c * n + 1
    blocks: list[Block] = []
    for h in range(1, n + 1):
        first = tuple(range(1, c + 1))
        start = 2 * c * c * h - (2 * c * c - c) + 1
        second = tuple(start + i * c for i in range(c))
        blocks.append((first, second))
    return BaseBlockFamily(v=v, u=2, c=c, base_blocks=tuple(blocks))
