"""Splitting authentication codes.

A code has u source states, v messages (1..v), and a set of encoding
rules.  Under rule e, source s may be sent as any message in the cell
e(s); the cells of one rule are pairwise disjoint, so every valid
message decodes to exactly one source, and all cells share one size c
(the splitting number).  The sender draws the rule, the source, and the
message within the cell at random; all three distributions are exact
rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .construct import Block, SplittingDesign
from .verify import verify_design

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def subscript(i: int) -> str:
    return str(i).translate(_SUBSCRIPTS)


class _Reject:
    """Sentinel for a message that is invalid under the rule in use."""

    def __repr__(self) -> str:
        return "REJECT"


REJECT = _Reject()

SplitDist = tuple[tuple[tuple[Fraction, ...], ...], ...]


def rule_defects(rules: tuple[Block, ...], v: int) -> list[str]:
    """Structural problems of a rule list, without building a code.

    Every rule needs the same number of cells, every cell the same
    size, cells of one rule pairwise disjoint, all messages in 1..v.
    Callers use this to diagnose malformed rule sets before (or instead
    of) constructing a code.
    """
    defects: list[str] = []
    if not rules:
        return ["code has no encoding rules"]
    u = len(rules[0])
    if u == 0:
        return ["rule 1 has no cells"]
    c = len(rules[0][0])
    if c == 0:
        return ["rule 1 has an empty cell"]
    for idx, rule in enumerate(rules, start=1):
        if len(rule) != u:
            defects.append(f"rule {idx} has {len(rule)} cells, expected {u}")
            continue
        seen: set[int] = set()
        for cell in rule:
            if len(cell) != c:
                defects.append(
                    f"rule {idx} has a cell of size {len(cell)}, expected {c}"
                )
            for m in cell:
                if not 1 <= m <= v:
                    defects.append(f"rule {idx} uses message {m} outside 1..{v}")
                elif m in seen:
                    defects.append(f"rule {idx} repeats message {m}")
                seen.add(m)
    return defects


def _uniform(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1, n) for _ in range(n))


def _check_dist(dist: tuple[Fraction, ...], n: int, name: str) -> None:
    if len(dist) != n:
        raise ValueError(f"{name} has {len(dist)} entries, expected {n}")
    if any(p < 0 for p in dist):
        raise ValueError(f"{name} has a negative entry")
    if sum(dist) != 1:
        raise ValueError(f"{name} sums to {sum(dist)}, expected 1")


@dataclass(frozen=True)
class SplittingACode:
    """An authentication code with splitting.

    ``rules[e][s]`` is the cell of messages that rule e+1 assigns to
    source s+1 (the API itself is 1-based).  ``split_dist[e][s]`` gives
    the sending probabilities of the cell's messages in ascending
    message order; None means uniform within every cell.  Empty
    ``key_dist``/``source_dist`` default to uniform.
    """

    u: int
    v: int
    rules: tuple[Block, ...]
    key_dist: tuple[Fraction, ...] = field(default=())
    source_dist: tuple[Fraction, ...] = field(default=())
    split_dist: SplitDist | None = None

    def __post_init__(self) -> None:
        defects = rule_defects(self.rules, self.v)
        if defects:
            raise ValueError("; ".join(defects))
        if len(self.rules[0]) != self.u:
            raise ValueError(
                f"rules have {len(self.rules[0])} cells, expected u={self.u}"
            )
        if not self.key_dist:
            object.__setattr__(self, "key_dist", _uniform(len(self.rules)))
        if not self.source_dist:
            object.__setattr__(self, "source_dist", _uniform(self.u))
        _check_dist(self.key_dist, len(self.rules), "key_dist")
        _check_dist(self.source_dist, self.u, "source_dist")
        if self.split_dist is not None:
            if len(self.split_dist) != len(self.rules):
                raise ValueError(
                    f"split_dist covers {len(self.split_dist)} rules, "
                    f"expected {len(self.rules)}"
                )
            for e, per_source in enumerate(self.split_dist, start=1):
                if len(per_source) != self.u:
                    raise ValueError(
                        f"split_dist of rule {e} covers {len(per_source)} "
                        f"sources, expected {self.u}"
                    )
                for s, weights in enumerate(per_source, start=1):
                    _check_dist(
                        weights,
                        len(self.rules[e - 1][s - 1]),
                        f"split_dist of rule {e}, source {s}",
                    )

    @property
    def num_rules(self) -> int:
        return len(self.rules)

    @property
    def c(self) -> int:
        """The common cell size (splitting number)."""
        return len(self.rules[0][0])

    def cell(self, rule: int, source: int) -> tuple[int, ...]:
        """The cell of rule ``rule`` for source ``source`` (both 1-based)."""
        return self.rules[rule - 1][source - 1]

    def split_weight(self, rule: int, source: int, message: int) -> Fraction:
        """Probability of sending ``message`` given this rule and source."""
        cell = self.cell(rule, source)
        if message not in cell:
            return Fraction(0)
        if self.split_dist is None:
            return Fraction(1, len(cell))
        return self.split_dist[rule - 1][source - 1][sorted(cell).index(message)]


def code_from_design(
    design: SplittingDesign,
    key_dist: tuple[Fraction, ...] = (),
    source_dist: tuple[Fraction, ...] = (),
    split_dist: SplitDist | None = None,
) -> SplittingACode:
    """Use the blocks of a verified splitting design as encoding rules.

    Part s of block e becomes the cell of messages rule e may use for
    source s.  The design must verify exhaustively as a 2-splitting
    design with index 1; anything else is rejected, because the
    security guarantees downstream depend on exactly that structure.
    Distributions default to uniform.
    """
    result = verify_design(design, 2)
    if not result.ok or result.params is None:
        raise ValueError(
            "design does not verify as a 2-splitting design: "
            + "; ".join(result.defects)
        )
    if result.params.lam != 1:
        raise ValueError(
            f"design has index {result.params.lam}, need exactly 1 "
            "for an encoding-rule set"
        )
    return SplittingACode(
        u=result.params.u,
        v=design.v,
        rules=design.blocks,
        key_dist=key_dist,
        source_dist=source_dist,
        split_dist=split_dist,
    )


def encode(code: SplittingACode, rule: int, source: int, pick: int) -> int:
    """The ``pick``-th smallest message of cell (rule, source), 1-based.

    Which of the c candidates is sent is the sender's random draw;
    callers supply the draw explicitly so encoding stays deterministic.
    Cells are indexed in ascending message order regardless of how the
    rule stores them.
    """
    cell = sorted(code.cell(rule, source))
    if not 1 <= pick <= len(cell):
        raise ValueError(f"pick {pick} out of range 1..{len(cell)}")
    return cell[pick - 1]


def decode(code: SplittingACode, rule: int, message: int) -> int | _Reject:
    """The source that ``message`` encodes under ``rule``, or REJECT.

    Uniqueness comes from cell disjointness.  REJECT is a value, not an
    error: it is the receiver refusing an invalid message.
    """
    for s, cell in enumerate(code.rules[rule - 1], start=1):
        if message in cell:
            return s
    return REJECT


def valid_messages(code: SplittingACode, rule: int) -> frozenset[int]:
    """All messages the receiver accepts under ``rule``: the union of
    its cells, of size c*u."""
    return frozenset(m for cell in code.rules[rule - 1] for m in cell)


@dataclass(frozen=True)
class EncodingMatrix:
    """Text form of a code: one row per rule, one column per source.

    Cells keep the order in which the rule stores its messages (for
    cyclically developed rules, the translated order, e.g. {9,1}).
    ``group_sizes`` splits the rows into visual groups, one per orbit
    of a cyclic construction; rendering separates groups with a dashed
    line.
    """

    rule_labels: tuple[str, ...]
    source_labels: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]
    group_sizes: tuple[int, ...] = ()

    def render(self) -> str:
        breaks: set[int] = set()
        acc = 0
        for size in self.group_sizes[:-1]:
            acc += size
            breaks.add(acc)
        lines: list[str] = []
        for i, (label, row) in enumerate(zip(self.rule_labels, self.cells), start=1):
            lines.append(label + " " + " ".join(row))
            if i in breaks:
                lines.append("---")
        return "\n".join(lines)


def render_matrix(
    code: SplittingACode, group_sizes: tuple[int, ...] = ()
) -> EncodingMatrix:
    """Deterministic matrix form of a code, cells in stored order."""
    if group_sizes and sum(group_sizes) != code.num_rules:
        raise ValueError(
            f"group sizes {group_sizes} do not sum to {code.num_rules} rules"
        )
    return EncodingMatrix(
        rule_labels=tuple(f"e{subscript(i)}" for i in range(1, code.num_rules + 1)),
        source_labels=tuple(f"s{subscript(j)}" for j in range(1, code.u + 1)),
        cells=tuple(
            tuple("{" + ",".join(str(m) for m in cell) + "}" for cell in rule)
            for rule in code.rules
        ),
        group_sizes=group_sizes,
    )
