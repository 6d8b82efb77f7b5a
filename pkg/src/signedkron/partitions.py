"""Two-row set partitions with even blocks and their categorical operations.

Legs live on an upper row (``u1..uk``) and a lower row (``d1..dl``).
Internally a leg is a pair ``(row, pos)`` with ``row`` 0 for upper and 1 for
lower, positions 1-based.  Partitions are kept in a canonical form so that
structural equality is plain tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

UPPER = 0
LOWER = 1

Leg = tuple[int, int]
Block = tuple[Leg, ...]

DEFAULT_POINT_BOUND = 12

CLASS_NAMES = ("peven", "p2", "nceven", "nc2")


class PartitionError(Exception):
    """Base class for partition construction/operation failures."""


class OddBlock(PartitionError):
    """A block of odd size was supplied; only even blocks are admitted."""


class NotAPartition(PartitionError):
    """Blocks overlap or fail to cover the legs."""


class ArityMismatch(PartitionError):
    """Leg counts of the operands do not line up."""


class OddResultBlock(PartitionError):
    """Composition produced an odd block; signals caller error upstream."""


class BoundExceeded(PartitionError):
    """Requested size exceeds the configured point bound."""


def normalize_class(name: str) -> str:
    """Map user spellings like 'P_even', 'nc_2' to canonical class keys."""
    key = name.strip().lower().replace("_", "").replace("-", "")
    if key in CLASS_NAMES:
        return key
    raise ValueError(f"unknown partition class {name!r}; expected one of "
                     "P_even, P_2, NC_even, NC_2")


def _canonical_blocks(blocks: Iterable[Iterable[Leg]]) -> tuple[Block, ...]:
    bs = [tuple(sorted(b)) for b in blocks]
    bs.sort(key=lambda b: b[0])
    return tuple(bs)


class Partition:
    """A canonical two-row set partition with all blocks of even size.

    Canonical form: legs inside a block are sorted upper-before-lower and
    left-to-right; blocks are listed by their first leg in that same scan
    order.  Two partitions are equal iff their canonical forms coincide.
    """

    __slots__ = ("k", "l", "blocks", "_hash")

    def __init__(self, k: int, l: int, blocks: Iterable[Iterable[Leg]],
                 _validated: bool = False):
        self.k = int(k)
        self.l = int(l)
        self.blocks = _canonical_blocks(blocks)
        if not _validated:
            self._validate()
        self._hash = hash((self.k, self.l, self.blocks))

    def _validate(self) -> None:
        if self.k < 0 or self.l < 0:
            raise NotAPartition("negative leg counts")
        seen: set[Leg] = set()
        for b in self.blocks:
            if len(b) % 2 != 0:
                raise OddBlock(f"block {format_block(b)} has odd size {len(b)}")
            for leg in b:
                row, pos = leg
                if row not in (UPPER, LOWER):
                    raise NotAPartition(f"bad leg row in {leg}")
                limit = self.k if row == UPPER else self.l
                if not 1 <= pos <= limit:
                    raise NotAPartition(f"leg {format_leg(leg)} out of range")
                if leg in seen:
                    raise NotAPartition(f"leg {format_leg(leg)} repeated")
                seen.add(leg)
        if len(seen) != self.k + self.l:
            raise NotAPartition("blocks do not cover all legs")

    @property
    def points(self) -> int:
        return self.k + self.l

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Partition)
                and self.k == other.k and self.l == other.l
                and self.blocks == other.blocks)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Partition") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.k + self.l, self.k, self.blocks)

    def __repr__(self) -> str:
        inner = ",".join("{" + ",".join(format_leg(x) for x in b) + "}"
                         for b in self.blocks)
        return f"Partition({self.k},{self.l};{inner})"

    # convenience wrappers around the module-level operations
    def tensor(self, other: "Partition") -> "Partition":
        return tensor(self, other)

    def involution(self) -> "Partition":
        return involution(self)

    def is_pairing(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)


@dataclass(frozen=True)
class MiddleStats:
    """Components swallowed by the glued middle row during composition.

    ``component_sizes`` counts the glued middle points of each removed
    component, listed in decreasing order.
    """

    removed_components: int
    component_sizes: tuple[int, ...]

    def __post_init__(self):
        assert self.removed_components == len(self.component_sizes)
        assert all(s >= 1 for s in self.component_sizes)


def format_leg(leg: Leg) -> str:
    row, pos = leg
    return ("u" if row == UPPER else "d") + str(pos)


def format_block(block: Block) -> str:
    return "{" + ",".join(format_leg(x) for x in block) + "}"


def parse_leg(text: str) -> Leg:
    text = text.strip().lower()
    if len(text) < 2 or text[0] not in "ud" or not text[1:].isdigit():
        raise NotAPartition(f"cannot parse leg {text!r}")
    return (UPPER if text[0] == "u" else LOWER, int(text[1:]))


def make_partition(k: int, l: int,
                   blocks: Iterable[Iterable[Leg | str]]) -> Partition:
    """Build a canonical Partition; blocks may use (row,pos) pairs or 'u1' strings."""
    converted = []
    for b in blocks:
        legs = [parse_leg(x) if isinstance(x, str) else (int(x[0]), int(x[1]))
                for x in b]
        converted.append(legs)
    return Partition(k, l, converted)


def partition_to_dict(part: Partition) -> dict:
    return {"k": part.k, "l": part.l,
            "blocks": [[format_leg(x) for x in b] for b in part.blocks]}


def partition_from_dict(data: dict) -> Partition:
    return make_partition(data["k"], data["l"], data["blocks"])


def one_block(k: int, l: int) -> Partition:
    """The single-block partition joining all k upper and l lower legs."""
    legs = [(UPPER, i) for i in range(1, k + 1)] + \
           [(LOWER, j) for j in range(1, l + 1)]
    return Partition(k, l, [legs])


def identity_pairing(width: int = 1) -> Partition:
    return Partition(width, width,
                     [[(UPPER, i), (LOWER, i)] for i in range(1, width + 1)])


def cup() -> Partition:
    return one_block(0, 2)


def cap() -> Partition:
    return one_block(2, 0)


def crossing() -> Partition:
    return Partition(2, 2, [[(UPPER, 1), (LOWER, 2)], [(UPPER, 2), (LOWER, 1)]])


def half_commutation_crossing() -> Partition:
    return Partition(3, 3, [[(UPPER, 1), (LOWER, 3)],
                            [(UPPER, 2), (LOWER, 2)],
                            [(UPPER, 3), (LOWER, 1)]])


NAMED_PARTITIONS = {
    "identity": identity_pairing,
    "cup": cup,
    "cap": cap,
    "onethreeblock": lambda: one_block(1, 3),
    "crossing": crossing,
    "halfcommutation": half_commutation_crossing,
}


def named_partition(name: str) -> Partition:
    key = name.strip().lower()
    if key not in NAMED_PARTITIONS:
        raise ValueError(f"unknown named partition {name!r}; "
                         f"choose from {sorted(NAMED_PARTITIONS)}")
    return NAMED_PARTITIONS[key]()


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _set_partitions_rgs(m: int) -> Iterator[list[list[int]]]:
    """All set partitions of {0..m-1} via restricted-growth strings."""
    if m == 0:
        yield []
        return
    rgs = [0] * m
    maxes = [0] * m

    while True:
        blocks: list[list[int]] = [[] for _ in range(max(rgs) + 1)]
        for i, c in enumerate(rgs):
            blocks[c].append(i)
        yield blocks
        # advance the restricted-growth string
        i = m - 1
        while i > 0:
            if rgs[i] <= maxes[i - 1]:
                break
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for j in range(i + 1, m):
            rgs[j] = 0
            maxes[j] = maxes[i]


def _legs_in_scan_order(k: int, l: int) -> list[Leg]:
    return [(UPPER, i) for i in range(1, k + 1)] + \
           [(LOWER, j) for j in range(1, l + 1)]


def boundary_positions(k: int, l: int) -> dict[Leg, int]:
    """Positions along the diagram boundary: u1..uk then d_l..d_1."""
    order: dict[Leg, int] = {}
    for i in range(1, k + 1):
        order[(UPPER, i)] = i - 1
    for j in range(1, l + 1):
        order[(LOWER, j)] = k + (l - j)
    return order


def is_noncrossing(part: Partition) -> bool:
    """True iff no two blocks interleave along the boundary order."""
    pos = boundary_positions(part.k, part.l)
    traces = [sorted(pos[x] for x in b) for b in part.blocks]
    for a in range(len(traces)):
        for b in range(a + 1, len(traces)):
            if _interleaved(traces[a], traces[b]):
                return False
    return True


def _interleaved(xs: Sequence[int], ys: Sequence[int]) -> bool:
    # xs, ys sorted and disjoint; blocks cross iff the merged label pattern
    # alternates at least x..y..x..y, i.e. run-compression has length >= 4
    merged = [(v, 0) for v in xs] + [(v, 1) for v in ys]
    merged.sort()
    runs = 1
    for (_, a), (_, b) in zip(merged, merged[1:]):
        if a != b:
            runs += 1
            if runs >= 4:
                return True
    return False


def _class_filter(name: str, part: Partition) -> bool:
    if name == "peven":
        return True
    if name == "p2":
        return part.is_pairing()
    if name == "nceven":
        return is_noncrossing(part)
    if name == "nc2":
        return part.is_pairing() and is_noncrossing(part)
    raise ValueError(name)


def enumerate_partitions(k: int, l: int, cls: str = "peven",
                         point_bound: int = DEFAULT_POINT_BOUND) -> list[Partition]:
    """All members of the class on (k,l), canonical, sorted, duplicate-free."""
    name = normalize_class(cls)
    if k + l > point_bound:
        raise BoundExceeded(f"k+l = {k + l} exceeds bound {point_bound}")
    if (k + l) % 2 == 1:
        return []
    legs = _legs_in_scan_order(k, l)
    out = []
    for blocks in _set_partitions_rgs(k + l):
        if any(len(b) % 2 for b in blocks):
            continue
        part = Partition(k, l, [[legs[i] for i in b] for b in blocks],
                         _validated=True)
        if _class_filter(name, part):
            out.append(part)
    out.sort()
    return out


def membership_named(part: Partition, cls: str) -> bool:
    """Direct structural membership test for one of the four named classes."""
    return _class_filter(normalize_class(cls), part)


# ---------------------------------------------------------------------------
# categorical operations
# ---------------------------------------------------------------------------

def tensor(left: Partition, right: Partition) -> Partition:
    """Horizontal concatenation; right's legs are shifted past left's."""
    blocks = list(left.blocks)
    for b in right.blocks:
        blocks.append(tuple((row, pos + (left.k if row == UPPER else left.l))
                            for row, pos in b))
    return Partition(left.k + right.k, left.l + right.l, blocks,
                     _validated=True)


def involution(part: Partition) -> Partition:
    """Upside-down turning: rows swapped, block structure mirrored."""
    blocks = [tuple((LOWER if row == UPPER else UPPER, pos) for row, pos in b)
              for b in part.blocks]
    return Partition(part.l, part.k, blocks, _validated=True)


def compose(sigma: Partition, pi: Partition) -> tuple[Partition, MiddleStats]:
    """Vertical concatenation: glue sigma's lower row onto pi's upper row.

    sigma sits on top.  Returns the induced partition on sigma's upper and
    pi's lower rows together with the statistics of the components that were
    confined to the glued middle row.
    """
    if sigma.l != pi.k:
        raise ArityMismatch(
            f"sigma has {sigma.l} lower legs but pi has {pi.k} upper legs")
    m = sigma.l
    # node ids: 0..k-1 upper, k..k+m-1 middle, k+m..k+m+L-1 lower
    k, L = sigma.k, pi.l
    parent = list(range(k + m + L))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    def sigma_node(leg: Leg) -> int:
        row, pos = leg
        return pos - 1 if row == UPPER else k + pos - 1

    def pi_node(leg: Leg) -> int:
        row, pos = leg
        return k + pos - 1 if row == UPPER else k + m + pos - 1

    for b in sigma.blocks:
        first = sigma_node(b[0])
        for leg in b[1:]:
            union(first, sigma_node(leg))
    for b in pi.blocks:
        first = pi_node(b[0])
        for leg in b[1:]:
            union(first, pi_node(leg))

    comps: dict[int, list[int]] = {}
    for node in range(k + m + L):
        comps.setdefault(find(node), []).append(node)

    blocks: list[list[Leg]] = []
    removed: list[int] = []
    for nodes in comps.values():
        outer: list[Leg] = []
        middle = 0
        for node in nodes:
            if node < k:
                outer.append((UPPER, node + 1))
            elif node < k + m:
                middle += 1
            else:
                outer.append((LOWER, node - k - m + 1))
        if outer:
            if len(outer) % 2 != 0:
                raise OddResultBlock(
                    f"gluing produced an odd block of size {len(outer)}")
            blocks.append(outer)
        else:
            removed.append(middle)
    removed.sort(reverse=True)
    result = Partition(k, L, blocks, _validated=True)
    return result, MiddleStats(len(removed), tuple(removed))
