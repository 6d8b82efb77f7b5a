"""Size-bounded closure of partition sets under the categorical operations."""

from __future__ import annotations

from dataclasses import dataclass

from .partitions import (BoundExceeded, Partition, cap, compose, cup,
                         enumerate_partitions, identity_pairing, involution,
                         tensor)

MAX_POINT_BOUND = 12


@dataclass(frozen=True)
class PartitionCategory:
    """A finite slice of a category of partitions, closed within the bound."""

    members: frozenset[Partition]
    generators: tuple[Partition, ...]
    point_bound: int
    base_included: bool = True

    def cells(self) -> dict[tuple[int, int], list[Partition]]:
        out: dict[tuple[int, int], list[Partition]] = {}
        for part in self.members:
            out.setdefault((part.k, part.l), []).append(part)
        for parts in out.values():
            parts.sort()
        return dict(sorted(out.items()))

    def cell(self, k: int, l: int) -> list[Partition]:
        return sorted(p for p in self.members if (p.k, p.l) == (k, l))

    def __contains__(self, part: Partition) -> bool:
        return part in self.members

    def __len__(self) -> int:
        return len(self.members)


def closure(generators: list[Partition] | tuple[Partition, ...] = (),
            point_bound: int = 6,
            include_base: bool = True,
            headroom: int = 2) -> PartitionCategory:
    """Least set containing the seeds and closed under tensor, composition
    and involution, reported on partitions with at most point_bound legs.

    The identity string and the two 2-leg pairings are always seeded when
    include_base is set; without them rotations are not derivable.  The
    worklist runs with ``headroom`` extra legs before truncating the report:
    rotating a partition passes through intermediates two legs wider, so a
    zero-headroom closure cannot reach the nested diagrams of its own top
    cell.  Operations whose result exceeds the working bound are skipped,
    not an error.
    """
    if point_bound > MAX_POINT_BOUND:
        raise BoundExceeded(f"point bound {point_bound} exceeds "
                            f"{MAX_POINT_BOUND}")
    working = point_bound + headroom
    seeds: list[Partition] = []
    if include_base:
        seeds.extend([identity_pairing(), cap(), cup()])
    seeds.extend(generators)
    seeds = [s for s in seeds if s.points <= working]

    members: set[Partition] = set()
    by_upper: dict[int, list[Partition]] = {}
    by_lower: dict[int, list[Partition]] = {}

    def admit(part: Partition, sink: list[Partition]) -> None:
        if part.points <= working and part not in members:
            members.add(part)
            by_upper.setdefault(part.k, []).append(part)
            by_lower.setdefault(part.l, []).append(part)
            sink.append(part)

    frontier: list[Partition] = []
    for s in sorted(set(seeds)):
        admit(s, frontier)

    while frontier:
        frontier.sort()
        current = sorted(members)
        new_frontier: list[Partition] = []
        for x in frontier:
            admit(involution(x), new_frontier)
            for y in current:
                if x.points + y.points <= working:
                    admit(tensor(x, y), new_frontier)
                    admit(tensor(y, x), new_frontier)
            for y in tuple(by_upper.get(x.l, ())):
                if x.k + y.l <= working:
                    admit(compose(x, y)[0], new_frontier)
            for y in tuple(by_lower.get(x.k, ())):
                if y.k + x.l <= working:
                    admit(compose(y, x)[0], new_frontier)
        frontier = new_frontier

    reported = frozenset(p for p in members if p.points <= point_bound)
    return PartitionCategory(reported, tuple(generators),
                             point_bound, include_base)


def enumerated_category(cls: str, point_bound: int = 6) -> frozenset[Partition]:
    """All members of a named class with at most point_bound legs."""
    members: set[Partition] = set()
    for total in range(0, point_bound + 1, 2):
        for k in range(total + 1):
            members.update(enumerate_partitions(k, total - k, cls))
    return frozenset(members)


@dataclass(frozen=True)
class ClosureComparison:
    verdict: str  # 'equal', 'proper-subset', 'proper-superset', 'incomparable'
    missing: tuple[Partition, ...]
    extra: tuple[Partition, ...]


def compare_with_class(category: PartitionCategory,
                       cls: str) -> ClosureComparison:
    """Set comparison of a closure against the enumeration of a named class."""
    reference = enumerated_category(cls, category.point_bound)
    missing = tuple(sorted(reference - category.members))
    extra = tuple(sorted(category.members - reference))
    if not missing and not extra:
        verdict = "equal"
    elif not extra:
        verdict = "proper-subset"
    elif not missing:
        verdict = "proper-superset"
    else:
        verdict = "incomparable"
    return ClosureComparison(verdict, missing, extra)
