"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import pytest

from signedkron.partitions import Partition, UPPER, LOWER


def brute_force_set_partitions(points):
    """All set partitions of a list of points, by recursive insertion.

    Independent of the restricted-growth-string enumerator used by the
    package: new points are inserted into every existing block or opened as
    a singleton.
    """
    if not points:
        yield []
        return
    head, rest = points[0], points[1:]
    for sub in brute_force_set_partitions(rest):
        yield [[head]] + [list(b) for b in sub]
        for i in range(len(sub)):
            copied = [list(b) for b in sub]
            copied[i].append(head)
            yield copied


def brute_force_even_partitions(k, l):
    """Even-block two-row partitions via the insertion enumerator."""
    legs = [(UPPER, i) for i in range(1, k + 1)] + \
           [(LOWER, j) for j in range(1, l + 1)]
    out = set()
    for blocks in brute_force_set_partitions(legs):
        if all(len(b) % 2 == 0 for b in blocks):
            out.add(Partition(k, l, blocks))
    return out


@pytest.fixture(scope="session")
def insertion_enumerator():
    return brute_force_even_partitions
