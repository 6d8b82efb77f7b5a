"""Signed Kronecker calculus: the maps T_pi attached to even partitions.

A partition with k upper and l lower legs yields an exact linear map
(C^n)^{tensor k} -> (C^n)^{tensor l} whose entries lie in {-1, 0, +1}.  For a
single block the entry is a product of per-index signs at the odd positions
of each row times an alternating-chain indicator; for several blocks the
entries multiply over blocks, each block reading its own legs left-to-right
within each row.

Multi-indices are encoded big-endian in base n (leftmost tensor factor most
significant), which matches numpy's row-major reshape and np.kron.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product
from typing import Optional, Sequence

import numpy as np

from .partitions import (LOWER, UPPER, ArityMismatch, MiddleStats, OddBlock,
                         Partition, compose)
from .superspace import SuperSpace


class IntertwinerError(Exception):
    pass


class NotProportional(IntertwinerError):
    """The matrix product is not an integer multiple of the composed map."""

    def __init__(self, msg: str, product_entries=None):
        super().__init__(msg)
        self.product_entries = product_entries


class ZeroTarget(IntertwinerError):
    """The composed map is zero, so no scalar can be extracted."""


def delta_alt(space: SuperSpace, seq: Sequence[int]) -> int:
    """1 iff seq_1 = bar(seq_2) = seq_3 = bar(seq_4) = ...; vacuously 1."""
    if not seq:
        return 1
    head = seq[0]
    for t, value in enumerate(seq):
        expect = head if t % 2 == 0 else space.bar(head)
        if value != expect:
            return 0
    return 1


def block_delta(space: SuperSpace, upper: Sequence[int],
                lower: Sequence[int]) -> int:
    """Entry of the one-block map: odd-position signs of both rows times the
    alternating indicator on (lower..., conjugated upper reversed)."""
    if (len(upper) + len(lower)) % 2 != 0:
        raise OddBlock("block delta needs an even number of legs")
    chain = list(lower) + [space.bar(i) for i in reversed(upper)]
    ind = delta_alt(space, chain)
    if ind == 0:
        return 0
    sign = 1
    for t in range(0, len(upper), 2):
        sign *= space.eps_of(upper[t])
    for t in range(0, len(lower), 2):
        sign *= space.eps_of(lower[t])
    return sign


def delta(part: Partition, space: SuperSpace, upper: Sequence[int],
          lower: Sequence[int]) -> int:
    """Product of block deltas; indices are 1-based and match (k,l)."""
    if len(upper) != part.k or len(lower) != part.l:
        raise ArityMismatch(
            f"expected {part.k} upper and {part.l} lower indices")
    value = 1
    for block in part.blocks:
        ui = [upper[pos - 1] for row, pos in block if row == UPPER]
        li = [lower[pos - 1] for row, pos in block if row == LOWER]
        value *= block_delta(space, ui, li)
        if value == 0:
            return 0
    return value


class SignedSparseMap:
    """Exact sparse linear map (C^n)^k -> (C^n)^l with entries in {-1,+1}.

    ``entries`` maps (out_code, in_code) to the entry; absent means 0.
    """

    __slots__ = ("k", "l", "n", "entries", "_by_out")

    def __init__(self, k: int, l: int, n: int,
                 entries: dict[tuple[int, int], int]):
        self.k = k
        self.l = l
        self.n = n
        self.entries = entries
        self._by_out: dict[int, list[tuple[int, int]]] | None = None

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def shape(self) -> tuple[int, int]:
        return (self.n ** self.l, self.n ** self.k)

    def encode(self, indices: Sequence[int]) -> int:
        code = 0
        for i in indices:
            code = code * self.n + (i - 1)
        return code

    def decode(self, code: int, length: int) -> tuple[int, ...]:
        out = []
        for _ in range(length):
            out.append(code % self.n + 1)
            code //= self.n
        return tuple(reversed(out))

    def dense(self) -> np.ndarray:
        rows, cols = self.shape()
        if rows * cols > 20_000_000:
            raise MemoryError("dense realization too large")
        mat = np.zeros((rows, cols), dtype=np.int64)
        for (out_code, in_code), val in self.entries.items():
            mat[out_code, in_code] = val
        return mat

    def adjoint(self) -> "SignedSparseMap":
        """Conjugate transpose; entries are real so this is the transpose."""
        return SignedSparseMap(self.l, self.k, self.n,
                               {(i, j): v for (j, i), v in self.entries.items()})

    def tensor(self, other: "SignedSparseMap") -> "SignedSparseMap":
        if self.n != other.n:
            raise ArityMismatch("tensor factors live over different dimensions")
        n = self.n
        ok, ol = other.k, other.l
        shift_out, shift_in = n ** ol, n ** ok
        entries = {}
        for (j1, i1), v1 in self.entries.items():
            base_out = j1 * shift_out
            base_in = i1 * shift_in
            for (j2, i2), v2 in other.entries.items():
                entries[(base_out + j2, base_in + i2)] = v1 * v2
        return SignedSparseMap(self.k + ok, self.l + ol, n, entries)

    def apply_dense(self, mat: np.ndarray) -> np.ndarray:
        """Multiply self (as a matrix) by a dense matrix on the right."""
        rows, _ = self.shape()
        out = np.zeros((rows, mat.shape[1]), dtype=mat.dtype)
        for (j, i), v in self.entries.items():
            out[j] += v * mat[i]
        return out

    def grouped_by_out(self) -> dict[int, list[tuple[int, int]]]:
        """Entries grouped by output code; cached for repeated products."""
        if self._by_out is None:
            by_out: dict[int, list[tuple[int, int]]] = {}
            for (j, i), v in self.entries.items():
                by_out.setdefault(j, []).append((i, v))
            self._by_out = by_out
        return self._by_out

    def to_records(self) -> list[dict]:
        recs = []
        for (j, i), v in sorted(self.entries.items()):
            recs.append({"out": list(self.decode(j, self.l)),
                         "in": list(self.decode(i, self.k)),
                         "val": v})
        return recs

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SignedSparseMap)
                and (self.k, self.l, self.n) == (other.k, other.l, other.n)
                and self.entries == other.entries)


def _block_rules(part: Partition):
    """Per block: assignment rules (row, pos, plain?) and sign legs.

    Within a block the alternating chain reads lower legs left-to-right then
    conjugated upper legs right-to-left; chain position parity decides
    whether a leg carries the free index or its bar.
    """
    rules = []
    for block in part.blocks:
        up = [pos for row, pos in block if row == UPPER]
        lo = [pos for row, pos in block if row == LOWER]
        kb, lb = len(up), len(lo)
        assign = []
        for t, pos in enumerate(lo, start=1):
            assign.append((LOWER, pos, t % 2 == 1))
        for s, pos in enumerate(up, start=1):
            chain_pos = lb + (kb + 1 - s)
            # chain holds bar(i_s): chain value v means i_s = bar(v)
            assign.append((UPPER, pos, chain_pos % 2 == 0))
        sign_legs = [(LOWER, pos) for t, pos in enumerate(lo, start=1) if t % 2]
        sign_legs += [(UPPER, pos) for s, pos in enumerate(up, start=1) if s % 2]
        rules.append((assign, sign_legs))
    return rules


@lru_cache(maxsize=None)
def build_T(part: Partition, space: SuperSpace) -> SignedSparseMap:
    """The signed sparse map attached to an even partition.

    Each block contributes one free index ranging over 1..n, so the map has
    exactly n^{#blocks} nonzero entries.
    """
    n = space.n
    k, l = part.k, part.l
    rules = _block_rules(part)
    bar = [0] + [space.bar(i) for i in range(1, n + 1)]
    eps = [0] + [space.eps_of(i) for i in range(1, n + 1)]
    entries: dict[tuple[int, int], int] = {}
    uppers = [0] * (k + 1)
    lowers = [0] * (l + 1)
    for free in iter_product(range(1, n + 1), repeat=len(rules)):
        sign = 1
        for (assign, sign_legs), v in zip(rules, free):
            w = bar[v]
            for row, pos, plain in assign:
                val = v if plain else w
                if row == UPPER:
                    uppers[pos] = val
                else:
                    lowers[pos] = val
            for row, pos in sign_legs:
                sign *= eps[uppers[pos] if row == UPPER else lowers[pos]]
        in_code = 0
        for t in range(1, k + 1):
            in_code = in_code * n + (uppers[t] - 1)
        out_code = 0
        for t in range(1, l + 1):
            out_code = out_code * n + (lowers[t] - 1)
        entries[(out_code, in_code)] = sign
    return SignedSparseMap(k, l, n, entries)


def sparse_product(pi_map: SignedSparseMap,
                   sigma_map: SignedSparseMap) -> dict[tuple[int, int], int]:
    """Exact entries of the matrix product T_pi . T_sigma (zeros pruned)."""
    if sigma_map.l != pi_map.k or sigma_map.n != pi_map.n:
        raise ArityMismatch("maps are not composable")
    by_out = sigma_map.grouped_by_out()
    acc: dict[tuple[int, int], int] = {}
    get = by_out.get
    for (J, j), w in pi_map.entries.items():
        hits = get(j)
        if hits:
            for i, v in hits:
                key = (J, i)
                acc[key] = acc.get(key, 0) + w * v
    return {key: v for key, v in acc.items() if v}


def classify_product(pi_map: SignedSparseMap, sigma_map: SignedSparseMap,
                     target: SignedSparseMap) -> tuple[str, Optional[int]]:
    """Compare T_pi . T_sigma against the glued map, entry by entry.

    Returns ('scalar', s) when the product equals s * target with s != 0,
    ('zero', 0) when the product vanishes identically, and
    ('not_proportional', None) otherwise.
    """
    product = sparse_product(pi_map, sigma_map)
    if not product:
        return ("zero", 0)
    tentries = target.entries
    if len(product) != len(tentries):
        return ("not_proportional", None)
    scalar = None
    for key, v in product.items():
        t = tentries.get(key)
        if t is None:
            return ("not_proportional", None)
        s = v * t  # t is +-1, so this is v / t
        if scalar is None:
            scalar = s
        elif scalar != s:
            return ("not_proportional", None)
    return ("scalar", scalar)


@dataclass(frozen=True)
class CompositionScalar:
    """Measured scalar s with T_pi T_sigma = s . T_[sigma over pi].

    ``exponent`` is d with |s| = n^d, or None when s = 0.  ``sign`` is the
    sign of s (+1 when s = 0).
    """

    scalar: int
    sign: int
    exponent: Optional[int]
    sigma: Partition
    pi: Partition
    space: SuperSpace
    middle: MiddleStats


@dataclass(frozen=True)
class CompositionReport:
    """Non-raising classification of one vertical composition."""

    verdict: str  # 'scalar' (s != 0), 'zero', or 'not_proportional'
    scalar: Optional[int]
    exponent: Optional[int]
    result: Partition
    middle: MiddleStats


def _power_exponent(value: int, base: int) -> Optional[int]:
    value = abs(value)
    if value == 0:
        return None
    if value == 1:
        return 0
    if base < 2:
        return None
    d = 0
    while value % base == 0 and value > 1:
        value //= base
        d += 1
    return d if value == 1 else None


def composition_report(sigma: Partition, pi: Partition,
                       space: SuperSpace) -> CompositionReport:
    """Multiply T_pi by T_sigma exactly and compare against the glued map."""
    result, middle = compose(sigma, pi)
    target = build_T(result, space)
    verdict, scalar = classify_product(build_T(pi, space),
                                       build_T(sigma, space), target)
    if verdict == "scalar":
        return CompositionReport("scalar", scalar,
                                 _power_exponent(scalar, space.n),
                                 result, middle)
    if verdict == "zero":
        return CompositionReport("zero", 0, None, result, middle)
    return CompositionReport("not_proportional", None, None, result, middle)


def measure_composition_scalar(sigma: Partition, pi: Partition,
                               space: SuperSpace) -> CompositionScalar:
    """Strict scalar extraction; raises NotProportional on law violation."""
    result, middle = compose(sigma, pi)
    target = build_T(result, space)
    if not target.entries:
        raise ZeroTarget("composed map is zero; scalar undefined")
    report = composition_report(sigma, pi, space)
    if report.verdict == "not_proportional":
        raise NotProportional(
            f"product of {pi!r} . {sigma!r} over {space.describe()} is not "
            f"a scalar multiple of the glued map",
            product_entries=sparse_product(build_T(pi, space),
                                           build_T(sigma, space)))
    scalar = report.scalar or 0
    sign = 1 if scalar >= 0 else -1
    return CompositionScalar(scalar, sign, report.exponent,
                             sigma, pi, space, middle)


def clear_map_cache() -> None:
    build_T.cache_clear()
