"""Super-space data: dimension n = 2p + q, sign, index involution, and the
signed permutation matrix J encoding them.

Index convention: basis indices are 1-based; the involution pairs
(1,2), (3,4), ..., (2p-1, 2p) and fixes 2p+1 .. n.  The sign epsilon = -1
forces q = 0, so n is even in that case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class InvalidSignature(ValueError):
    """Requested (p, q, epsilon) combination does not define a super-space."""


@dataclass(frozen=True)
class SuperSpace:
    p: int
    q: int
    epsilon: int

    @property
    def n(self) -> int:
        return 2 * self.p + self.q

    def bar(self, i: int) -> int:
        """The index involution; pairs (2j-1, 2j) swap, fixed points stay."""
        if i <= 2 * self.p:
            return i + 1 if i % 2 == 1 else i - 1
        return i

    def eps_of(self, i: int) -> int:
        """Per-index sign read off the columns of J: J e_i = eps_of(i) e_{bar i}."""
        return self.epsilon if i < self.bar(i) else 1

    def indices(self) -> range:
        return range(1, self.n + 1)

    def describe(self) -> str:
        return f"(p={self.p}, q={self.q}, eps={self.epsilon:+d}, n={self.n})"


def make_superspace(p: int, q: int, epsilon: int) -> SuperSpace:
    if epsilon not in (1, -1):
        raise InvalidSignature(f"epsilon must be +1 or -1, got {epsilon}")
    if p < 0 or q < 0:
        raise InvalidSignature("p and q must be non-negative")
    if epsilon == -1 and q != 0:
        raise InvalidSignature("epsilon = -1 admits no fixed points (q must be 0)")
    if 2 * p + q == 0:
        raise InvalidSignature("dimension must be positive")
    return SuperSpace(p, q, epsilon)


def super_identity(space: SuperSpace) -> np.ndarray:
    """The matrix J with J_{ij} = delta_{i, bar j} above the diagonal and
    epsilon * delta_{i, bar j} below; exact integer entries.

    Block form: p antidiagonal 2x2 blocks ((0,1),(eps,0)) followed by a
    q x q identity corner (present only when eps = +1).
    """
    n = space.n
    J = np.zeros((n, n), dtype=np.int64)
    for j in range(1, space.p + 1):
        J[2 * j - 2, 2 * j - 1] = 1
        J[2 * j - 1, 2 * j - 2] = space.epsilon
    for i in range(2 * space.p, n):
        J[i, i] = 1
    return J


def super_identity_float(space: SuperSpace) -> np.ndarray:
    return super_identity(space).astype(np.float64)


def eps_vector(space: SuperSpace) -> np.ndarray:
    """eps_of(i) for i = 1..n as an integer vector (0-based array)."""
    return np.array([space.eps_of(i) for i in space.indices()], dtype=np.int64)


def bar_permutation(space: SuperSpace) -> np.ndarray:
    """0-based array mapping index i-1 to bar(i)-1."""
    return np.array([space.bar(i) - 1 for i in space.indices()], dtype=np.int64)


def spaces_with_dimension_at_most(max_n: int,
                                  epsilons: tuple[int, ...] = (1, -1)
                                  ) -> list[SuperSpace]:
    """All super-spaces with 1 <= n <= max_n, in a fixed deterministic order."""
    out = []
    for eps in epsilons:
        if eps == 1:
            for p in range(0, max_n // 2 + 1):
                for q in range(0, max_n - 2 * p + 1):
                    if 2 * p + q >= 1:
                        out.append(SuperSpace(p, q, 1))
        else:
            for p in range(1, max_n // 2 + 1):
                out.append(SuperSpace(p, 0, -1))
    out.sort(key=lambda s: (s.n, -s.epsilon, s.p))
    return out
