"""Concrete compact groups attached to a super-space: the twisted orthogonal,
symmetric, hyperoctahedral and bistochastic families, with membership
oracles, seeded samplers and exact Lie-algebra dimension counts.

The defining relation for every family is U unitary with U = J Ubar J^{-1};
the subfamilies add entry or row-sum constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Optional

import numpy as np
from scipy.linalg import expm

from .exactrank import integer_nullity
from .partitions import BoundExceeded
from .superspace import SuperSpace, super_identity, super_identity_float

FAMILIES = ("obar", "sbar", "hbar", "bbar")

MEMBERSHIP_TOL = 1e-10


class GroupModelError(Exception):
    pass


class DimensionMismatch(GroupModelError):
    pass


class Unsupported(GroupModelError):
    pass


class WrongSign(GroupModelError):
    pass


def normalize_family(name: str) -> str:
    key = name.strip().lower().replace("_", "").replace("-", "")
    if key in FAMILIES:
        return key
    raise ValueError(f"unknown family {name!r}; expected one of {FAMILIES}")


@dataclass
class GroupElement:
    matrix: np.ndarray
    family: str
    space: SuperSpace


@dataclass
class MembershipReport:
    family: str
    residuals: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    def is_member(self, tol: float = MEMBERSHIP_TOL) -> bool:
        return self.max_residual <= tol


def membership_residual(U: np.ndarray, family: str,
                        space: SuperSpace) -> MembershipReport:
    """Per-constraint max deviations: unitarity, the J-relation, and the
    family's entry or sum constraints."""
    family = normalize_family(family)
    n = space.n
    U = np.asarray(U, dtype=complex)
    if U.shape != (n, n):
        raise DimensionMismatch(f"expected {n}x{n}, got {U.shape}")
    J = super_identity_float(space)
    res = {
        "unitarity": float(np.max(np.abs(U.conj().T @ U - np.eye(n)))),
        "super_relation": float(np.max(np.abs(U - J @ U.conj() @ J.T))),
    }
    absU = np.abs(U)
    if family == "sbar":
        res["entries_01"] = float(np.max(np.minimum(np.abs(U), np.abs(U - 1))))
    elif family == "hbar":
        res["entries_monomial"] = float(np.max(np.minimum(absU,
                                                          np.abs(absU - 1))))
    elif family == "bbar":
        res["row_sums"] = float(np.max(np.abs(U.sum(axis=1) - 1)))
        res["col_sums"] = float(np.max(np.abs(U.sum(axis=0) - 1)))
    return MembershipReport(family, res)


def conjugate_entry_residual(U: np.ndarray, space: SuperSpace) -> float:
    """Max deviation in conj(U_ij) = eps(i) eps(j) U_{bar i, bar j}."""
    n = space.n
    bar = [space.bar(i) - 1 for i in range(1, n + 1)]
    eps = [space.eps_of(i) for i in range(1, n + 1)]
    worst = 0.0
    for i in range(n):
        for j in range(n):
            lhs = np.conj(U[i, j])
            rhs = eps[i] * eps[j] * U[bar[i], bar[j]]
            worst = max(worst, abs(lhs - rhs))
    return float(worst)


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def _component_reflection(space: SuperSpace, fix_ones: bool) -> Optional[np.ndarray]:
    """A determinant -1 member of the eps=+1 family, used to reach the
    non-identity component; fixes the all-ones vector when asked.

    A within-pair swap commutes with J and fixes ones; with no pairs a swap
    of two fixed points works.  Returns None when the group is connected in
    the relevant sense (n too small for a reflection).
    """
    n = space.n
    S = np.eye(n)
    if space.p >= 1:
        S[[0, 1]] = S[[1, 0]]
        return S
    if space.q >= 2:
        S[[0, 1]] = S[[1, 0]]
        return S
    if not fix_ones and n == 1:
        return -S
    return None


def _lie_projection(space: SuperSpace, rng: np.random.Generator,
                    fix_ones: bool = False) -> np.ndarray:
    """Random element of the Lie algebra: anti-hermitian, J-compatible, and
    annihilating ones (and J ones) when fix_ones is set."""
    n = space.n
    J = super_identity_float(space)
    Y = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    A = (Y - Y.conj().T) / 2
    X = (A + J @ A.conj() @ J.T) / 2
    if fix_ones:
        xi = np.ones(n)
        basis = [xi / np.linalg.norm(xi)]
        jxi = J @ xi
        jxi = jxi - (basis[0] @ jxi) * basis[0]
        norm = np.linalg.norm(jxi)
        if norm > 1e-12:
            basis.append(jxi / norm)
        Q = np.eye(n)
        for b in basis:
            Q -= np.outer(b, b)
        X = Q @ X @ Q
    return X


def _sample_obar(space: SuperSpace, rng: np.random.Generator) -> np.ndarray:
    U = expm(_lie_projection(space, rng))
    if space.epsilon == 1:
        R = _component_reflection(space, fix_ones=False)
        if R is not None and rng.random() < 0.5:
            U = U @ R
    return U


def _sample_sbar(space: SuperSpace, rng: np.random.Generator) -> np.ndarray:
    """Permutation matrices commuting with J: permute the pairs (with
    within-pair flips only at eps=+1) and permute the fixed points."""
    n, p, q = space.n, space.p, space.q
    U = np.zeros((n, n))
    pair_perm = rng.permutation(p)
    for j in range(p):
        i = pair_perm[j]
        flip = space.epsilon == 1 and rng.random() < 0.5
        if flip:
            U[2 * i, 2 * j + 1] = 1
            U[2 * i + 1, 2 * j] = 1
        else:
            U[2 * i, 2 * j] = 1
            U[2 * i + 1, 2 * j + 1] = 1
    fixed_perm = rng.permutation(q)
    for j in range(q):
        U[2 * p + fixed_perm[j], 2 * p + j] = 1
    return U.astype(complex)


def _sample_hbar(space: SuperSpace, rng: np.random.Generator) -> np.ndarray:
    """Block-monomial matrices: one unimodular 2x2 block per pair row/column
    (diagonal type (z, zbar) or antidiagonal type), and a signed permutation
    on the fixed corner."""
    n, p, q = space.n, space.p, space.q
    U = np.zeros((n, n), dtype=complex)
    pair_perm = rng.permutation(p)
    for j in range(p):
        i = pair_perm[j]
        z = np.exp(2j * np.pi * rng.random())
        r, c = 2 * i, 2 * j
        if rng.random() < 0.5:
            U[r, c] = z
            U[r + 1, c + 1] = np.conj(z)
        else:
            U[r, c + 1] = z
            U[r + 1, c] = -np.conj(z) if space.epsilon == -1 else np.conj(z)
    fixed_perm = rng.permutation(q)
    signs = rng.integers(0, 2, size=q) * 2 - 1
    for j in range(q):
        U[2 * p + fixed_perm[j], 2 * p + j] = signs[j]
    return U


def _adapted_basis(space: SuperSpace) -> tuple[np.ndarray, np.ndarray]:
    """Real orthonormal basis splitting R^n into span{ones, J ones} and its
    J-invariant complement (eps = -1): returns (P, Phi) with P the projector
    onto the fixed plane and Phi the n x (n-2) complement basis satisfying
    J Phi = Phi J', J' the smaller super-identity."""
    n = space.n
    J = super_identity_float(space)
    xi = np.ones(n) / np.sqrt(n)
    jxi = J @ xi
    collected = [xi, jxi]
    complement: list[np.ndarray] = []
    for seed in range(n):
        v = np.zeros(n)
        v[seed] = 1.0
        for b in collected:
            v = v - (b @ v) * b
        norm = np.linalg.norm(v)
        if norm < 1e-9:
            continue
        f_odd = v / norm
        f_even = -J @ f_odd
        complement.extend([f_odd, f_even])
        collected.extend([f_odd, f_even])
        if len(complement) == n - 2:
            break
    P = np.outer(xi, xi) + np.outer(jxi, jxi)
    Phi = np.column_stack(complement) if complement else np.zeros((n, 0))
    return P, Phi


def _sample_bbar(space: SuperSpace, rng: np.random.Generator) -> np.ndarray:
    if space.epsilon == -1:
        if space.n < 4:
            raise Unsupported("bistochastic family at eps=-1 needs n >= 4")
        P, Phi = _adapted_basis(space)
        inner = SuperSpace(space.p - 1, 0, -1)
        V = _sample_obar(inner, rng)
        return P.astype(complex) + Phi @ V @ Phi.conj().T
    U = expm(_lie_projection(space, rng, fix_ones=True))
    R = _component_reflection(space, fix_ones=True)
    if R is not None and rng.random() < 0.5:
        U = U @ R
    return U


_SAMPLERS = {
    "obar": _sample_obar,
    "sbar": _sample_sbar,
    "hbar": _sample_hbar,
    "bbar": _sample_bbar,
}


def sample_element(family: str, space: SuperSpace, seed: int) -> GroupElement:
    """One seeded member of the family; independent seeds are independent."""
    rng = np.random.default_rng(seed)
    return GroupElement(_SAMPLERS[normalize_family(family)](space, rng),
                        normalize_family(family), space)


def sample_elements(family: str, space: SuperSpace, count: int,
                    seed: int) -> list[GroupElement]:
    family = normalize_family(family)
    rng = np.random.default_rng(seed)
    sampler = _SAMPLERS[family]
    return [GroupElement(sampler(space, rng), family, space)
            for _ in range(count)]


# ---------------------------------------------------------------------------
# Lie-algebra dimensions (exact integer constraint systems)
# ---------------------------------------------------------------------------

def _lie_constraint_rows(space: SuperSpace, fix_ones: bool) -> list[list[int]]:
    """Integer constraints on X = A + iB (A, B real n x n, unknowns stacked
    A then B): anti-hermitian, J-compatibility, optional kernel conditions.
    """
    n = space.n
    J = super_identity(space)
    rows: list[list[int]] = []
    na = n * n

    def a_idx(i: int, j: int) -> int:
        return i * n + j

    def b_idx(i: int, j: int) -> int:
        return na + i * n + j

    def add(coeffs: dict[int, int]) -> None:
        row = [0] * (2 * na)
        for idx, c in coeffs.items():
            row[idx] += c
        if any(row):
            rows.append(row)

    # anti-hermitian: A^T = -A, B^T = B
    for i in range(n):
        add({a_idx(i, i): 1})
        for j in range(i + 1, n):
            add({a_idx(i, j): 1, a_idx(j, i): 1})
            add({b_idx(i, j): 1, b_idx(j, i): -1})
    # J-compatibility: J A J^{-1} = A and J B J^{-1} = -B; J^{-1} = J^T
    Jinv = J.T
    for i in range(n):
        for j in range(n):
            coeffs_a: dict[int, int] = {a_idx(i, j): -1}
            coeffs_b: dict[int, int] = {b_idx(i, j): 1}
            for r in range(n):
                if J[i, r] == 0:
                    continue
                for s in range(n):
                    if Jinv[s, j] == 0:
                        continue
                    c = int(J[i, r] * Jinv[s, j])
                    coeffs_a[a_idx(r, s)] = coeffs_a.get(a_idx(r, s), 0) + c
                    coeffs_b[b_idx(r, s)] = coeffs_b.get(b_idx(r, s), 0) + c
            add(coeffs_a)
            add(coeffs_b)
    if fix_ones:
        vectors = [np.ones(n, dtype=np.int64)]
        jxi = J @ np.ones(n, dtype=np.int64)
        if not np.array_equal(jxi, vectors[0]):
            vectors.append(jxi)
        for vec in vectors:
            for i in range(n):
                add({a_idx(i, j): int(vec[j]) for j in range(n)})
                add({b_idx(i, j): int(vec[j]) for j in range(n)})
    return rows


def lie_algebra_dimension(family: str, space: SuperSpace) -> int:
    """Real dimension of the family's Lie algebra, as the exact nullity of
    the integer constraint system.  Supported for the connected families:
    the orthogonal one and the bistochastic one."""
    family = normalize_family(family)
    if family not in ("obar", "bbar"):
        raise Unsupported(f"{family} is not a connected (Lie) family here")
    n = space.n
    rows = _lie_constraint_rows(space, fix_ones=(family == "bbar"))
    return integer_nullity(rows, 2 * n * n)


# ---------------------------------------------------------------------------
# structure verification helpers
# ---------------------------------------------------------------------------

@dataclass
class GammaConjugator:
    gamma: np.ndarray
    C: np.ndarray
    space: SuperSpace


def gamma_conjugator(space: SuperSpace) -> GammaConjugator:
    """The 2x2 eighth-root block and its diagonal assembly C with C J C^T = I,
    conjugating the eps=+1 family onto real orthogonal matrices."""
    if space.epsilon != 1:
        raise WrongSign("conjugator exists only at eps = +1")
    rho = np.exp(2j * np.pi / 8)
    gamma = np.array([[rho, rho ** 7], [rho ** 3, rho ** 5]]) / np.sqrt(2)
    blocks = [gamma] * space.p + [np.eye(space.q)]
    n = space.n
    C = np.zeros((n, n), dtype=complex)
    pos = 0
    for blk in blocks:
        size = blk.shape[0]
        C[pos:pos + size, pos:pos + size] = blk
        pos += size
    return GammaConjugator(gamma, C, space)


def enumerate_super_symmetric(space: SuperSpace) -> list[np.ndarray]:
    """All 0/1 permutation matrices satisfying the J-relation, by exhaustion
    over the symmetric group (exact integer check)."""
    n = space.n
    if n > 8:
        raise BoundExceeded("exhaustive enumeration limited to n <= 8")
    J = super_identity(space)
    out = []
    for perm in permutations(range(n)):
        U = np.zeros((n, n), dtype=np.int64)
        for col, row in enumerate(perm):
            U[row, col] = 1
        if np.array_equal(U @ J, J @ U):
            out.append(U)
    return out


def sbar_expected_count(space: SuperSpace) -> int:
    """Group order predicted by the structure isomorphisms."""
    if space.epsilon == 1:
        return (2 ** space.p) * factorial(space.p) * factorial(space.q)
    return factorial(space.p)


@dataclass
class HbarBlockReport:
    """Decomposition of a member of the hyperoctahedral family into its
    2x2 pair blocks and fixed-point corner."""

    pair_block_types: list[tuple[int, int, str]]  # (row-pair, col-pair, kind)
    corner_is_signed_permutation: bool
    max_shape_residual: float


def classify_hbar_blocks(U: np.ndarray, space: SuperSpace,
                         tol: float = MEMBERSHIP_TOL) -> HbarBlockReport:
    """Check the block normal form: every nonzero pair block is diagonal
    (z, zbar) or antidiagonal ((0,z),(zbar,0)) with the eps=-1 sign twist,
    with exactly one nonzero block per block row and column."""
    n, p, q = space.n, space.p, space.q
    worst = 0.0
    types: list[tuple[int, int, str]] = []
    row_used = [0] * p
    col_used = [0] * p
    for i in range(p):
        for j in range(p):
            blk = U[2 * i:2 * i + 2, 2 * j:2 * j + 2]
            if np.max(np.abs(blk)) <= tol:
                continue
            row_used[i] += 1
            col_used[j] += 1
            diag_res = max(abs(blk[0, 1]), abs(blk[1, 0]),
                           abs(abs(blk[0, 0]) - 1),
                           abs(blk[1, 1] - np.conj(blk[0, 0])))
            anti_sign = -1 if space.epsilon == -1 else 1
            anti_res = max(abs(blk[0, 0]), abs(blk[1, 1]),
                           abs(abs(blk[0, 1]) - 1),
                           abs(blk[1, 0] - anti_sign * np.conj(blk[0, 1])))
            if diag_res <= anti_res:
                types.append((i, j, "diagonal"))
                worst = max(worst, diag_res)
            else:
                types.append((i, j, "antidiagonal"))
                worst = max(worst, anti_res)
    if any(c != 1 for c in row_used) or any(c != 1 for c in col_used):
        worst = max(worst, 1.0)
    # cross rectangles must vanish and the corner must be a signed permutation
    if q:
        if p:
            worst = max(worst,
                        float(np.max(np.abs(U[:2 * p, 2 * p:]))),
                        float(np.max(np.abs(U[2 * p:, :2 * p]))))
        corner = U[2 * p:, 2 * p:]
        entry_res = np.minimum(np.abs(corner), np.abs(np.abs(corner) - 1))
        support = np.abs(np.abs(corner) - 1) <= tol
        corner_ok = bool(np.max(np.abs(corner.imag)) <= tol
                         and np.max(entry_res) <= tol
                         and np.all(support.sum(axis=0) == 1)
                         and np.all(support.sum(axis=1) == 1))
    else:
        corner_ok = True
    return HbarBlockReport(types, corner_ok, float(worst))


def build_hbar_element(space: SuperSpace, pair_perm: list[int],
                       phases: list[complex], flips: list[bool],
                       corner: Optional[np.ndarray] = None) -> np.ndarray:
    """Assemble a member of the hyperoctahedral family from structure data
    (used to verify that every normal-form matrix passes membership)."""
    n, p, q = space.n, space.p, space.q
    U = np.zeros((n, n), dtype=complex)
    for j in range(p):
        i = pair_perm[j]
        z = phases[j]
        r, c = 2 * i, 2 * j
        if flips[j]:
            U[r, c + 1] = z
            U[r + 1, c] = -np.conj(z) if space.epsilon == -1 else np.conj(z)
        else:
            U[r, c] = z
            U[r + 1, c + 1] = np.conj(z)
    if q:
        U[2 * p:, 2 * p:] = np.eye(q) if corner is None else corner
    return U
