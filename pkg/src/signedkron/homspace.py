"""Schur-Weyl comparisons: exact spans of the partition maps versus sampled
commutants of the concrete groups.

The span side is integer-exact (Gram matrix ranks over the rationals); the
commutant side is a numerical nullspace over sampled group elements and
their short words, with a doubling-stability guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .exactrank import integer_rank
from .groups import Unsupported, normalize_family, sample_elements
from .intertwiners import build_T
from .partitions import (ArityMismatch, BoundExceeded, Partition,
                         enumerate_partitions, normalize_class)
from .superspace import SuperSpace

COMMUTANT_STATE_BOUND = 5000
SPAN_POINT_BOUND = 8
SPAN_DIM_BOUND = 6
CONTAINMENT_TOL = 1e-10
RANK_GAP_TOL = 1e-8

ALLOWED_PAIRINGS = {("obar", "p2"), ("hbar", "peven")}


class StabilityFailure(Exception):
    """Commutant dimension did not survive doubling the sample count."""


@dataclass(frozen=True)
class HomReport:
    family: str
    cls: str
    k: int
    l: int
    space: SuperSpace
    partition_count: int
    span_rank: int
    commutant_dim: int
    containment_max_residual: float
    verdict: str  # 'equal', 'span-deficient', or 'mismatch'


def _check_pairing(family: str, cls: str) -> tuple[str, str]:
    family, cls = normalize_family(family), normalize_class(cls)
    if (family, cls) not in ALLOWED_PAIRINGS:
        raise Unsupported(
            f"no sampling oracle for family {family!r} with class {cls!r}")
    return family, cls


def gram_matrix(parts: Sequence[Partition], space: SuperSpace,
                k: int, l: int) -> list[list[int]]:
    """G[a][b] = trace(T_a^* T_b), exact integers via sparse dot products."""
    for part in parts:
        if (part.k, part.l) != (k, l):
            raise ArityMismatch(f"{part!r} is not on ({k},{l})")
    maps = [build_T(part, space) for part in parts]
    m = len(maps)
    G = [[0] * m for _ in range(m)]
    for a in range(m):
        ea = maps[a].entries
        for b in range(a, m):
            eb = maps[b].entries
            small, big = (ea, eb) if len(ea) <= len(eb) else (eb, ea)
            total = 0
            for key, v in small.items():
                w = big.get(key)
                if w is not None:
                    total += v * w
            G[a][b] = G[b][a] = total
    return G


def span_dimension(cls: str, k: int, l: int, space: SuperSpace) -> int:
    """Exact rank of the Gram matrix of the class's maps on (k,l)."""
    if k + l > SPAN_POINT_BOUND or space.n > SPAN_DIM_BOUND:
        raise BoundExceeded(
            f"span dimension limited to k+l <= {SPAN_POINT_BOUND}, "
            f"n <= {SPAN_DIM_BOUND}")
    parts = enumerate_partitions(k, l, cls)
    if not parts:
        return 0
    return integer_rank(gram_matrix(parts, space, k, l))


def in_span(vector_entries: dict[tuple[int, int], int],
            parts: Sequence[Partition], space: SuperSpace,
            k: int, l: int) -> bool:
    """Exact test whether a sparse integer matrix lies in span{T_pi}.

    Adjoining the vector must not raise the Gram rank.
    """
    maps = [build_T(part, space) for part in parts]
    base = gram_matrix(parts, space, k, l)
    m = len(maps)
    bordered = [row[:] for row in base]
    last_row = []
    for a in range(m):
        ea = maps[a].entries
        dot = sum(v * vector_entries.get(key, 0) for key, v in ea.items())
        bordered[a].append(dot)
        last_row.append(dot)
    last_row.append(sum(v * v for v in vector_entries.values()))
    bordered.append(last_row)
    return integer_rank(bordered) == integer_rank(base)


# ---------------------------------------------------------------------------
# sampled commutants
# ---------------------------------------------------------------------------

def _word_closure(matrices: list[np.ndarray],
                  rng: np.random.Generator) -> list[np.ndarray]:
    """The samples plus a few products of length two and three."""
    out = list(matrices)
    count = len(matrices)
    idx = rng.integers(0, count, size=(max(count // 2, 1), 3))
    for a, b, c in idx:
        out.append(matrices[a] @ matrices[b])
        out.append(matrices[a] @ matrices[b] @ matrices[c])
    return out


def _sampled_matrices(family: str, space: SuperSpace, samples: int,
                      seed: int) -> list[np.ndarray]:
    elements = sample_elements(family, space, samples, seed)
    mats = [e.matrix for e in elements]
    rng = np.random.default_rng(seed + 0x9E3779B9)
    mats = _word_closure(mats, rng)
    if all(np.max(np.abs(m.imag)) < 1e-15 for m in mats):
        return [np.ascontiguousarray(m.real) for m in mats]
    return mats


def _kron_power(U: np.ndarray, power: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=U.dtype)
    for _ in range(power):
        out = np.kron(out, U)
    return out


def _apply_conjugation(Z: np.ndarray, U: np.ndarray, k: int, l: int,
                       n: int) -> np.ndarray:
    """Columns of Z are vec(T); returns vec(U^{ox l} T U^{ox k, H}) columnwise
    via per-axis contractions (avoids forming the big Kronecker matrix)."""
    cols = Z.shape[1]
    Zt = Z.reshape((n,) * (k + l) + (cols,))
    for ax in range(l):
        Zt = np.moveaxis(np.tensordot(U, Zt, axes=([1], [ax])), 0, ax)
    Uc = U.conj()
    for ax in range(l, l + k):
        Zt = np.moveaxis(np.tensordot(Uc, Zt, axes=([1], [ax])), 0, ax)
    return Zt.reshape(Z.shape)


def commutant_dimension(family: str, k: int, l: int, space: SuperSpace,
                        samples: int = 8, seed: int = 0,
                        tol: float = RANK_GAP_TOL) -> int:
    """Dimension of {T : U^{ox l} T = T U^{ox k} for all sampled U}.

    Computed as the nullity of the Hermitian stacked-constraint normal
    matrix, rank decided by an eigenvalue gap at ``tol``.  The dimension is
    recomputed against a fresh doubled sample set restricted to the computed
    nullspace; disagreement raises StabilityFailure.
    """
    family = normalize_family(family)
    n = space.n
    N = n ** (k + l)
    if N > COMMUTANT_STATE_BOUND:
        raise BoundExceeded(f"state dimension {N} exceeds "
                            f"{COMMUTANT_STATE_BOUND}")
    if samples < 8:
        raise ValueError("at least 8 independent samples are required")
    mats = _sampled_matrices(family, space, samples, seed)
    dtype = mats[0].dtype
    K = np.zeros((N, N), dtype=dtype)
    for U in mats:
        K += np.kron(_kron_power(U, l), _kron_power(U.conj(), k))
    K /= len(mats)
    H = 2.0 * np.eye(N, dtype=dtype) - K - K.conj().T
    w, Z = scipy.linalg.eigh(H, subset_by_value=(-np.inf, tol))
    dim = Z.shape[1]
    if dim == 0:
        return 0
    # stability under doubling: fresh samples, restricted residual Gram
    fresh = _sampled_matrices(family, space, samples, seed + 7919)
    B = np.zeros((dim, dim), dtype=complex)
    for U in fresh:
        AZ = _apply_conjugation(Z.astype(complex), U.astype(complex),
                                k, l, n) - Z
        B += AZ.conj().T @ AZ
    stable = int(np.sum(np.linalg.eigvalsh(B) < tol))
    if stable != dim:
        raise StabilityFailure(
            f"commutant dimension dropped from {dim} to {stable} "
            f"when doubling samples")
    return dim


def containment_check(cls: str, k: int, l: int, family: str,
                      space: SuperSpace, samples: int = 16,
                      seed: int = 0) -> float:
    """max over sampled U and class members pi of
    ||U^{ox l} T_pi - T_pi U^{ox k}||_max."""
    family, cls = _check_pairing(family, cls)
    parts = enumerate_partitions(k, l, cls)
    if not parts:
        return 0.0
    mats = [e.matrix for e in sample_elements(family, space, samples, seed)]
    n = space.n
    worst = 0.0
    for part in parts:
        T = build_T(part, space).dense().astype(complex)
        vec = T.reshape(-1, 1)
        for U in mats:
            lhs = _apply_conjugation_left(vec, U, k, l, n)
            rhs = _apply_conjugation_right(vec, U, k, l, n)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def _apply_conjugation_left(vec: np.ndarray, U: np.ndarray, k: int, l: int,
                            n: int) -> np.ndarray:
    """vec(U^{ox l} T) for vec'd T."""
    Zt = vec.reshape((n,) * (k + l) + (vec.shape[1],))
    for ax in range(l):
        Zt = np.moveaxis(np.tensordot(U, Zt, axes=([1], [ax])), 0, ax)
    return Zt.reshape(vec.shape)


def _apply_conjugation_right(vec: np.ndarray, U: np.ndarray, k: int, l: int,
                             n: int) -> np.ndarray:
    """vec(T U^{ox k}) for vec'd T: contract input axes against U's rows."""
    Zt = vec.reshape((n,) * (k + l) + (vec.shape[1],))
    for ax in range(l, l + k):
        Zt = np.moveaxis(np.tensordot(U, Zt, axes=([0], [ax])), 0, ax)
    return Zt.reshape(vec.shape)


def hom_report(family: str, cls: str, k: int, l: int, space: SuperSpace,
               samples: int = 16, seed: int = 0,
               tol: float = RANK_GAP_TOL) -> HomReport:
    """Containment, exact span rank and sampled commutant dimension, with
    verdict 'equal' iff containment passes and the two dimensions agree."""
    family, cls = _check_pairing(family, cls)
    parts = enumerate_partitions(k, l, cls)
    residual = containment_check(cls, k, l, family, space, samples, seed)
    span = span_dimension(cls, k, l, space)
    comm = commutant_dimension(family, k, l, space, max(samples // 2, 8),
                               seed, tol)
    if residual <= CONTAINMENT_TOL and span == comm:
        verdict = "equal"
    elif residual <= CONTAINMENT_TOL and span < comm:
        verdict = "span-deficient"
    else:
        verdict = "mismatch"
    return HomReport(family, cls, k, l, space, len(parts), span, comm,
                     residual, verdict)
