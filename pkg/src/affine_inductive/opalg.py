"""Operators on functions on k^x and subspaces of operator space.

Operators are plain ``(d, d)`` complex numpy arrays with ``d = q - 1``.
Operator space carries the Hilbert-Schmidt inner product
``<S, T> = trace(T^* S)``, which on row-major flattened matrices is the
standard inner product; every orthonormalization and residual below uses it.

Rank policy: a singular value counts toward rank when it exceeds
``EPS_RANK`` times the largest one. Finite-dimensional subspaces are
automatically weakly closed, so "weakly closed algebra" here means
"linear subspace closed under products".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .errors import LengthMismatch, ZeroScale
from .field import FieldElement, add, mul
from .group import dilation, inverse, translation
from .pi_rep import PiRepresentation

EPS_RANK = 1e-8
EPS_NIL = 1e-10
# a product candidate below this HS norm is treated as an exact zero
ZERO_NORM = 1e-12
CLOSURE_TOL = 1e-8


@dataclass
class RankInfo:
    rank: int
    singular_values: np.ndarray
    # ratio of the smallest kept singular value to the largest discarded one
    gap: float | None

    def gap_ok(self, factor: float = 1e4) -> bool:
        return self.gap is None or self.gap > factor


def numerical_rank(M: np.ndarray, rel_tol: float = EPS_RANK) -> RankInfo:
    M = np.atleast_2d(np.asarray(M))
    if M.size == 0:
        return RankInfo(0, np.zeros(0), None)
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return RankInfo(0, s, None)
    r = int(np.sum(s > rel_tol * s[0]))
    gap = None
    if 0 < r < len(s):
        gap = float(s[r - 1] / s[r]) if s[r] > 0 else float("inf")
    return RankInfo(r, s, gap)


def hs_inner(S: np.ndarray, T: np.ndarray) -> complex:
    return complex(np.vdot(T, S))


def matrix_unit(d: int, i: int, j: int) -> np.ndarray:
    E = np.zeros((d, d), dtype=complex)
    E[i, j] = 1.0
    return E


def unit_for(x: FieldElement, y: FieldElement) -> np.ndarray:
    """Matrix unit E_{x,y}, indexed by field elements of k^x."""
    return matrix_unit(x.ctx.q - 1, x.log, y.log)


@dataclass
class OperatorSubspace:
    """A subspace of operator space with an HS-orthonormal basis."""

    basis: np.ndarray
    orthonormal_basis: np.ndarray
    rank_info: RankInfo | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.orthonormal_basis)

    @property
    def size(self) -> int:
        return self.orthonormal_basis.shape[-1]

    @property
    def vectors(self) -> np.ndarray:
        """Orthonormal basis as rows of length d*d."""
        return self.orthonormal_basis.reshape(self.dim, self.size * self.size)

    @classmethod
    def span(cls, ops: Iterable[np.ndarray] | np.ndarray, d: int | None = None,
             rel_tol: float = EPS_RANK) -> OperatorSubspace:
        ops = np.asarray(list(ops) if not isinstance(ops, np.ndarray) else ops, dtype=complex)
        if ops.size == 0:
            if d is None:
                raise ValueError("dimension needed for an empty spanning set")
            return cls(np.zeros((0, d, d), complex), np.zeros((0, d, d), complex))
        d = ops.shape[-1]
        flat = ops.reshape(len(ops), -1)
        info = numerical_rank(flat, rel_tol)
        if info.rank == 0:
            return cls(ops, np.zeros((0, d, d), complex), info)
        _, _, vh = np.linalg.svd(flat, full_matrices=False)
        onb = vh[: info.rank].reshape(info.rank, d, d)
        return cls(ops, onb, info)

    def project(self, T: np.ndarray) -> np.ndarray:
        V = self.vectors
        if not len(V):
            return np.zeros_like(T, dtype=complex)
        t = np.asarray(T, dtype=complex).reshape(-1)
        return (V.T @ (V.conj() @ t)).reshape(T.shape)

    def residual(self, T: np.ndarray) -> float:
        """HS distance from T to the subspace."""
        return float(np.linalg.norm(T - self.project(T)))

    def contains(self, T: np.ndarray, tol: float = 1e-8) -> bool:
        scale = max(float(np.linalg.norm(T)), 1.0)
        return self.residual(T) < tol * scale

    def excess_over(self, other: OperatorSubspace) -> float:
        """Largest distance of a unit basis vector of self from ``other``."""
        if not self.dim:
            return 0.0
        return max(other.residual(B) for B in self.orthonormal_basis)

    def mutual_residual(self, other: OperatorSubspace) -> float:
        return max(self.excess_over(other), other.excess_over(self))


def mult_operator(phi: Sequence[complex] | np.ndarray, dim: int | None = None) -> np.ndarray:
    """The multiplication operator F -> phi * F, i.e. diag(phi)."""
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    if dim is not None and len(phi) != dim:
        raise LengthMismatch(f"multiplier of length {len(phi)}, expected {dim}")
    return np.diag(phi)


def restricted_character(rep: PiRepresentation, b: FieldElement) -> np.ndarray:
    """The function x -> chi(b*x) on k^x, in basis order."""
    ctx = rep.field
    return rep.chi_values[ctx.mul_table[b.index, np.arange(1, ctx.q)]]


def multiplication_algebra(rep: PiRepresentation) -> OperatorSubspace:
    d = rep.dim
    return OperatorSubspace.span([matrix_unit(d, i, i) for i in range(d)])


def kappa(rep: PiRepresentation, b: FieldElement, T: np.ndarray) -> np.ndarray:
    """Conjugation by the image of the translation by b."""
    U = rep.matrix(translation(b))
    Ui = rep.matrix(inverse(translation(b)))
    return U @ T @ Ui


def kappa_entrywise(rep: PiRepresentation, b: FieldElement, T: np.ndarray) -> np.ndarray:
    """Same as :func:`kappa`, via (kappa(b)T)[x, y] = chi((x - y) b) T[x, y]."""
    ctx = rep.field
    units = np.arange(1, ctx.q)
    diff = ctx.add_table[units[:, None], ctx.neg_table[units][None, :]]
    return rep.chi_values[ctx.mul_table[diff, b.index]] * T


def isotypic_project(rep: PiRepresentation, b: FieldElement, T: np.ndarray) -> np.ndarray:
    """Average of conj(chi(b b')) kappa(b') T over b' in k."""
    acc = np.zeros_like(T, dtype=complex)
    for bp in rep.field.elements:
        acc += np.conj(rep.chi(mul(b, bp))) * kappa(rep, bp, T)
    return acc / rep.field.q


def component_space(rep: PiRepresentation, b: FieldElement) -> OperatorSubspace:
    """Span of matrix units E_{x,y} with x - y = b, x and y in k^x."""
    ctx = rep.field
    units = []
    for y in ctx.units:
        x = add(y, b)
        if not x.is_zero():
            units.append(unit_for(x, y))
    return OperatorSubspace.span(units, d=rep.dim)


def scaling_conj(rep: PiRepresentation, a: FieldElement, T: np.ndarray) -> np.ndarray:
    """pi(dilation(a))^-1 T pi(dilation(a)); carries degree b to degree a*b."""
    if a.is_zero():
        raise ZeroScale("scaling conjugation by zero")
    s = dilation(a)
    return rep.matrix(inverse(s)) @ T @ rep.matrix(s)


def commutator(S: np.ndarray, T: np.ndarray) -> np.ndarray:
    return S @ T - T @ S


def commutant(space: OperatorSubspace | Sequence[np.ndarray], rel_tol: float = EPS_RANK) -> OperatorSubspace:
    """All operators commuting with every element of ``space``.

    Null space of the stacked maps T -> T S_i - S_i T, reduced chunkwise by
    QR so the final SVD is only (d^2 x d^2).
    """
    if not isinstance(space, OperatorSubspace):
        space = OperatorSubspace.span(space)
    gens = space.orthonormal_basis if space.dim else space.basis
    d = space.size
    eye = np.eye(d)
    R = np.zeros((0, d * d), dtype=complex)
    chunk = max(1, 4096 // (d * d))
    for start in range(0, len(gens), chunk):
        # row-major vec: vec(T S) = (I kron S^T) vec(T), vec(S T) = (S kron I) vec(T)
        blocks = [np.kron(eye, S.T) - np.kron(S, eye) for S in gens[start : start + chunk]]
        R = np.linalg.qr(np.vstack([R] + blocks), mode="r")
    if R.size:
        _, s, vh = np.linalg.svd(R, full_matrices=True)
    else:
        s, vh = np.zeros(0), np.eye(d * d, dtype=complex)
    # generators are HS-unit, so the map has norm of order one unless it
    # vanishes; the floor keeps rounding noise from a scalar generator
    # (commutator ~1e-17) from counting as rank
    r = int(np.sum(s > rel_tol * max(s[0], 1.0))) if len(s) else 0
    null = vh[r:].conj()
    gap = float(s[r - 1] / max(s[r], np.finfo(float).tiny)) if 0 < r < len(s) else None
    onb = null.reshape(-1, d, d)
    return OperatorSubspace(onb, onb, RankInfo(d * d - len(null), s, gap))


def nilpotency_index(T: np.ndarray, eps: float = EPS_NIL) -> int | None:
    """Smallest m <= d with max|T^m| < eps * max|T|^m, or None.

    Powers past d never need checking (Cayley-Hamilton).
    """
    scale = float(np.max(np.abs(T))) if T.size else 0.0
    if scale == 0.0:
        return 1
    d = T.shape[0]
    P = T / scale
    Tn = T / scale
    for m in range(1, d + 1):
        if np.max(np.abs(P)) < eps:
            return m
        P = P @ Tn
    return None


def joint_kernel(ops: OperatorSubspace | Sequence[np.ndarray], rel_tol: float = EPS_RANK) -> np.ndarray:
    """Common null space of the operators, as orthonormal columns (d, r)."""
    if isinstance(ops, OperatorSubspace):
        mats = ops.orthonormal_basis if ops.dim else ops.basis
        d = ops.size
    else:
        mats = np.asarray(list(ops), dtype=complex)
        d = mats.shape[-1]
    if len(mats) == 0:
        return np.eye(d, dtype=complex)
    stacked = np.vstack(list(mats))
    _, s, vh = np.linalg.svd(stacked, full_matrices=True)
    if s[0] == 0:
        return np.eye(d, dtype=complex)
    r = int(np.sum(s > rel_tol * s[0]))
    return vh[r:].conj().T


def max_commutator(space: OperatorSubspace, tol: float | None = None, block: int = 8) -> float:
    """Largest max-entry of [X_i, X_j] over orthonormal basis pairs.

    With ``tol`` set, stops at the first block exceeding it.
    """
    B = space.orthonormal_basis
    worst = 0.0
    # with a tolerance, start with one row so non-commuting spaces exit early
    start, step = 0, (1 if tol is not None else block)
    while start < len(B):
        X = B[start : start + step]
        C = np.matmul(X[:, None], B[None]) - np.matmul(B[None], X[:, None])
        worst = max(worst, float(np.max(np.abs(C))) if C.size else 0.0)
        if tol is not None and worst >= tol:
            break
        start += step
        step = min(2 * step, block)
    return worst


def offdiagonal_residual(space: OperatorSubspace) -> float:
    """Largest HS distance from a unit basis vector to the diagonal operators."""
    if not space.dim:
        return 0.0
    B = space.orthonormal_basis
    d = space.size
    off = B * (1 - np.eye(d))[None]
    return float(np.max(np.linalg.norm(off.reshape(len(B), -1), axis=1)))


class _SpanBuilder:
    """Incrementally grown orthonormal row basis in C^N."""

    def __init__(self, N: int, tol: float, block: int = 64):
        self.N = N
        self.tol = tol
        self.block = block
        self._buf = np.zeros((N, N), dtype=complex)
        self.dim = 0

    @property
    def Q(self) -> np.ndarray:
        return self._buf[: self.dim]

    def full(self) -> bool:
        return self.dim >= self.N

    @staticmethod
    def _orth(C: np.ndarray, Q: np.ndarray) -> np.ndarray:
        if len(Q):
            Qh = Q.conj().T
            for _ in range(2):
                C = C - (C @ Qh) @ Q
        return C

    def add(self, cands: np.ndarray) -> np.ndarray:
        """Extend the basis by the span of ``cands``; returns the new rows."""
        start = self.dim
        if self.full() or not len(cands):
            return self._buf[start:start]
        norms = np.linalg.norm(cands, axis=1)
        keep = norms > ZERO_NORM
        C = self._orth(cands[keep] / norms[keep, None], self.Q)
        C = C[np.linalg.norm(C, axis=1) > self.tol]
        remaining = self.N - self.dim
        if not len(C):
            return self._buf[start:start]
        # column-pivoted QR reveals the rank of the batch in one factorization
        Qc, R, _ = scipy.linalg.qr(C.T, mode="economic", pivoting=True)
        r = int(np.sum(np.abs(np.diag(R)) > self.tol))
        if r >= remaining:
            # the batch fills the space; any orthonormal basis will do
            self._buf[:] = np.eye(self.N)
            self.dim = self.N
            return self._buf[start:]
        new = self._orth(Qc[:, :r].T, self.Q)
        new = np.linalg.qr(new.T)[0].T[:remaining]
        self._buf[self.dim : self.dim + len(new)] = new
        self.dim += len(new)
        return self._buf[start : self.dim]


def normalized_closure(rep: PiRepresentation, seeds: Sequence[np.ndarray] | np.ndarray,
                       tol: float = CLOSURE_TOL, chunk: int = 1024) -> OperatorSubspace:
    """Smallest subspace holding the seeds, closed under products and
    conjugation by the images of the two group generators and their inverses.

    Conjugation closure is taken first; the algebra generated by a
    conjugation-stable subspace is again conjugation-stable, but the
    conjugation pass is re-run after the product pass and the loop only
    stops once neither pass adds a direction.
    """
    d = rep.dim
    N = d * d
    seeds = np.asarray(seeds, dtype=complex).reshape(-1, d, d)
    # stability under a generator already forces stability under its
    # inverse (an injective map of a finite-dimensional space onto itself),
    # so only forward conjugations are generated
    conj_pairs = [(rep.matrix(g), rep.matrix(inverse(g))) for g in rep.group.generators()]
    group_mats = rep.all_matrices
    group_inv = group_mats[rep.group.inverse_ids(np.arange(rep.group.order))]

    sb = _SpanBuilder(N, tol)
    pending = sb.add(seeds.reshape(len(seeds), N))
    first = True
    while not sb.full():
        # conjugation pass
        grew = False
        while len(pending) and not sb.full():
            X = pending.reshape(-1, d, d)
            if len(X) * len(group_mats) <= 4 * N:
                # small batches: conjugate by every group element at once;
                # rows already in the span before the batch were stable, so
                # the span is stable afterwards
                cands = np.matmul(np.matmul(group_mats[:, None], X[None]), group_inv[:, None])
                grew = grew or len(sb.add(cands.reshape(-1, N))) > 0
                break
            pending = sb.add(np.concatenate([U @ X @ Ui for U, Ui in conj_pairs]).reshape(-1, N))
            grew = grew or len(pending) > 0
        if not first and not grew:
            break
        first = False
        # product pass: algebra generated by the current span
        gens = sb.Q.reshape(-1, d, d).copy()
        frontier = gens
        added = []
        while len(frontier) and not sb.full():
            fresh = []
            start = 0
            while start < len(frontier) and not sb.full():
                # batches sized to what is left, so near-full spans factor small matrices
                budget = min(chunk, 2 * (N - sb.dim) + 32)
                rows = max(1, budget // len(gens))
                F = frontier[start : start + rows]
                start += rows
                new = sb.add(np.matmul(F[:, None], gens[None]).reshape(-1, N))
                if len(new):
                    fresh.append(new)
            frontier = np.concatenate(fresh).reshape(-1, d, d) if fresh else np.zeros((0, d, d), complex)
            if len(frontier):
                added.append(frontier.reshape(-1, N))
        if not added:
            break
        pending = np.concatenate(added)
    onb = sb.Q.reshape(-1, d, d).copy()
    return OperatorSubspace(seeds, onb)


def is_normalized(rep: PiRepresentation, space: OperatorSubspace) -> float:
    """Largest distance of a generator-conjugated basis vector from the space."""
    worst = 0.0
    for g in rep.group.generators():
        U, Ui = rep.matrix(g), rep.matrix(inverse(g))
        for B in space.orthonormal_basis:
            worst = max(worst, space.residual(U @ B @ Ui))
    return worst


def normalized_span(rep: PiRepresentation, seeds: Sequence[np.ndarray] | np.ndarray,
                    tol: float = CLOSURE_TOL) -> OperatorSubspace:
    """Smallest subspace holding the seeds and stable under pi(G)-conjugation (no products)."""
    d = rep.dim
    N = d * d
    seeds = np.asarray(seeds, dtype=complex).reshape(-1, d, d)
    conj_pairs = [(rep.matrix(g), rep.matrix(inverse(g))) for g in rep.group.generators()]
    sb = _SpanBuilder(N, tol)
    pending = sb.add(seeds.reshape(len(seeds), N))
    while len(pending) and not sb.full():
        X = pending.reshape(-1, d, d)
        pending = sb.add(np.concatenate([U @ X @ Ui for U, Ui in conj_pairs]).reshape(-1, N))
    return OperatorSubspace(seeds, sb.Q.reshape(-1, d, d).copy())


def subspace_invariance_residual(U: np.ndarray, K: np.ndarray) -> float:
    """How far U maps the column space of K (orthonormal columns) outside itself."""
    if K.shape[1] == 0:
        return 0.0
    img = U @ K
    return float(np.linalg.norm(img - K @ (K.conj().T @ img)))
