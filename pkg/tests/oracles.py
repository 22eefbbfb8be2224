"""Slow, independent reference implementations used as test oracles.

Nothing here imports the package's arithmetic; fields are plain coefficient
tuples (constant term first) and everything is computed by brute force.
"""

from __future__ import annotations

import cmath
import itertools

import numpy as np


def poly_mulmod(u, v, modulus, p):
    n = len(modulus) - 1
    prod = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            prod[i + j] = (prod[i + j] + a * b) % p
    # reduce from the top; modulus is monic
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * modulus[i]) % p
    out = prod[:n] + [0] * max(0, n - len(prod))
    return tuple(out)


def poly_add(u, v, p):
    return tuple((a + b) % p for a, b in zip(u, v))


def monic_polys(p, n):
    for low in itertools.product(range(p), repeat=n):
        yield tuple(low) + (1,)


def _mul_full(u, v, p):
    prod = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            prod[i + j] = (prod[i + j] + a * b) % p
    return tuple(prod)


def irreducibles_by_sieve(p, n):
    """Monic irreducibles of degree n: those not a product of lower-degree monics."""
    reducible = set()
    for k in range(1, n // 2 + 1):
        for f in monic_polys(p, k):
            for g in monic_polys(p, n - k):
                reducible.add(_mul_full(f, g, p))
    return [f for f in monic_polys(p, n) if f not in reducible]


def mobius(m):
    result, k = 1, 2
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            result = -result
        k += 1
    return -result if m > 1 else result


def gauss_count(p, n):
    return sum(mobius(d) * p ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def all_elements(p, n):
    return [tuple(c) for c in itertools.product(range(p), repeat=n)]


def trace_by_matrix(x, modulus, p):
    """Trace of the F_p-linear map y -> x*y, read off its matrix in the power basis."""
    n = len(modulus) - 1
    total = 0
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        total += poly_mulmod(x, e, modulus, p)[i]
    return total % p


def additive_char(c, x, modulus, p):
    t = trace_by_matrix(poly_mulmod(c, x, modulus, p), modulus, p)
    return cmath.exp(2j * cmath.pi * t / p)


def pi_matrix_by_definition(units, a, b, c, modulus, p):
    """Matrix of F -> (x -> chi_c(x b) F(x a)) on functions on the listed units.

    Column j is the image of the delta function at units[j].
    """
    pos = {u: i for i, u in enumerate(units)}
    d = len(units)
    M = np.zeros((d, d), dtype=complex)
    for j, yj in enumerate(units):
        for x in units:
            # (pi F)(x) = chi(x b) F(x a), F = delta at yj
            if poly_mulmod(x, a, modulus, p) == yj:
                M[pos[x], j] = additive_char(c, poly_mulmod(x, b, modulus, p), modulus, p)
    return M


def naive_rank(vectors, tol=1e-8):
    if not len(vectors):
        return 0
    s = np.linalg.svd(np.asarray(vectors).reshape(len(vectors), -1), compute_uv=False)
    return int(np.sum(s > tol * s[0])) if s[0] > 0 else 0


def naive_closure(seeds, group_mats, tol=1e-8, max_rounds=50):
    """Span of the seeds closed under all pairwise products and all group conjugations.

    Each round recomputes the whole candidate set from an orthonormal basis;
    quadratic and slow, but has no incremental bookkeeping to get wrong.
    """
    d = seeds[0].shape[0]
    basis = _orthonormal([S.reshape(-1) for S in seeds], tol)
    for _ in range(max_rounds):
        mats = [v.reshape(d, d) for v in basis]
        cands = list(mats)
        cands += [X @ Y for X in mats for Y in mats]
        cands += [U @ X @ np.linalg.inv(U) for U in group_mats for X in mats]
        new = _orthonormal([C.reshape(-1) for C in cands], tol)
        if len(new) == len(basis):
            return len(new), [v.reshape(d, d) for v in new]
        basis = new
    raise RuntimeError("closure did not stabilize")


def _orthonormal(vectors, tol):
    A = np.array(vectors)
    u, s, vh = np.linalg.svd(A, full_matrices=False)
    if not len(s) or s[0] == 0:
        return []
    r = int(np.sum(s > tol * s[0]))
    return list(vh[:r])


def brute_commutant_dim(mats, tol=1e-8):
    d = mats[0].shape[0]
    eye = np.eye(d)
    rows = np.vstack([np.kron(M, eye) - np.kron(eye, M.T) for M in mats])
    s = np.linalg.svd(rows, compute_uv=False)
    return d * d - int(np.sum(s > tol * max(s[0], 1.0)))
