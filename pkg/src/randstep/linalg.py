"""Small dense matrix kernels: exponential, eigenvalues, spectral norm.

Matrices are plain float ndarrays (row-major). Everything here is self-contained:
the exponential uses scaling-and-squaring with a degree-13 Taylor polynomial, the
eigensolver is a Hessenberg + Francis double-shift QR iteration with closed-form
2x2 blocks, and the spectral norm is a power iteration on A^T A. Intended for the
desk scale d <= 64; no sparse or generalized problems.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DimensionError, ParameterError

MAX_DIM = 64

_QR_DEFLATION_TOL = 1e-14
_POWER_TOL = 1e-10
_POWER_CAP = 10_000


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and return a 2-D float array with finite entries."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.size == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if m.shape[0] > MAX_DIM or m.shape[1] > MAX_DIM:
        raise DimensionError(f"{name} exceeds the supported size {MAX_DIM}, got {m.shape}")
    if not np.isfinite(m).all():
        raise ParameterError(f"{name} has non-finite entries")
    return m


def _require_square(m: np.ndarray, name: str) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got {m.shape}")
    return m


def mat_exp(a, t: float = 1.0) -> np.ndarray:
    """exp(t*A) by scaling-and-squaring.

    Scales so that ||tA||_1 < 0.5, applies the degree-13 Taylor polynomial by
    Horner's rule, and squares back.
    """
    m = _require_square(as_matrix(a, "A"), "A")
    if not math.isfinite(t):
        raise ParameterError("t must be finite")
    d = m.shape[0]
    x = t * m
    norm1 = float(np.abs(x).sum(axis=0).max()) if x.size else 0.0
    s = max(0, math.ceil(math.log2(norm1 / 0.5))) if norm1 > 0.5 else 0
    x /= 2.0**s
    eye = np.eye(d)
    acc = eye / math.factorial(13)
    for k in range(12, -1, -1):
        acc = x @ acc + eye / math.factorial(k)
    for _ in range(s):
        acc = acc @ acc
    return acc


def build_B(a, h: float) -> np.ndarray:
    """Block companion matrix [[0, A], [I/h, -I/h]] of the augmented linear dynamics."""
    m = _require_square(as_matrix(a, "A"), "A")
    if not (h > 0):
        raise ParameterError(f"h must be positive, got {h}")
    d = m.shape[0]
    eye = np.eye(d)
    return np.block([[np.zeros((d, d)), m], [eye / h, -eye / h]])


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Reduce to upper Hessenberg form by Householder reflections (similarity)."""
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k].copy()
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        v = x.copy()
        v[0] += math.copysign(nx, x[0]) if x[0] != 0 else nx
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        v /= nv
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v)
    return h


def _eig2x2(a: float, b: float, c: float, d: float) -> tuple[complex, complex]:
    """Eigenvalues of [[a, b], [c, d]] in closed form."""
    tr = a + d
    det = a * d - b * c
    disc = tr * tr / 4.0 - det
    if disc >= 0.0:
        r = math.sqrt(disc)
        return (tr / 2.0 - r, tr / 2.0 + r)
    r = math.sqrt(-disc)
    return (complex(tr / 2.0, -r), complex(tr / 2.0, r))


def _francis_sweep(h: np.ndarray, lo: int, hi: int, exceptional: bool) -> None:
    """One implicit double-shift QR sweep on the active block h[lo:hi+1, lo:hi+1]."""
    n = hi - lo + 1
    if exceptional:
        # ad-hoc shift to break symmetric stalls
        s1 = abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2]) if n > 2 else abs(h[hi, hi - 1])
        trace, det = 2.0 * (0.75 * s1), (0.4375 * s1) * (0.4375 * s1)
    else:
        trace = h[hi - 1, hi - 1] + h[hi, hi]
        det = h[hi - 1, hi - 1] * h[hi, hi] - h[hi - 1, hi] * h[hi, hi - 1]
    # first column of (H - s1 I)(H - s2 I)
    x = h[lo, lo] * h[lo, lo] + h[lo, lo + 1] * h[lo + 1, lo] - trace * h[lo, lo] + det
    y = h[lo + 1, lo] * (h[lo, lo] + h[lo + 1, lo + 1] - trace)
    z = h[lo + 2, lo + 1] * h[lo + 1, lo] if lo + 2 <= hi else 0.0
    nmat = h.shape[0]
    for k in range(lo, hi - 1):
        v = np.array([x, y, z])
        nv = np.linalg.norm(v)
        if nv > 0.0:
            v = v.copy()
            v[0] += math.copysign(nv, x) if x != 0 else nv
            nvv = np.linalg.norm(v)
            if nvv > 0.0:
                v /= nvv
                r0 = max(lo, k - 1)
                rows = slice(k, min(k + 3, hi + 1))
                h[rows, r0:] -= 2.0 * np.outer(v[: rows.stop - rows.start], v[: rows.stop - rows.start] @ h[rows, r0:])
                c1 = min(k + 4, hi + 1)
                h[:c1, rows] -= 2.0 * np.outer(h[:c1, rows] @ v[: rows.stop - rows.start], v[: rows.stop - rows.start])
        x = h[k + 1, k]
        y = h[k + 2, k]
        z = h[k + 3, k] if k + 3 <= hi else 0.0
    # final 2x1 rotation
    v = np.array([x, y])
    nv = np.linalg.norm(v)
    if nv > 0.0:
        v = v.copy()
        v[0] += math.copysign(nv, x) if x != 0 else nv
        nvv = np.linalg.norm(v)
        if nvv > 0.0:
            v /= nvv
            rows = slice(hi - 1, hi + 1)
            r0 = max(lo, hi - 2)
            h[rows, r0:] -= 2.0 * np.outer(v, v @ h[rows, r0:])
            h[: hi + 1, rows] -= 2.0 * np.outer(h[: hi + 1, rows] @ v, v)


def eigenvalues(a) -> np.ndarray:
    """All eigenvalues (with multiplicity), sorted by (real part, imaginary part).

    Real input only. Raises ConvergenceError with the partial spectrum if the QR
    iteration does not deflate within 100*d sweeps.
    """
    m = _require_square(as_matrix(a, "A"), "A")
    n = m.shape[0]
    if n == 1:
        return np.array([complex(m[0, 0])])
    h = _hessenberg(m)
    eigs: list[complex] = []
    hi = n - 1
    sweeps = 0
    cap = 100 * n
    stall = 0
    while hi >= 0:
        if hi == 0:
            eigs.append(complex(h[0, 0]))
            break
        # deflate negligible subdiagonals
        lo = hi
        while lo > 0:
            tol = _QR_DEFLATION_TOL * (abs(h[lo - 1, lo - 1]) + abs(h[lo, lo]))
            if abs(h[lo, lo - 1]) <= tol:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs.append(complex(h[hi, hi]))
            hi -= 1
            stall = 0
            continue
        if lo == hi - 1:
            e1, e2 = _eig2x2(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi])
            eigs.extend([e1, e2])
            hi -= 2
            stall = 0
            continue
        if sweeps >= cap:
            partial = np.array(sorted(eigs, key=lambda z: (z.real, z.imag)))
            raise ConvergenceError(
                f"QR iteration did not deflate within {cap} sweeps", partial=partial
            )
        _francis_sweep(h, lo, hi, exceptional=(stall > 0 and stall % 10 == 0))
        sweeps += 1
        stall += 1
    out = np.array(sorted(eigs, key=lambda z: (z.real, z.imag)), dtype=complex)
    return out


def spectral_norm(a) -> float:
    """Largest singular value by power iteration on A^T A (relative tolerance 1e-10)."""
    m = as_matrix(a, "A")
    if not m.any():
        return 0.0
    g = m.T @ m
    v = np.ones(g.shape[0]) + 1e-3 * np.arange(g.shape[0])
    v /= np.linalg.norm(v)
    prev = 0.0
    restart = 0
    for _ in range(_POWER_CAP):
        w = g @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            # start vector in the null space; cycle basis vectors
            v = np.zeros_like(v)
            v[restart % len(v)] = 1.0
            restart += 1
            prev = 0.0
            continue
        v = w / nw
        est = math.sqrt(float(v @ (g @ v)))
        if abs(est - prev) <= _POWER_TOL * max(1.0, est):
            return est
        prev = est
    raise ConvergenceError(f"power iteration did not converge in {_POWER_CAP} steps", partial=prev)
