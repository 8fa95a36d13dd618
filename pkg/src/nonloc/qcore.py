"""Dense complex linear-algebra kernel.

Small, explicit routines on numpy arrays: tensor products, partial traces,
operator embedding into multi-qubit registers, singular values and Hermitian
eigen-extrema.  Everything here is a pure function of its inputs; matrices
stay dense (dimensions in this package never exceed a few thousand).

Conventions used throughout the package:

* party 1 is the leftmost (most significant) tensor factor,
* the qubit basis is |0> = (1, 0), |1> = (0, 1),
* Pauli operators are indexed 1=x, 2=y, 3=z.
"""

from __future__ import annotations

import math
from functools import reduce

import numpy as np

from .errors import DimensionMismatch, ValidationError

HERM_ATOL = 1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)

#: Pauli vector in the index order used for correlation tensors (x, y, z).
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_cmatrix(m) -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting non-finite entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("matrix has non-finite entries")
    return arr


def as_cvector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("vector has non-finite entries")
    return arr


def dag(m: np.ndarray) -> np.ndarray:
    return np.conjugate(np.transpose(m))


def is_hermitian(m: np.ndarray, atol: float = HERM_ATOL) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and np.max(np.abs(m - dag(m))) <= atol


def kron(a, b) -> np.ndarray:
    """Kronecker product with party-1-leftmost ordering."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def kron_all(factors) -> np.ndarray:
    """Kronecker product of a sequence of matrices, left to right."""
    mats = [as_cmatrix(f) for f in factors]
    if not mats:
        return np.eye(1, dtype=complex)
    return reduce(np.kron, mats)


def projector(vec) -> np.ndarray:
    """Rank-1 projector |v><v| for a unit vector v."""
    v = as_cvector(vec)
    n = np.linalg.norm(v)
    if abs(n - 1.0) > 1e-6:
        raise ValidationError(f"projector vector is not normalized (|v|={n:.6g})")
    return np.outer(v, v.conj())


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Trace out all subsystems not listed in ``keep``.

    ``dims`` lists the local dimension of every subsystem in tensor order;
    ``keep`` holds the (0-based) indices of the subsystems to retain.  The
    result is returned in the order the kept indices appear in ``dims``.
    """
    rho = as_cmatrix(rho)
    dims = [int(d) for d in dims]
    total = math.prod(dims)
    if rho.shape != (total, total):
        raise DimensionMismatch(
            f"rho is {rho.shape}, but prod(dims)={total} for dims={dims}"
        )
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValidationError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise ValidationError(f"keep indices {keep} out of range for {len(dims)} subsystems")

    n = len(dims)
    tensor = rho.reshape(dims + dims)
    # contract bra/ket axes of every traced subsystem
    traced = [i for i in range(n) if i not in keep]
    for count, idx in enumerate(traced):
        ax = idx - count  # axes shift left as we trace
        tensor = np.trace(tensor, axis1=ax, axis2=ax + (n - count))
    d_keep = math.prod(dims[i] for i in keep)
    return tensor.reshape(d_keep, d_keep)


def embed_operator(op, positions, dims) -> np.ndarray:
    """Embed ``op`` acting on the subsystems at ``positions`` into the full register.

    ``op`` must act on the listed subsystems in the order given; identity is
    placed everywhere else.  Works for non-contiguous and permuted positions.
    """
    op = as_cmatrix(op)
    dims = [int(d) for d in dims]
    n = len(dims)
    positions = [int(p) for p in positions]
    if len(set(positions)) != len(positions):
        raise ValidationError("duplicate positions in embed_operator")
    d_op = math.prod(dims[p] for p in positions)
    if op.shape != (d_op, d_op):
        raise DimensionMismatch(f"operator is {op.shape}, positions need {d_op}x{d_op}")

    rest = [i for i in range(n) if i not in positions]
    full = np.kron(op, np.eye(math.prod([dims[i] for i in rest]) if rest else 1, dtype=complex))
    # full currently acts on (positions..., rest...); permute to natural order
    order = positions + rest
    perm = [order.index(i) for i in range(n)]
    shaped = full.reshape([dims[i] for i in order] * 2)
    shaped = np.transpose(shaped, perm + [n + p for p in perm])
    total = math.prod(dims)
    return shaped.reshape(total, total)


def singular_values(m) -> np.ndarray:
    """Singular values of a matrix, sorted descending."""
    m = as_cmatrix(m)
    return np.linalg.svd(m, compute_uv=False)


def eigmax_hermitian(m) -> float:
    """Largest eigenvalue of a Hermitian matrix."""
    m = as_cmatrix(m)
    if not is_hermitian(m):
        raise ValidationError("eigmax_hermitian requires a Hermitian matrix")
    return float(np.linalg.eigvalsh(m)[-1])


def random_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_unitary_2x2(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random SU(2) element (Ginibre + QR phase fix)."""
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
