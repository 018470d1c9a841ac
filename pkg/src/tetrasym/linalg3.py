"""Closed-form 3-vector and 3x3-matrix kernel.

Everything here works on numpy arrays and broadcasts over leading axes, so
a stack of matrices with shape ``(n, 3, 3)`` is handled the same way as a
single ``(3, 3)`` matrix.  No LAPACK routines are used: determinants and
cofactors are written out by hand.
"""

import numpy as np

from .errors import SingularMatrix

SINGULARITY_FLOOR = 1e-12


def _finite(a, what):
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{what} has non-finite entries")
    return a


def vec3(x, y=None, z=None):
    """Build a finite 3-vector from a sequence or from three scalars."""
    if y is not None or z is not None:
        x = (x, y, z)
    v = _finite(x, "vector")
    if v.shape != (3,):
        raise ValueError(f"expected 3 components, got shape {v.shape}")
    return v


def mat3(rows):
    m = _finite(rows, "matrix")
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
    return m


def mat3_from_columns(c0, c1, c2):
    return np.stack([vec3(c0), vec3(c1), vec3(c2)], axis=-1)


def dot(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2]


def cross(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.stack(
        [
            u[..., 1] * v[..., 2] - u[..., 2] * v[..., 1],
            u[..., 2] * v[..., 0] - u[..., 0] * v[..., 2],
            u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0],
        ],
        axis=-1,
    )


def norm(u):
    return np.sqrt(dot(u, u))


def det(m):
    """Determinant by cofactor expansion along the first column."""
    m = np.asarray(m, dtype=float)
    # det = c0 . (c1 x c2) with c_j the columns
    return dot(m[..., :, 0], cross(m[..., :, 1], m[..., :, 2]))


def cofactor(m):
    """Cofactor matrix ``C`` with ``C.T @ m == det(m) * I``.

    Column j of ``C`` is the cross product of the two other columns of ``m``
    taken in cyclic order, which is exactly the vector of signed 2x2 minors
    complementary to column j.
    """
    m = np.asarray(m, dtype=float)
    c0, c1, c2 = m[..., :, 0], m[..., :, 1], m[..., :, 2]
    return np.stack([cross(c1, c2), cross(c2, c0), cross(c0, c1)], axis=-1)


def solve_inverse_transpose(m, floor=SINGULARITY_FLOOR):
    """Return ``m^{-T}`` computed as ``cofactor(m) / det(m)``.

    Raises SingularMatrix when ``|det(m)| <= floor * (max column norm)**3``.
    The threshold is homogeneous of degree 3, so rescaling ``m`` does not
    change the verdict.
    """
    m = np.asarray(m, dtype=float)
    d = det(m)
    colmax = np.max(norm(np.swapaxes(m, -1, -2)), axis=-1)
    if np.any(np.abs(d) <= floor * colmax**3):
        raise SingularMatrix("matrix is singular to working precision")
    return cofactor(m) / np.asarray(d)[..., None, None]
