"""Validated coin parameters and closed-form 2x2 complex linear algebra.

Everything in this module is pure and allocation-light: coins are frozen
dataclasses, matrices are plain ``(2, 2)`` complex numpy arrays, and the
eigensolver solves the characteristic quadratic directly, which is exact to
rounding at this size.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

#: Tolerance for constructor-level invariants (unit coin rows, unit states).
VALIDATE_TOL = 1e-12
#: Residual guarantee of the closed-form 2x2 eigensolver.
EIG_TOL = 1e-10

TWO_PI = 2.0 * math.pi


def _as_finite_complex(value, name: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return z


@dataclass(frozen=True)
class Coin:
    """Parameters ``(alpha, beta, delta)`` of one lattice site's coin.

    The coin matrix is ``exp(i*delta) [[alpha, beta], [-conj(beta),
    conj(alpha)]]`` with ``|alpha|^2 + |beta|^2 = 1`` and ``alpha != 0``, so
    it is unitary by construction.  ``delta`` is stored reduced into
    ``[0, 2*pi)``.
    """

    alpha: complex
    beta: complex
    delta: float

    def __post_init__(self) -> None:
        alpha = _as_finite_complex(self.alpha, "alpha")
        beta = _as_finite_complex(self.beta, "beta")
        delta = float(self.delta)
        if not math.isfinite(delta):
            raise ValueError(f"delta must be finite, got {self.delta!r}")
        row_norm = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(row_norm - 1.0) > VALIDATE_TOL:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {row_norm!r} is not 1")
        if alpha == 0:
            raise ValueError("alpha must be nonzero")
        delta %= TWO_PI
        if delta >= TWO_PI:  # rounding can land exactly on the seam
            delta -= TWO_PI
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "delta", delta)


def make_coin(alpha, beta, delta: float = 0.0) -> Coin:
    """Validated coin constructor; reduces ``delta`` modulo ``2*pi``."""
    return Coin(alpha, beta, delta)


def vec2(a, b) -> np.ndarray:
    return np.array([a, b], dtype=np.complex128)


def mat2(a, b, c, d) -> np.ndarray:
    """Row-major 2x2 complex matrix ``[[a, b], [c, d]]``."""
    return np.array([[a, b], [c, d]], dtype=np.complex128)


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def coin_matrix(coin: Coin) -> np.ndarray:
    """The unitary matrix ``exp(i*delta) [[alpha, beta], [-conj(beta), conj(alpha)]]``."""
    phase = cmath.exp(1j * coin.delta)
    return mat2(
        phase * coin.alpha,
        phase * coin.beta,
        -phase * coin.beta.conjugate(),
        phase * coin.alpha.conjugate(),
    )


def _kernel_vector(m: np.ndarray) -> np.ndarray:
    """Unit vector in the kernel of a rank-deficient 2x2 matrix.

    The row with the larger 1-norm supplies the reliable linear constraint;
    for the zero matrix every direction works and ``e1`` is returned.
    """
    a, b = complex(m[0, 0]), complex(m[0, 1])
    c, d = complex(m[1, 0]), complex(m[1, 1])
    if abs(a) + abs(b) >= abs(c) + abs(d):
        v = vec2(b, -a)
    else:
        v = vec2(d, -c)
    n = math.hypot(abs(v[0]), abs(v[1]))
    if n == 0.0:
        return vec2(1.0, 0.0)
    return v / n


def eig2(m: np.ndarray) -> tuple[complex, np.ndarray, complex, np.ndarray]:
    """Eigenvalues and unit eigenvectors of a 2x2 complex matrix, closed form.

    Returns ``(value1, vector1, value2, vector2)``.  For a defective matrix
    the two values coincide and the vectors may coincide as well.
    """
    a, b = complex(m[0, 0]), complex(m[0, 1])
    c, d = complex(m[1, 0]), complex(m[1, 1])
    tr = a + d
    disc = cmath.sqrt(tr * tr - 4.0 * (a * d - b * c))
    z1 = 0.5 * (tr + disc)
    z2 = 0.5 * (tr - disc)
    v1 = _kernel_vector(mat2(a - z1, b, c, d - z1))
    v2 = _kernel_vector(mat2(a - z2, b, c, d - z2))
    return z1, v1, z2, v2
