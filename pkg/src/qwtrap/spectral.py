"""Transfer-matrix analysis of the walk's point spectrum.

An eigenvector candidate at phase ``lam`` is equivalent, after reshaping the
two components by half a site, to a two-term transfer recurrence
``v(x+1) = T_x(lam) v(x)``.  A phase is *admissible* when both asymptotic
transfer matrices are hyperbolic (eigenvalue moduli off the unit circle);
outside the admissible set no square-summable solution exists.  On it, the
solution decaying to the left is unique up to scale, and ``lam`` is an
eigenphase exactly when pushing that solution through the core lands it in
the contracting eigenspace on the right.  The distance from that eigenspace
is a scalar residual whose zeros are the eigenphases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import TWO_PI, Coin, mat2
from .walk import CoinField, Distribution, WalkState

#: Discriminants below this count as outside the admissible phase set.
LAMBDA_TOL = 1e-12
#: A refined residual below this certifies an eigenphase.
RESIDUAL_ACCEPT = 1e-9
#: Grid minima below this are handed to the refiner.
SCAN_THRESHOLD = 1e-3
#: Refined phases closer than this are considered the same root.
DEDUPE_TOL = 1e-8
#: Relative 2x2 minor above this certifies linearly independent origin values.
INDEPENDENCE_TOL = 1e-8

DEFAULT_GRID = 20000
DEFAULT_REFINE_TOL = 1e-12

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class NotInAdmissibleSetError(ValueError):
    """The phase lies outside the admissible set of the field."""


class NoEigenvalueError(ValueError):
    """The phase is not an eigenphase of the walk."""


def transfer_matrix(coin: Coin, lam: float) -> np.ndarray:
    """Transfer matrix of the reshaped eigenvector recurrence at one site."""
    th = lam - coin.delta
    a = coin.alpha
    e = complex(math.cos(th), math.sin(th))
    return mat2(e / a, -coin.beta / a, -coin.beta.conjugate() / a, e.conjugate() / a)


def transfer_inverse(coin: Coin, lam: float) -> np.ndarray:
    """Closed-form inverse of :func:`transfer_matrix`."""
    th = lam - coin.delta
    s = coin.alpha / abs(coin.alpha) ** 2
    e = complex(math.cos(th), math.sin(th))
    return mat2(s * e.conjugate(), s * coin.beta, s * coin.beta.conjugate(), s * e)


def discriminant(coin: Coin, lam) -> float | np.ndarray:
    """``cos^2(lam - delta) - |alpha|^2``; positive means hyperbolic."""
    c = np.cos(lam - coin.delta)
    return c * c - abs(coin.alpha) ** 2


@dataclass(frozen=True)
class TransferEigen:
    """Both eigenvalues of a transfer matrix and their common discriminant."""

    zeta_plus: complex
    zeta_minus: complex
    discriminant: float


def transfer_eigen(coin: Coin, lam: float) -> TransferEigen:
    """Closed-form transfer-matrix eigenvalues ``(cos(th) +- sqrt(disc)) / alpha``.

    ``zeta_plus`` takes the principal branch of the square root: real and
    nonnegative for positive discriminant, ``+i sqrt(-disc)`` otherwise (the
    two eigenvalues then share modulus 1).
    """
    c = math.cos(lam - coin.delta)
    disc = c * c - abs(coin.alpha) ** 2
    root = math.sqrt(disc) if disc >= 0 else 1j * math.sqrt(-disc)
    return TransferEigen(
        complex((c + root) / coin.alpha),
        complex((c - root) / coin.alpha),
        float(disc),
    )


def contracting_zeta(coin: Coin, lams):
    """Transfer eigenvalue with modulus < 1 (hyperbolic phases only)."""
    c = np.cos(np.asarray(lams) - coin.delta)
    root = np.sqrt(c * c - abs(coin.alpha) ** 2)
    return (c - np.sign(c) * root) / coin.alpha


def expanding_zeta(coin: Coin, lams):
    """Transfer eigenvalue with modulus > 1 (hyperbolic phases only)."""
    c = np.cos(np.asarray(lams) - coin.delta)
    root = np.sqrt(c * c - abs(coin.alpha) ** 2)
    return (c + np.sign(c) * root) / coin.alpha


def in_admissible_set(field: CoinField, lam: float) -> bool:
    """True when both asymptotic transfer matrices are hyperbolic at ``lam``."""
    return bool(
        discriminant(field.right, lam) > LAMBDA_TOL
        and discriminant(field.left, lam) > LAMBDA_TOL
    )


def _transfer_stack(coin: Coin, lams: np.ndarray) -> np.ndarray:
    th = lams - coin.delta
    e = np.exp(1j * th)
    a = coin.alpha
    out = np.empty(th.shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = e / a
    out[..., 0, 1] = -coin.beta / a
    out[..., 1, 0] = -coin.beta.conjugate() / a
    out[..., 1, 1] = np.conj(e) / a
    return out


def _inverse_stack(coin: Coin, lams: np.ndarray) -> np.ndarray:
    th = lams - coin.delta
    e = np.exp(1j * th)
    s = coin.alpha / abs(coin.alpha) ** 2
    out = np.empty(th.shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = s * np.conj(e)
    out[..., 0, 1] = s * coin.beta
    out[..., 1, 0] = s * coin.beta.conjugate()
    out[..., 1, 1] = s * e
    return out


def _core_products(field: CoinField, lams: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ordered transfer products through the core, batched over phases.

    The forward product applies the site matrices ``0 .. x_plus - 1`` in
    ascending order; the backward product applies the site inverses
    ``-1 .. x_minus`` in descending order.
    """
    eye = np.broadcast_to(np.eye(2, dtype=np.complex128), lams.shape + (2, 2))
    t_plus = eye
    for x in range(0, field.x_plus):
        t_plus = _transfer_stack(field.coin(x), lams) @ t_plus
    t_minus = eye
    for x in range(-1, field.x_minus - 1, -1):
        t_minus = _inverse_stack(field.coin(x), lams) @ t_minus
    return np.ascontiguousarray(t_plus), np.ascontiguousarray(t_minus)


def boundary_products(field: CoinField, lam: float) -> tuple[np.ndarray, np.ndarray]:
    """The two ``(2, 2)`` core products at a single phase."""
    t_plus, t_minus = _core_products(field, np.array([float(lam)]))
    return t_plus[0], t_minus[0]


def _kernel_stack(mats: np.ndarray) -> np.ndarray:
    """Unit kernel vectors of rank-one 2x2 matrices, batched.

    The row with the larger 1-norm supplies the constraint, so a vanishing
    row never contaminates the result.
    """
    a, b = mats[..., 0, 0], mats[..., 0, 1]
    c, d = mats[..., 1, 0], mats[..., 1, 1]
    use_top = (np.abs(a) + np.abs(b)) >= (np.abs(c) + np.abs(d))
    v = np.stack([np.where(use_top, b, d), np.where(use_top, -a, -c)], axis=-1)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _solve2(mats: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Batched 2x2 solve via the adjugate."""
    a, b = mats[..., 0, 0], mats[..., 0, 1]
    c, d = mats[..., 1, 0], mats[..., 1, 1]
    det = a * d - b * c
    return np.stack(
        [(d * rhs[..., 0] - b * rhs[..., 1]) / det,
         (a * rhs[..., 1] - c * rhs[..., 0]) / det],
        axis=-1,
    )


def _residual_core(field: CoinField, lams: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Residuals and unit matching generators, batched over admissible phases.

    The generator ``phi`` spans the solutions that decay to the left; the
    residual is how far the core pushes ``phi`` from the contracting
    eigenspace on the right.  Zero residual certifies an eigenphase.
    """
    lams = np.asarray(lams, dtype=np.float64)
    t_plus, t_minus = _core_products(field, lams)
    shifted = _transfer_stack(field.left, lams)
    zeta_out = expanding_zeta(field.left, lams)
    shifted[..., 0, 0] -= zeta_out
    shifted[..., 1, 1] -= zeta_out
    phi = _solve2(t_minus, _kernel_stack(shifted))
    phi = phi / np.linalg.norm(phi, axis=-1, keepdims=True)
    landing = _transfer_stack(field.right, lams)
    zeta_in = contracting_zeta(field.right, lams)
    landing[..., 0, 0] -= zeta_in
    landing[..., 1, 1] -= zeta_in
    w = (landing @ (t_plus @ phi[..., None]))[..., 0]
    return np.linalg.norm(w, axis=-1), phi


def eigen_residual(field: CoinField, lam: float) -> float:
    """Matching residual at one phase; zero exactly on eigenphases."""
    if not in_admissible_set(field, lam):
        raise NotInAdmissibleSetError(f"phase {lam!r} is not admissible")
    res, _ = _residual_core(field, np.array([float(lam)]))
    return float(res[0])


def _residual_or_inf(field: CoinField, lam: float) -> float:
    lam = lam % TWO_PI
    if not in_admissible_set(field, lam):
        return math.inf
    res, _ = _residual_core(field, np.array([lam]))
    return float(res[0])


def _golden_min(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Golden-section minimization of a unimodal function on ``[a, b]``."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _hyperbolic_arcs(coin: Coin) -> list[tuple[float, float]]:
    """Phases with a hyperbolic transfer matrix, as arcs in ``[0, 2*pi)``.

    ``cos^2(lam - delta) > |alpha|^2`` holds on two arcs of half-width
    ``arccos(|alpha|)`` centered at ``delta`` and ``delta + pi``.  Arcs that
    wrap past ``2*pi`` are split.
    """
    half = math.acos(min(abs(coin.alpha), 1.0))
    if half == 0.0:
        return []
    raw = [
        (coin.delta - half, coin.delta + half),
        (coin.delta + math.pi - half, coin.delta + math.pi + half),
    ]
    arcs: list[tuple[float, float]] = []
    for s, e in raw:
        width = e - s
        s %= TWO_PI
        if s + width <= TWO_PI:
            arcs.append((s, s + width))
        else:
            arcs.append((s, TWO_PI))
            arcs.append((0.0, s + width - TWO_PI))
    return sorted(arcs)


def _intersect_arcs(
    a: list[tuple[float, float]], b: list[tuple[float, float]]
) -> list[tuple[float, float]]:
    out = []
    for s1, e1 in a:
        for s2, e2 in b:
            s, e = max(s1, s2), min(e1, e2)
            if e > s:
                out.append((s, e))
    return sorted(out)


def find_eigenphases(
    field: CoinField,
    grid_points: int = DEFAULT_GRID,
    refine_tol: float = DEFAULT_REFINE_TOL,
) -> list[float]:
    """All eigenphases in ``[0, 2*pi)``, sorted ascending.

    Scans the residual over the admissible set on a uniform grid, refines
    every local minimum below the scan threshold by golden-section search,
    and keeps the refined phases whose residual certifies an eigenphase.
    The admissible arcs are also enumerated in closed form and each receives
    a guaranteed number of extra samples, so arcs narrower than the grid
    spacing (near-threshold parameters) cannot be skipped.
    """
    if grid_points < 1000:
        raise ValueError("grid_points must be >= 1000")
    h = TWO_PI / grid_points
    lams = np.arange(grid_points) * h
    mask = (discriminant(field.right, lams) > LAMBDA_TOL) & (
        discriminant(field.left, lams) > LAMBDA_TOL
    )
    res = np.full(grid_points, np.inf)
    if mask.any():
        res[mask], _ = _residual_core(field, lams[mask])
    neighbors_ok = (res <= np.roll(res, 1)) & (res <= np.roll(res, -1))
    uniform = np.nonzero(mask & (res < SCAN_THRESHOLD) & neighbors_ok)[0]
    # (bracket_lo, bracket_hi) seeds for refinement
    seeds: list[tuple[float, float]] = [
        (float(lams[i]) - h, float(lams[i]) + h) for i in uniform
    ]
    arcs = _intersect_arcs(
        _hyperbolic_arcs(field.right), _hyperbolic_arcs(field.left)
    )
    for s, e in arcs:
        n = max(17, min(4001, 2 * int((e - s) / h) + 1))
        pts = s + (e - s) * (np.arange(n) + 0.5) / n
        ok = (discriminant(field.right, pts) > LAMBDA_TOL) & (
            discriminant(field.left, pts) > LAMBDA_TOL
        )
        r_arc = np.full(n, np.inf)
        if ok.any():
            r_arc[ok], _ = _residual_core(field, pts[ok])
        for i in range(n):
            if not ok[i] or not np.isfinite(r_arc[i]):
                continue
            left_ok = i == 0 or r_arc[i] <= r_arc[i - 1]
            right_ok = i == n - 1 or r_arc[i] <= r_arc[i + 1]
            if left_ok and right_ok:
                lo = pts[i - 1] if i > 0 else s
                hi = pts[i + 1] if i < n - 1 else e
                seeds.append((float(lo), float(hi)))
    found: list[tuple[float, float]] = []
    for lo, hi in seeds:
        refined = _golden_min(
            lambda x: _residual_or_inf(field, x), lo, hi, refine_tol
        )
        r = _residual_or_inf(field, refined)
        if r < RESIDUAL_ACCEPT:
            lam = refined % TWO_PI
            if lam > TWO_PI - DEDUPE_TOL:  # canonicalize roots at the seam
                lam -= TWO_PI
            found.append((lam, r))
    found.sort()
    phases: list[float] = []
    best = math.inf
    for k, (lam, r) in enumerate(found):
        if phases and lam - found[k - 1][0] <= DEDUPE_TOL:
            if r < best:
                phases[-1] = max(lam, 0.0)
                best = r
        else:
            phases.append(max(lam, 0.0))
            best = r
    return sorted(phases)


@dataclass(frozen=True)
class GeometricVector:
    """Lattice vector with geometric tails outside a finite core.

    ``value(x)`` equals ``plus_coef * zeta_in**x`` for ``x >= plus_cut``
    (with ``|zeta_in| < 1``), ``minus_coef * zeta_out**x`` for
    ``x <= minus_cut`` (with ``|zeta_out| > 1``), and the stored ``middle``
    rows on the sites strictly between the cuts.  Norms and tail masses are
    geometric series and are therefore evaluated in closed form.
    """

    plus_cut: int
    minus_cut: int
    zeta_in: complex
    zeta_out: complex
    plus_coef: np.ndarray
    minus_coef: np.ndarray
    middle: np.ndarray

    def value(self, x: int) -> np.ndarray:
        if x >= self.plus_cut:
            return self.plus_coef * self.zeta_in ** x
        if x <= self.minus_cut:
            return self.minus_coef * self.zeta_out ** x
        return self.middle[x - self.minus_cut - 1].copy()

    def values(self, lo: int, hi: int) -> np.ndarray:
        if hi < lo:
            return np.zeros((0, 2), dtype=np.complex128)
        return np.stack([self.value(x) for x in range(lo, hi + 1)])

    def norm_sq_at(self, x: int) -> float:
        v = self.value(x)
        return float(abs(v[0]) ** 2 + abs(v[1]) ** 2)

    def norm_sq_total(self) -> float:
        """Total squared norm over the whole lattice, tails in closed form."""
        r = abs(self.zeta_in) ** 2
        rho = abs(self.zeta_out) ** 2
        plus = float(np.sum(np.abs(self.plus_coef) ** 2)) * r ** self.plus_cut / (1.0 - r)
        minus = (
            float(np.sum(np.abs(self.minus_coef) ** 2))
            * rho ** self.minus_cut
            / (1.0 - 1.0 / rho)
        )
        return plus + minus + float(np.sum(np.abs(self.middle) ** 2))

    def mass_outside(self, lo: int, hi: int) -> float:
        inside = float(np.sum(np.abs(self.values(lo, hi)) ** 2))
        return max(self.norm_sq_total() - inside, 0.0)

    def scaled(self, factor: complex) -> "GeometricVector":
        return GeometricVector(
            self.plus_cut,
            self.minus_cut,
            self.zeta_in,
            self.zeta_out,
            factor * self.plus_coef,
            factor * self.minus_coef,
            factor * self.middle,
        )

    def overlap(self, state: WalkState) -> complex:
        """Inner product with a finite-support state (conjugating self)."""
        vals = self.values(state.lo, state.hi)
        return complex(np.sum(vals.conj() * state.amps))

    def tail_halfwidth(self, eps: float = 1e-16) -> int:
        """Half-width ``H`` with mass outside ``[-H, H]`` below ``eps``."""
        need = max(abs(self.plus_cut), abs(self.minus_cut)) + 1
        r = abs(self.zeta_in) ** 2
        p = float(np.sum(np.abs(self.plus_coef) ** 2))
        if p > 0.0:
            # p * r**x / (1 - r) <= eps / 2
            need = max(need, math.ceil(math.log(eps * (1 - r) / (2 * p), r)))
        rho = abs(self.zeta_out) ** 2
        q = float(np.sum(np.abs(self.minus_coef) ** 2))
        if q > 0.0:
            need = max(need, math.ceil(math.log(eps * (1 - 1 / rho) / (2 * q), 1 / rho)))
        return int(need)

    def to_state(self, lo: int, hi: int, renormalize: bool = True) -> WalkState:
        """Sample onto a window, optionally renormalizing the truncation."""
        vals = self.values(lo, hi)
        if renormalize:
            n = math.sqrt(float(np.sum(np.abs(vals) ** 2)))
            if n > 0.0:
                vals = vals / n
        return WalkState(lo, vals)


@dataclass(frozen=True)
class EigenPair:
    """An eigenphase with the data needed to reconstruct its eigenvector.

    ``middle_tilde`` holds the reshaped solution on the core sites
    ``x_minus .. x_plus``; outside the core it continues geometrically with
    ratios ``zeta_in`` (right) and ``zeta_out`` (left).  ``norm_factor``
    scales the reconstruction to unit total norm, computed in closed form.
    """

    lam: float
    zeta_in: complex
    zeta_out: complex
    phi: np.ndarray
    middle_tilde: np.ndarray
    norm_factor: float
    x_minus: int
    x_plus: int

    def vector(self) -> GeometricVector:
        """The unit-norm eigenvector in walker space."""
        t = self.middle_tilde
        x_m, x_p = self.x_minus, self.x_plus
        nf = self.norm_factor
        plus_coef = nf * np.array([self.zeta_in * t[-1, 0], t[-1, 1]]) * self.zeta_in ** (-x_p)
        minus_coef = nf * np.array([self.zeta_out * t[0, 0], t[0, 1]]) * self.zeta_out ** (-x_m)
        middle = np.array(
            [[t[x - x_m + 1, 0], t[x - x_m, 1]] for x in range(x_m + 1, x_p)],
            dtype=np.complex128,
        ).reshape(-1, 2)
        return GeometricVector(
            plus_cut=x_p,
            minus_cut=x_m,
            zeta_in=self.zeta_in,
            zeta_out=self.zeta_out,
            plus_coef=plus_coef,
            minus_coef=minus_coef,
            middle=nf * middle,
        )


def build_eigenvector(field: CoinField, lam: float) -> EigenPair:
    """Reconstruct the (unique up to phase) unit eigenvector at an eigenphase.

    The global phase is fixed by making the largest-modulus component of the
    matching generator real and positive.
    """
    try:
        res = eigen_residual(field, lam)
    except NotInAdmissibleSetError as exc:
        raise NoEigenvalueError(f"phase {lam!r} is not admissible") from exc
    if res >= RESIDUAL_ACCEPT:
        raise NoEigenvalueError(f"residual {res:.3e} at phase {lam!r} is too large")
    lam = float(lam) % TWO_PI
    _, phi_arr = _residual_core(field, np.array([lam]))
    phi = phi_arr[0]
    k = int(np.argmax(np.abs(phi)))
    phi = phi * (phi[k].conjugate() / abs(phi[k]))
    zeta_in = complex(contracting_zeta(field.right, lam))
    zeta_out = complex(expanding_zeta(field.left, lam))
    x_m, x_p = field.x_minus, field.x_plus
    tilde = np.zeros((x_p - x_m + 1, 2), dtype=np.complex128)
    i0 = -x_m
    tilde[i0] = phi
    for x in range(0, x_p):
        tilde[i0 + x + 1] = transfer_matrix(field.coin(x), lam) @ tilde[i0 + x]
    for x in range(-1, x_m - 1, -1):
        tilde[i0 + x] = transfer_inverse(field.coin(x), lam) @ tilde[i0 + x + 1]
    r = abs(zeta_in) ** 2
    rho = abs(zeta_out) ** 2
    total = (
        float(np.sum(np.abs(tilde[1:-1]) ** 2))
        + float(np.sum(np.abs(tilde[-1]) ** 2)) / (1.0 - r)
        + float(np.sum(np.abs(tilde[0]) ** 2)) / (1.0 - 1.0 / rho)
    )
    return EigenPair(
        lam=lam,
        zeta_in=zeta_in,
        zeta_out=zeta_out,
        phi=phi,
        middle_tilde=tilde,
        norm_factor=1.0 / math.sqrt(total),
        x_minus=x_m,
        x_plus=x_p,
    )


def limit_distribution(
    eigs: Sequence[EigenPair],
    initial: WalkState,
    window: tuple[int, int] | None = None,
) -> Distribution:
    """Time-averaged limit distribution of the trapped component on a window.

    ``masses(x) = sum_lam |<vec_lam, initial>|^2 ||vec_lam(x)||^2`` where the
    sum runs over the (simple) eigenphases.
    """
    if window is None:
        lo, hi = min(initial.lo, -20), max(initial.hi, 20)
    else:
        lo, hi = int(window[0]), int(window[1])
    masses = np.zeros(hi - lo + 1)
    for pair in eigs:
        vec = pair.vector()
        weight = abs(vec.overlap(initial)) ** 2
        vals = vec.values(lo, hi)
        masses += weight * (np.abs(vals[:, 0]) ** 2 + np.abs(vals[:, 1]) ** 2)
    return Distribution(lo, masses)


def trapped_mass(eigs: Sequence[EigenPair], initial: WalkState) -> float:
    """Squared norm of the initial state's projection onto the point spectrum."""
    return float(sum(abs(p.vector().overlap(initial)) ** 2 for p in eigs))


def is_strongly_trapped(eigs: Sequence[EigenPair]) -> bool:
    """True when two eigenvectors have linearly independent origin values.

    Exactly then does every origin-supported initial state keep positive
    time-averaged mass at the origin.
    """
    vals = [p.vector().value(0) for p in eigs]
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            vi, vj = vals[i], vals[j]
            minor = abs(vi[0] * vj[1] - vi[1] * vj[0])
            scale = float(np.linalg.norm(vi) * np.linalg.norm(vj))
            if minor > INDEPENDENCE_TOL * scale:
                return True
    return False


def admissible_arcs(field: CoinField, samples: int = 4096) -> tuple[tuple[float, float], ...]:
    """Grid-resolution arcs ``(start, end)`` of the admissible phase set."""
    lams = np.arange(samples) * (TWO_PI / samples)
    ok = (discriminant(field.right, lams) > LAMBDA_TOL) & (
        discriminant(field.left, lams) > LAMBDA_TOL
    )
    if not ok.any():
        return ()
    if ok.all():
        return ((0.0, TWO_PI),)
    arcs: list[list[float]] = []
    h = TWO_PI / samples
    for i, good in enumerate(ok):
        if good and (i == 0 or not ok[i - 1]):
            arcs.append([float(lams[i]), float(lams[i]) + h])
        elif good:
            arcs[-1][1] = float(lams[i]) + h
    if len(arcs) > 1 and ok[0] and ok[-1]:  # merge across the seam
        arcs[0][0] = arcs[-1][0] - TWO_PI
        arcs.pop()
    return tuple((a, b) for a, b in arcs)


@dataclass(frozen=True)
class SpectralReport:
    """Full spectral analysis of one coin field."""

    eigenpairs: tuple[EigenPair, ...]
    arcs: tuple[tuple[float, float], ...]
    strongly_trapped: bool


def analyze(
    field: CoinField,
    grid_points: int = DEFAULT_GRID,
    refine_tol: float = DEFAULT_REFINE_TOL,
) -> SpectralReport:
    """Locate all eigenphases, build their eigenvectors, classify trapping."""
    phases = find_eigenphases(field, grid_points, refine_tol)
    pairs = tuple(build_eigenvector(field, lam) for lam in phases)
    return SpectralReport(pairs, admissible_arcs(field), is_strongly_trapped(pairs))
