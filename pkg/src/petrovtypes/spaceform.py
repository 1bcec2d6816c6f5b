"""Ambient space forms, quadric level-set machinery, and scalar constraint checks.

The flat variant works with f(x) = <Px, x> + 2<p, x> on a pseudo-Euclidean
space; the sphere variant with f(x) = <Px, x> restricted to the unit pseudo-
sphere.  Both produce isoparametric level sets under the admissibility
conditions checked here, and the sphere variant has a closed-form shape
operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    ShapeError,
    ToleranceError,
    default_tol,
    matrix_from_json,
    matrix_to_json,
    minimal_poly,
    to_float,
)


class DomainError(ValueError):
    """A point lies outside the region where the formulas are valid."""


def inner_matrix(n: int, s: int) -> np.ndarray:
    """Gram matrix of the pseudo-inner product of index s on dimension n."""
    if not 0 <= s <= n:
        raise ShapeError(f"index {s} out of range for dimension {n}")
    d = np.ones(n)
    d[:s] = -1.0
    return np.diag(d)


def ambient_inner(u, v, s: int) -> float:
    """Pseudo-inner product <u, v>_s: the first s coordinates count negative."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise ShapeError("ambient_inner needs two vectors of equal length")
    if not 0 <= s <= u.shape[0]:
        raise ShapeError(f"index {s} out of range for dimension {u.shape[0]}")
    return float(-u[:s] @ v[:s] + u[s:] @ v[s:])


@dataclass(frozen=True)
class SpaceForm:
    """Pseudo-Riemannian space form: dim and index of the manifold itself,
    curvature kappa in {-1, 0, 1}.

    For kappa = 0 the space is the pseudo-Euclidean space of the given
    dimension; kappa = 1 is the unit sphere <x,x> = 1 inside a flat space of
    one more dimension and the same index; kappa = -1 is the hyperbolic sheet
    <x,x> = -1 with the embedding index raised by one.
    """

    dim: int
    index: int
    curvature: int

    def __post_init__(self):
        if self.curvature not in (-1, 0, 1):
            raise ShapeError("curvature must be -1, 0, or 1")
        if not 0 <= self.index <= self.dim:
            raise ShapeError("index out of range")

    @property
    def embedding_dim(self) -> int:
        return self.dim if self.curvature == 0 else self.dim + 1

    @property
    def embedding_index(self) -> int:
        if self.curvature == -1:
            return self.index + 1
        return self.index

    def inner(self, u, v) -> float:
        return ambient_inner(u, v, self.embedding_index)

    def contains(self, x, tol: float | None = None) -> bool:
        tol = default_tol() if tol is None else tol
        x = np.asarray(x, dtype=float)
        if x.shape != (self.embedding_dim,):
            return False
        if self.curvature == 0:
            return True
        return abs(self.inner(x, x) - self.curvature) <= tol * max(
            1.0, float(np.abs(x).max()) ** 2
        )


@dataclass(frozen=True)
class QuadricFunction:
    """Quadric isoparametric candidate; variant 'flat' or 'sphere'.

    flat:   f(x) = <Px, x>_s + 2<p, x>_s on the pseudo-Euclidean space.
    sphere: f(x) = <Px, x>_s on the unit pseudo-sphere.
    """

    variant: str
    s: int
    P: np.ndarray
    c: float
    p: np.ndarray | None = None

    def __post_init__(self):
        if self.variant not in ("flat", "sphere"):
            raise ShapeError("variant must be 'flat' or 'sphere'")
        pmat = to_float(self.P)
        n = pmat.shape[0]
        if pmat.shape != (n, n):
            raise ShapeError("P must be square")
        g = inner_matrix(n, self.s)
        if np.abs(g @ pmat - pmat.T @ g).max() > 1e-9 * max(np.abs(pmat).max(), 1.0):
            raise ShapeError("P is not self-adjoint for the ambient form")
        object.__setattr__(self, "P", pmat)
        if self.variant == "flat":
            pv = np.zeros(n) if self.p is None else np.asarray(self.p, dtype=float)
            if pv.shape != (n,):
                raise ShapeError("p must match the dimension of P")
            object.__setattr__(self, "p", pv)
        elif self.p is not None:
            raise ShapeError("sphere variant takes no linear term")

    @property
    def dim(self) -> int:
        return self.P.shape[0]

    def value(self, x) -> float:
        x = np.asarray(x, dtype=float)
        out = ambient_inner(self.P @ x, x, self.s)
        if self.variant == "flat":
            out += 2.0 * ambient_inner(self.p, x, self.s)
        return out

    def to_json(self) -> dict:
        out = {
            "variant": self.variant,
            "s": self.s,
            "P": matrix_to_json(self.P),
            "c": self.c,
        }
        if self.variant == "flat":
            out["p"] = list(map(float, self.p))
        return out

    @classmethod
    def from_json(cls, data: dict) -> "QuadricFunction":
        p = data.get("p")
        return cls(
            variant=data["variant"],
            s=int(data["s"]),
            P=matrix_from_json(data["P"]),
            c=float(data["c"]),
            p=None if p is None else np.asarray(p, dtype=float),
        )


def quadric_gradient(f: QuadricFunction, x, tol: float | None = None) -> np.ndarray:
    """Ambient (flat) or tangential (sphere) gradient of the quadric."""
    tol = default_tol() if tol is None else tol
    x = np.asarray(x, dtype=float)
    if x.shape != (f.dim,):
        raise ShapeError("point dimension mismatch")
    if f.variant == "flat":
        return 2.0 * (f.P @ x) + 2.0 * f.p
    norm2 = ambient_inner(x, x, f.s)
    if abs(norm2 - 1.0) > max(tol, 1e-7) * max(1.0, float(np.abs(x).max()) ** 2):
        raise DomainError("sphere-variant gradient needs a point on the unit sphere")
    px = f.P @ x
    return 2.0 * px - 2.0 * ambient_inner(px, x, f.s) * x


def admissibility_check(
    f: QuadricFunction, tol: float | None = None
) -> tuple[bool, str]:
    """Checks the conditions that make the quadric level sets isoparametric.

    flat:   P = rho*E with rho != 0, or P^2 = O, Pp = 0, <p,p> != 0.
    sphere: the minimal polynomial of P has degree 2.
    """
    tol = default_tol() if tol is None else tol
    n = f.dim
    scale = max(np.abs(f.P).max(), 1.0)
    if f.variant == "sphere":
        try:
            mu = minimal_poly(f.P, tol)
        except ToleranceError as exc:
            return False, f"minimal polynomial undecidable: {exc}"
        deg = len(mu) - 1
        if deg == 2:
            return True, "deg mu_P = 2"
        return False, f"deg mu_P = {deg}, need 2"
    diag = f.P[0, 0]
    if (
        abs(diag) > tol * scale
        and np.abs(f.P - diag * np.eye(n)).max() <= tol * scale
    ):
        return True, "P = rho*E"
    if np.abs(f.P @ f.P).max() > tol * scale * scale:
        return False, "P^2 = O fails (and P is not a nonzero multiple of E)"
    if np.abs(f.P @ f.p).max() > tol * scale * max(np.abs(f.p).max(), 1.0):
        return False, "Pp = 0 fails"
    if abs(ambient_inner(f.p, f.p, f.s)) <= tol * max(np.abs(f.p).max(), 1.0) ** 2:
        return False, "<p, p> = 0"
    return True, "P^2 = O, Pp = 0, <p, p> != 0"


def quadratic_minimal_data(f: QuadricFunction, tol: float | None = None):
    """Coefficients (a, b) with P^2 = a*P + b*E, for sphere-variant quadrics."""
    tol = default_tol() if tol is None else tol
    mu = minimal_poly(f.P, tol)
    if len(mu) - 1 != 2:
        raise DomainError("minimal polynomial of P must have degree 2")
    # monic t^2 - a t - b stored ascending as [-b, -a, 1]
    return -float(mu[1]), -float(mu[0])


def regular_level_value(f: QuadricFunction, tol: float | None = None) -> float:
    """Phi(c) = <grad f, grad f> as a function of the level value alone."""
    tol = default_tol() if tol is None else tol
    c = f.c
    if f.variant == "flat":
        ok, diag = admissibility_check(f, tol)
        if not ok:
            raise DomainError(f"inadmissible quadric: {diag}")
        if "rho" in diag:
            rho = float(f.P[0, 0])
            # <2Px+2p, 2Px+2p> = 4 rho (<Px,x> + 2<p,x>) + 4<p,p> = 4 rho c + 4<p,p>
            return 4.0 * rho * c + 4.0 * ambient_inner(f.p, f.p, f.s)
        return 4.0 * ambient_inner(f.p, f.p, f.s)
    a, b = quadratic_minimal_data(f, tol)
    # <grad, grad> = 4(<P^2 x, x> - c^2) = 4(a c + b - c^2) on the sphere
    return 4.0 * (a * c + b - c * c)


def sphere_shape_operator(
    f: QuadricFunction,
    x,
    tangent_basis: np.ndarray,
    tol: float | None = None,
) -> tuple[np.ndarray, int]:
    """Shape operator of the level hypersurface of a sphere-variant quadric.

    Returns the matrix of (cE - P)/sqrt(-delta*mu_P(c)) in the supplied
    tangent basis, together with delta, the causal sign of the gradient.
    """
    tol = default_tol() if tol is None else tol
    if f.variant != "sphere":
        raise DomainError("shape-operator formula applies to the sphere variant")
    x = np.asarray(x, dtype=float)
    basis = to_float(tangent_basis)
    n = f.dim
    if basis.shape[0] != n:
        raise ShapeError("tangent basis rows must match the ambient dimension")
    if abs(f.value(x) - f.c) > max(tol, 1e-7) * max(1.0, abs(f.c)):
        raise DomainError("point is not on the requested level set")
    grad = quadric_gradient(f, x, tol)
    phi = ambient_inner(grad, grad, f.s)
    if abs(phi) <= max(tol, 1e-9):
        raise DomainError("level value outside the regular range: <grad, grad> = 0")
    delta = 1 if phi > 0 else -1
    a, b = quadratic_minimal_data(f, tol)
    mu_c = f.c * f.c - a * f.c - b
    if -delta * mu_c <= 0:
        raise DomainError("degenerate level: -delta * mu_P(c) must be positive")
    op = (f.c * np.eye(n) - f.P) / np.sqrt(-delta * mu_c)
    image = op @ basis
    rep, residual, *_ = np.linalg.lstsq(basis, image, rcond=None)
    back = basis @ rep
    if np.abs(back - image).max() > max(tol, 1e-7) * max(np.abs(image).max(), 1.0):
        raise ToleranceError("tangent basis is not invariant under the operator")
    return rep, delta


@dataclass(frozen=True)
class CurvatureSpectrum:
    """Principal curvatures with multiplicities; complex ones as (alpha, beta)."""

    real: tuple[tuple[float, int], ...]
    complex: tuple[tuple[float, float, int], ...] = field(default_factory=tuple)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _k, m in self.real) + 2 * sum(
            m for _a, _b, m in self.complex
        )


def cartan_residual(spec: CurvatureSpectrum, delta: int, i: int) -> float:
    """Sum over the other curvatures of m_j (delta + k_i k_j)/(k_j - k_i).

    Vanishes for genuine isoparametric spectra when the i-th real curvature
    has full geometric multiplicity.  Complex curvatures enter as conjugate
    pairs, so the total stays real.
    """
    if not 0 <= i < len(spec.real):
        raise DomainError(f"no real curvature with position {i}")
    if len(spec.real) + len(spec.complex) < 2:
        raise DomainError("need at least two distinct curvatures")
    k_i = spec.real[i][0]
    total = 0.0 + 0.0j
    for j, (k_j, m_j) in enumerate(spec.real):
        if j == i:
            continue
        if abs(k_j - k_i) < 1e-12:
            raise DomainError("repeated real curvature in a denominator")
        total += m_j * (delta + k_i * k_j) / (k_j - k_i)
    for alpha, beta, m_j in spec.complex:
        for lam in (complex(alpha, beta), complex(alpha, -beta)):
            total += m_j * (delta + k_i * lam) / (lam - k_i)
    return float(total.real)


def modulus_relation(kappa: float, nu: int, alpha: float, beta: float) -> float:
    """kappa + nu*(alpha^2 + beta^2): zero is necessary for a complex curvature
    alpha + i*beta to occur on an isoparametric hypersurface of normal sign nu."""
    if beta <= 0:
        raise DomainError("beta must be positive")
    return kappa + nu * (alpha * alpha + beta * beta)


def type3_forced_curvature(alpha: float, beta: float) -> float:
    """The constant curvature (alpha^2 + beta^2)/alpha forced by a complex
    principal curvature in the type-III chain computation."""
    if alpha == 0:
        raise DomainError("alpha = 0 admits no solution")
    return (alpha * alpha + beta * beta) / alpha
