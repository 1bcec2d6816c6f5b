"""Numerical verification harness.

Finite-difference checks that the catalog entries really are what they claim:
the shape matrix matches the derivative of the unit normal, the induced
metric satisfies the Gauss and Codazzi equations, the defining functions of
the level-set entries are isoparametric, and the classification tables are
reproduced cell by cell.

All derivatives are second-order central differences.  First derivatives of
the charts are exact (catalog.chart_jacobian), so the finite differencing is
only ever applied to smooth scalar- or matrix-valued functions of the chart
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import catalog
from .linalg import BilinearSpace
from .petrov import SelfAdjointPair, classify_geometric
from .spaceform import QuadricFunction, ambient_inner, inner_matrix, quadric_gradient

# per-check defaults, overridable from the CLI
CONFIG = {
    "shape_h": 1e-4,
    "shape_threshold": 1e-5,
    "curvature_h": 1e-3,
    "curvature_threshold": 1e-3,
    "isoparametric_threshold": 1e-8,
    "convergence_ratio": 3.0,
}


@dataclass(frozen=True)
class ResidualReport:
    example_id: str
    check: str
    points: tuple
    residual: float
    h: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.threshold


@dataclass(frozen=True)
class CurvatureData:
    """Finite-difference metric data on a parametrized patch."""

    metric: np.ndarray
    christoffel: np.ndarray  # gamma[k, i, j] for nabla_i d_j = gamma^k_ij d_k
    curvature: np.ndarray  # riem[i, j, k, l] = <R(d_i, d_j) d_k, d_l>


def _metric_at(example_id: str, p: np.ndarray, a: float) -> np.ndarray:
    jac = catalog.chart_jacobian(example_id, p, a=a)
    amb = catalog.ambient_of(example_id)
    g = inner_matrix(amb.embedding_dim, amb.embedding_index)
    return jac.T @ g @ jac


def _christoffel_at(example_id: str, p: np.ndarray, a: float, h: float) -> np.ndarray:
    m = p.shape[0]
    g0 = _metric_at(example_id, p, a)
    dg = np.zeros((m, m, m))  # dg[l, i, j] = d_l g_ij
    for l in range(m):
        pp = p.copy()
        pm = p.copy()
        pp[l] += h
        pm[l] -= h
        dg[l] = (_metric_at(example_id, pp, a) - _metric_at(example_id, pm, a)) / (2 * h)
    ginv = np.linalg.inv(g0)
    gamma = np.zeros((m, m, m))
    for k in range(m):
        for i in range(m):
            for j in range(m):
                gamma[k, i, j] = 0.5 * np.sum(
                    ginv[k] * (dg[i, j] + dg[j, i] - dg[:, i, j])
                )
    return gamma


def curvature_data(example_id: str, p, a: float = 1.0, h: float | None = None) -> CurvatureData:
    """Metric, Christoffel symbols, and curvature components at p."""
    p = np.asarray(p, dtype=float)
    if h is None:
        h = CONFIG["curvature_h"]
    m = p.shape[0]
    g0 = _metric_at(example_id, p, a)
    gamma = _christoffel_at(example_id, p, a, h)
    dgamma = np.zeros((m, m, m, m))  # dgamma[l, k, i, j] = d_l gamma^k_ij
    for l in range(m):
        pp = p.copy()
        pm = p.copy()
        pp[l] += h
        pm[l] -= h
        dgamma[l] = (
            _christoffel_at(example_id, pp, a, h) - _christoffel_at(example_id, pm, a, h)
        ) / (2 * h)
    # riem_up[m_, i, j, k]: R(d_i, d_j) d_k = riem_up[m_, i, j, k] d_m
    riem_up = np.zeros((m, m, m, m))
    for mm in range(m):
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    riem_up[mm, i, j, k] = (
                        dgamma[i, mm, j, k]
                        - dgamma[j, mm, i, k]
                        + np.sum(gamma[mm, i] * gamma[:, j, k])
                        - np.sum(gamma[mm, j] * gamma[:, i, k])
                    )
    riem = np.einsum("mijk,ml->ijkl", riem_up, g0)
    return CurvatureData(metric=g0, christoffel=gamma, curvature=riem)


def _shape_in_coordinates(example_id: str, p: np.ndarray, a: float):
    """Shape operator as a matrix in the chart-coordinate frame, plus the
    per-point data used to build it."""
    fd = catalog.evaluate(example_id, p, a=a)
    jac = catalog.chart_jacobian(example_id, p, a=a)
    coef, *_ = np.linalg.lstsq(fd.frame, jac, rcond=None)
    a_coord = np.linalg.solve(coef, fd.shape @ coef)
    return a_coord, fd, jac


def shape_fd_check(
    example_id: str, p, a: float = 1.0, h: float | None = None,
    threshold: float | None = None,
) -> ResidualReport:
    """Compare the central difference of the unit normal along each chart
    direction against minus the shape operator applied to that direction."""
    p = np.asarray(p, dtype=float)
    if h is None:
        h = CONFIG["shape_h"]
    if threshold is None:
        threshold = CONFIG["shape_threshold"]
    a_coord, fd, jac = _shape_in_coordinates(example_id, p, a)
    m = p.shape[0]
    dxi = np.zeros((fd.point.shape[0], m))
    for i in range(m):
        pp = p.copy()
        pm = p.copy()
        pp[i] += h
        pm[i] -= h
        dxi[:, i] = (
            catalog.evaluate(example_id, pp, a=a).normal
            - catalog.evaluate(example_id, pm, a=a).normal
        ) / (2 * h)
    predicted = -jac @ a_coord
    resid = dxi - predicted
    if catalog.ambient_of(example_id).curvature != 0:
        # compare tangentially: the radial component of d(xi) is curvature of
        # the ambient sphere, not shape information
        q, _ = np.linalg.qr(fd.frame)
        resid = q @ (q.T @ resid)
    return ResidualReport(
        example_id, "shape_fd", (tuple(p),), float(np.abs(resid).max()), h, threshold
    )


def gauss_residual(
    example_id: str, p, a: float = 1.0, h: float | None = None,
    threshold: float | None = None, shape_override: np.ndarray | None = None,
) -> ResidualReport:
    """Gauss equation in chart coordinates: curvature of the induced metric
    against the constant-curvature term plus the shape-operator term."""
    p = np.asarray(p, dtype=float)
    if h is None:
        h = CONFIG["curvature_h"]
    if threshold is None:
        threshold = CONFIG["curvature_threshold"]
    data = curvature_data(example_id, p, a=a, h=h)
    a_coord, fd, _jac = _shape_in_coordinates(example_id, p, a)
    if shape_override is not None:
        coef = np.linalg.lstsq(fd.frame, catalog.chart_jacobian(example_id, p, a=a), rcond=None)[0]
        a_coord = np.linalg.solve(coef, shape_override @ coef)
    g = data.metric
    ag = g @ a_coord  # ag[i, j] = <d_i, A d_j>, symmetric by self-adjointness
    kappa = catalog.ambient_of(example_id).curvature
    nu = fd.nu
    m = p.shape[0]
    resid = 0.0
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for l in range(m):
                    rhs = kappa * (g[j, k] * g[i, l] - g[i, k] * g[j, l]) + nu * (
                        ag[j, k] * ag[i, l] - ag[i, k] * ag[j, l]
                    )
                    resid = max(resid, abs(data.curvature[i, j, k, l] - rhs))
    return ResidualReport(
        example_id, "gauss", (tuple(p),), float(resid), h, threshold
    )


def codazzi_residual(
    example_id: str, p, a: float = 1.0, h: float | None = None,
    threshold: float | None = None,
) -> ResidualReport:
    """Codazzi equation in chart coordinates: the covariant derivative
    expression is symmetric in its first two slots."""
    p = np.asarray(p, dtype=float)
    if h is None:
        h = CONFIG["curvature_h"]
    if threshold is None:
        threshold = CONFIG["curvature_threshold"]
    m = p.shape[0]
    g0 = _metric_at(example_id, p, a)
    gamma = _christoffel_at(example_id, p, a, h)
    a0, _fd, _jac = _shape_in_coordinates(example_id, p, a)
    da = np.zeros((m, m, m))  # da[l] = d_l of the coordinate shape matrix
    for l in range(m):
        pp = p.copy()
        pm = p.copy()
        pp[l] += h
        pm[l] -= h
        da[l] = (
            _shape_in_coordinates(example_id, pp, a)[0]
            - _shape_in_coordinates(example_id, pm, a)[0]
        ) / (2 * h)
    ga = g0 @ a0
    resid = 0.0
    for i in range(m):
        for j in range(m):
            for k in range(m):
                # <nabla_i (A d_j), d_k> - <nabla_i d_j, A d_k>
                def term(i, j):
                    t = np.sum(da[i][:, j] * g0[:, k])
                    t += np.sum(a0[:, j] * (gamma[:, i, :].T @ g0[:, k]))
                    t -= np.sum(gamma[:, i, j] * ga[:, k])
                    return t

                resid = max(resid, abs(term(i, j) - term(j, i)))
    return ResidualReport(
        example_id, "codazzi", (tuple(p),), float(resid), h, threshold
    )


def _pseudo_orthonormal_tangent(x: np.ndarray, s: int) -> tuple[np.ndarray, np.ndarray]:
    """Pseudo-orthonormal basis of the tangent space of the unit pseudo-sphere
    at x; returns (basis columns, signs)."""
    n = x.shape[0]
    g = inner_matrix(n, s)
    row = (g @ x)[None, :]
    _u, _sv, vh = np.linalg.svd(row)
    cand = [vh[i] for i in range(1, n)]
    basis = []
    signs = []
    while cand:
        norms = [ambient_inner(v, v, s) for v in cand]
        idx = int(np.argmax(np.abs(norms)))
        v = cand.pop(idx)
        nv = norms[idx]
        if abs(nv) < 1e-10:
            raise np.linalg.LinAlgError("degenerate tangent direction")
        sgn = 1 if nv > 0 else -1
        v = v / np.sqrt(abs(nv))
        basis.append(v)
        signs.append(sgn)
        cand = [
            w - sgn * ambient_inner(w, v, s) * v for w in cand
        ]
    return np.array(basis).T, np.array(signs)


def _second_derivative(fun, h: float) -> float:
    """Fourth-order five-point second difference of a scalar function of one
    variable at 0."""
    return (
        -fun(2 * h) + 16 * fun(h) - 30 * fun(0.0) + 16 * fun(-h) - fun(-2 * h)
    ) / (12 * h * h)


def _sphere_laplacian(f: QuadricFunction, x: np.ndarray, h: float) -> float:
    """Laplace-Beltrami of f on the unit pseudo-sphere via second derivatives
    along geodesics in a pseudo-orthonormal tangent frame."""
    basis, signs = _pseudo_orthonormal_tangent(x, f.s)
    total = 0.0
    for v, sgn in zip(basis.T, signs):
        if sgn > 0:
            geo = lambda t: np.cos(t) * x + np.sin(t) * v
        else:
            geo = lambda t: np.cosh(t) * x + np.sinh(t) * v
        total += sgn * _second_derivative(lambda t: f.value(geo(t)), h)
    return total


def _flat_laplacian(f: QuadricFunction, x: np.ndarray, h: float) -> float:
    n = x.shape[0]
    total = 0.0
    for i in range(n):
        eps = -1.0 if i < f.s else 1.0
        e = np.zeros(n)
        e[i] = 1.0
        total += eps * _second_derivative(lambda t: f.value(x + t * e), h)
    return total


def isoparametric_function_check(
    f: QuadricFunction, samples, h: float = 5e-3, threshold: float | None = None
) -> ResidualReport:
    """Within each level group of sample points, the squared gradient norm and
    the finite-difference Laplacian must be constant."""
    if threshold is None:
        threshold = CONFIG["isoparametric_threshold"]
    levels: dict[float, list[np.ndarray]] = {}
    for x in samples:
        x = np.asarray(x, dtype=float)
        levels.setdefault(round(f.value(x), 9), []).append(x)
    spread = 0.0
    for pts in levels.values():
        grads = []
        laps = []
        for x in pts:
            grad = quadric_gradient(f, x)
            grads.append(ambient_inner(grad, grad, f.s))
            if f.variant == "flat":
                laps.append(_flat_laplacian(f, x, h))
            else:
                laps.append(_sphere_laplacian(f, x, h))
        spread = max(spread, max(grads) - min(grads), max(laps) - min(laps))
    return ResidualReport(
        "-", "isoparametric", tuple(tuple(x) for x in samples[:1]), float(spread),
        h, threshold,
    )


def run_checks(
    example_id: str, samples: int = 20, seed: int = 0, a: float = 1.0,
    h: float | None = None,
) -> list[ResidualReport]:
    """All finite-difference checks for one entry over seeded sample points."""
    reports = []
    pts = catalog.sample_domain(example_id, samples, seed=seed, a=a)
    for p in pts:
        reports.append(shape_fd_check(example_id, p, a=a, h=h))
        reports.append(gauss_residual(example_id, p, a=a, h=h))
        reports.append(codazzi_residual(example_id, p, a=a, h=h))
    return reports


def convergence_ratio(report_h: ResidualReport, report_h2: ResidualReport) -> float:
    """Residual ratio between paired runs at h and h/2."""
    if report_h2.residual == 0.0:
        return np.inf
    return report_h.residual / report_h2.residual


def _classify_sample(example_id: str, p, a: float = 1.0):
    fd = catalog.evaluate(example_id, p, a=a)
    pair = SelfAdjointPair(fd.shape, BilinearSpace.from_gram(fd.gram))
    return classify_geometric(pair)


def table_report(which: int, samples: int = 5, seed: int = 0) -> dict:
    """Regenerate one of the three classification tables and compare against
    the stated cells."""
    if which == 3:
        return _region_table("0-1", samples, seed)
    if which == 2:
        return _region_table("0-2", samples, seed)
    if which == 1:
        return _case_table(samples, seed)
    raise ValueError("table number must be 1, 2, or 3")


_REGION_ROWS = {
    "0-1": [
        ("v = n pi", "type I of index 1"),
        ("v in (2n pi, (2n+1) pi)", "type II of index 1"),
        ("v in ((2n+1) pi, (2n+2) pi)", "type II of index 1"),
    ],
    "0-2": [
        ("w = n pi", "type X of index 2"),
        ("w in (2n pi, (2n+1) pi)", "type IX-i of index 2"),
        ("w in ((2n+1) pi, (2n+2) pi)", "type IX-ii of index 2"),
    ],
}


def _region_table(example_id: str, samples: int, seed: int) -> dict:
    pts = catalog.sample_domain(example_id, 3 * max(samples, 1), seed=seed)
    rows = []
    mismatches = []
    for region in range(3):
        stated_label, stated_text = (
            _REGION_ROWS[example_id][region][0],
            _REGION_ROWS[example_id][region][1],
        )
        computed = set()
        for p in pts[region::3]:
            got = _classify_sample(example_id, p)
            want = catalog.expected_type(example_id, p)
            computed.add(f"type {got.label} of index {got.index}")
            if got.label != want.label or got.index != want.index:
                mismatches.append({"region": stated_label, "point": list(p)})
        rows.append(
            {
                "region": stated_label,
                "stated": stated_text,
                "computed": sorted(computed),
                "match": computed == {stated_text},
            }
        )
    return {
        "table": 3 if example_id == "0-1" else 2,
        "rows": rows,
        "mismatches": mismatches,
    }


_TABLE1_COLUMNS = (
    "I", "II", "III", "IV", "VI", "VII-i", "VII-ii", "IX-i", "IX-ii", "X", "XI",
)
# stated cells: x = non-existence, triangle = conditional non-existence,
# open = open question, letter = catalog entry realizing the type
_TABLE1_CELLS = {
    "R5_2 (delta=0)": {
        "I": "x", "II": "triangle", "III": "x", "IV": "x",
        "VI": "m", "VII-i": "l", "VII-ii": "k", "IX-i": "d", "IX-ii": "c",
        "X": "b", "XI": "a",
    },
    "S5_2 (delta=1)": {
        "I": "x", "II": "triangle", "III": "open", "IV": "x",
        "VI": "open", "VII-i": "open", "VII-ii": "open", "IX-i": "open",
        "IX-ii": "open", "X": "open", "XI": "e",
    },
    "S5_3 (delta=-1)": {
        "I": "open", "II": "j", "III": "open", "IV": "open",
        "VI": "open", "VII-i": "open", "VII-ii": "open", "IX-i": "i",
        "IX-ii": "h", "X": "g", "XI": "f",
    },
}
_TABLE1_ROW_OF = {
    "a": "R5_2 (delta=0)", "b": "R5_2 (delta=0)", "c": "R5_2 (delta=0)",
    "d": "R5_2 (delta=0)", "k": "R5_2 (delta=0)", "l": "R5_2 (delta=0)",
    "m": "R5_2 (delta=0)",
    "e": "S5_2 (delta=1)",
    "f": "S5_3 (delta=-1)", "g": "S5_3 (delta=-1)", "h": "S5_3 (delta=-1)",
    "i": "S5_3 (delta=-1)", "j": "S5_3 (delta=-1)",
}


def _case_table(samples: int, seed: int) -> dict:
    mismatches = []
    computed_cells = {row: dict(cells) for row, cells in _TABLE1_CELLS.items()}
    for ex_id, row in _TABLE1_ROW_OF.items():
        want = catalog.expected_type(ex_id)
        for p in catalog.sample_domain(ex_id, samples, seed=seed):
            got = _classify_sample(ex_id, p)
            if got.label != want.label or got.index != want.index:
                mismatches.append({"example": ex_id, "point": list(map(float, p))})
        # the letter sits in the column of its computed type
        if want.label not in _TABLE1_COLUMNS or _TABLE1_CELLS[row][want.label] != ex_id:
            mismatches.append({"example": ex_id, "cell": want.label})
    return {
        "table": 1,
        "columns": list(_TABLE1_COLUMNS),
        "rows": computed_cells,
        "mismatches": mismatches,
    }
