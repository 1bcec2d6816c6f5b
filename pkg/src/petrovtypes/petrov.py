"""Jordan structure, Petrov normal forms, and the index-1/index-2 taxonomy.

The normal form pairs a block operator (Jordan blocks for real eigenvalues,
real 2x2-companion chains for conjugate pairs) with a Gram matrix made of
signed anti-diagonal blocks.  The sign attached to each real block is part of
the invariant data and drives the type labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    BilinearSpace,
    ShapeError,
    ToleranceError,
    _rank,
    default_tol,
    eigen_clusters,
    is_self_adjoint,
    jordan_rank_profile,
    signature,
    to_float,
)


class ContractError(ValueError):
    """A precondition of the operation does not hold."""


class ConditioningError(ToleranceError):
    """Chain construction met a numerically defective configuration."""


class TaxonomyError(ValueError):
    """The block pattern does not fit the index-1/index-2 type lists."""


@dataclass(frozen=True)
class JordanStructure:
    """Block sizes per eigenvalue: real (lambda, sizes) and complex (alpha, beta, sizes)."""

    real_blocks: tuple[tuple[float, tuple[int, ...]], ...]
    complex_blocks: tuple[tuple[float, float, tuple[int, ...]], ...]

    @property
    def dim(self) -> int:
        return sum(sum(s) for _, s in self.real_blocks) + 2 * sum(
            sum(s) for _, _, s in self.complex_blocks
        )

    def to_json(self) -> dict:
        return {
            "real": [{"lambda": lam, "sizes": list(s)} for lam, s in self.real_blocks],
            "complex": [
                {"alpha": a, "beta": b, "sizes": list(s)}
                for a, b, s in self.complex_blocks
            ],
        }


@dataclass(frozen=True)
class SelfAdjointPair:
    """Operator matrix plus the bilinear space it is self-adjoint against."""

    a: np.ndarray
    space: BilinearSpace

    def __post_init__(self):
        if self.a.shape != (self.space.dim, self.space.dim):
            raise ShapeError("operator and space dimensions differ")


@dataclass(frozen=True)
class PetrovNormalForm:
    structure: JordanStructure
    signs: tuple[int, ...]  # one per real block, in canonical block order
    transform: np.ndarray  # columns: adapted basis; A_norm = T^-1 A T
    a_norm: np.ndarray
    g_norm: np.ndarray


@dataclass(frozen=True)
class AlgebraicType:
    index: int
    label: str
    epsilon: int | None = None
    parameters: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "label": self.label,
            "epsilon": self.epsilon,
            "params": self.parameters,
        }


@dataclass(frozen=True)
class GeometricType:
    index: int
    label: str

    def to_json(self) -> dict:
        return {"index": self.index, "label": self.label}


def anti_identity(n: int) -> np.ndarray:
    return np.fliplr(np.eye(n))


def jordan_block(lam: float, m: int) -> np.ndarray:
    return lam * np.eye(m) + np.diag(np.ones(m - 1), 1)


def companion_chain_block(alpha: float, beta: float, m: int) -> np.ndarray:
    """2m x 2m block: companion 2x2 cells on the diagonal, identity cells above."""
    c = np.array([[alpha, -beta], [beta, alpha]])
    out = np.kron(np.eye(m), c) + np.kron(np.diag(np.ones(m - 1), 1), np.eye(2))
    return out


def companion_gram_block(m: int) -> np.ndarray:
    """2m x 2m Gram: diag(-1, 1) cells along the block anti-diagonal."""
    e = np.diag([-1.0, 1.0])
    return np.kron(np.fliplr(np.eye(m)), e)


def jordan_structure(a: np.ndarray, tol: float | None = None) -> JordanStructure:
    """Recover block sizes per eigenvalue from rank sequences of (a - lam I)^k."""
    tol = default_tol() if tol is None else tol
    af = to_float(a)
    n = af.shape[0]
    if n > 8:
        raise ContractError("jordan_structure supports dim <= 8")
    real: list[tuple[float, tuple[int, ...]]] = []
    cplx: list[tuple[float, float, tuple[int, ...]]] = []
    for val, mult in eigen_clusters(a, tol):
        if isinstance(val, tuple):
            alpha, beta = val
            sizes = _block_sizes(af.astype(complex), complex(alpha, beta), mult, tol)
            cplx.append((alpha, beta, sizes))
        else:
            sizes = _block_sizes(af, float(val), mult, tol)
            real.append((float(val), sizes))
    real.sort(key=lambda t: t[0])
    cplx.sort(key=lambda t: (t[0], t[1]))
    return JordanStructure(tuple(real), tuple(cplx))


def _block_sizes(a: np.ndarray, lam, mult: int, tol: float) -> tuple[int, ...]:
    """Sizes (ascending) from rank differences on the generalized eigenspace."""
    ranks = jordan_rank_profile(a, lam, mult, tol)
    # blocks of size >= k: ranks[k-1] - ranks[k]
    counts = [ranks[k - 1] - ranks[k] for k in range(1, mult + 1)]
    sizes: list[int] = []
    for k in range(mult, 0, -1):
        exactly_k = counts[k - 1] - (counts[k] if k < mult else 0)
        sizes = [k] * exactly_k + sizes
    sizes.sort()
    if sum(sizes) != mult:
        raise ConditioningError(
            f"rank sequence at eigenvalue {lam} gives sizes {sizes} "
            f"inconsistent with multiplicity {mult}"
        )
    return tuple(sizes)


def assemble_normal_pair(
    structure: JordanStructure, signs: list[int]
) -> SelfAdjointPair:
    """Emit (A_norm, G_norm) exactly in the canonical block layout.

    Signs are consumed one per real block in canonical order (eigenvalues
    ascending, sizes ascending); among equal sizes of one eigenvalue the signs
    are reordered descending, which is a normalization, not an error.
    """
    n_real_blocks = sum(len(s) for _, s in structure.real_blocks)
    if len(signs) != n_real_blocks:
        raise ContractError(
            f"need {n_real_blocks} signs for the real blocks, got {len(signs)}"
        )
    blocks_a: list[np.ndarray] = []
    blocks_g: list[np.ndarray] = []
    norm_signs: list[int] = []
    i = 0
    for lam, sizes in structure.real_blocks:
        segment = list(zip(sizes, signs[i : i + len(sizes)]))
        i += len(sizes)
        # equal sizes: sign +1 before -1
        segment.sort(key=lambda t: (t[0], -t[1]))
        for m, eps in segment:
            if eps not in (-1, 1):
                raise ContractError("signs must be +-1")
            blocks_a.append(jordan_block(lam, m))
            blocks_g.append(eps * anti_identity(m))
            norm_signs.append(eps)
    for alpha, beta, sizes in structure.complex_blocks:
        for m in sizes:
            blocks_a.append(companion_chain_block(alpha, beta, m))
            blocks_g.append(companion_gram_block(m))
    a = _direct_sum(blocks_a)
    g = _direct_sum(blocks_g)
    return SelfAdjointPair(a, BilinearSpace.from_gram(g))


def _direct_sum(blocks: list[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    i = 0
    for b in blocks:
        m = b.shape[0]
        out[i : i + m, i : i + m] = b
        i += m
    return out


def petrov_normal_form(
    pair: SelfAdjointPair, tol: float | None = None
) -> PetrovNormalForm:
    """Simultaneous canonical form of a self-adjoint pair.

    Chains are built eigenvalue by eigenvalue inside each generalized
    eigenspace: longest chains first, each chain generator straightened so the
    Gram of the chain is exactly a signed anti-diagonal, then the chain's
    orthocomplement is deflated.  Complex pairs run the same procedure over the
    complexification and are realified into companion blocks.
    """
    tol = default_tol() if tol is None else tol
    a = to_float(pair.a)
    g = to_float(pair.space.gram)
    n = a.shape[0]
    if n > 8:
        raise ContractError("petrov_normal_form supports dim <= 8")
    if not is_self_adjoint(pair.a, pair.space, max(tol, 1e-7)):
        raise ContractError("operator is not self-adjoint for the given gram")
    structure = jordan_structure(a, tol)

    real_chains: list[tuple[float, int, int, np.ndarray]] = []  # (lam, m, eps, cols)
    for lam, sizes in structure.real_blocks:
        mu = sum(sizes)
        basis = _generalized_eigenspace(a, lam, mu, tol)
        chains = _extract_chains(a - lam * np.eye(n), g, basis, list(sizes), tol)
        for m, eps, cols in chains:
            real_chains.append((lam, m, int(np.sign(eps)), cols))

    cplx_chains: list[tuple[float, float, int, np.ndarray]] = []
    ac = a.astype(complex)
    gc = g.astype(complex)
    for alpha, beta, sizes in structure.complex_blocks:
        lam = complex(alpha, beta)
        nu = sum(sizes)
        basis = _generalized_eigenspace(ac, lam, nu, tol)
        chains = _extract_chains(
            ac - lam * np.eye(n, dtype=complex), gc, basis, list(sizes), tol,
            complex_mode=True,
        )
        for m, _eps, cols in chains:
            cplx_chains.append((alpha, beta, m, _realify_chain(cols)))

    # canonical block order: real eigenvalues ascending, sizes ascending,
    # sign +1 first among equal sizes; then complex by (alpha, beta)
    real_chains.sort(key=lambda t: (t[0], t[1], -t[2]))
    cplx_chains.sort(key=lambda t: (t[0], t[1], t[2]))
    columns = [cols for *_x, cols in real_chains] + [c for *_y, c in cplx_chains]
    t_mat = np.hstack(columns) if columns else np.zeros((n, 0))
    if t_mat.shape != (n, n):
        raise ConditioningError("chain construction did not produce a full basis")
    cond = np.linalg.cond(t_mat)
    if cond > 1.0 / max(tol, np.finfo(float).eps * 10):
        raise ConditioningError(f"chain basis condition number {cond:.3e} too large")
    signs = tuple(eps for _lam, _m, eps, _c in real_chains)
    normal = assemble_normal_pair(structure, list(signs))
    return PetrovNormalForm(
        structure=structure,
        signs=signs,
        transform=t_mat,
        a_norm=normal.a,
        g_norm=normal.space.gram,
    )


def _generalized_eigenspace(a: np.ndarray, lam, mu: int, tol: float) -> np.ndarray:
    """Orthonormal columns spanning ker (a - lam I)^mu, dimension mu."""
    n = a.shape[0]
    shifted = a - lam * np.eye(n, dtype=a.dtype)
    norm = np.linalg.norm(shifted, 2)
    if norm == 0:
        return np.eye(n, dtype=a.dtype)[:, :mu]
    power = np.linalg.matrix_power(shifted / norm, mu)
    _u, _s, vh = np.linalg.svd(power)
    basis = vh.conj().T[:, n - mu :]
    return basis


def _extract_chains(
    nmat: np.ndarray,
    g: np.ndarray,
    basis: np.ndarray,
    sizes: list[int],
    tol: float,
    complex_mode: bool = False,
) -> list[tuple[int, complex, np.ndarray]]:
    """Peel Jordan chains off the active subspace, longest first.

    Returns (size, sign_or_1, columns) with columns ordered so the operator
    acts as an upper Jordan/companion block and the chain Gram is exactly the
    target anti-diagonal block.
    """
    active = basis
    out = []
    remaining = sorted(sizes, reverse=True)
    for m in remaining:
        v, eps = _pick_chain_generator(nmat, g, active, m, tol, complex_mode)
        v = _straighten(nmat, g, v, m, eps)
        chain_cols = np.column_stack(
            [np.linalg.matrix_power(nmat, m - j) @ v for j in range(1, m + 1)]
        )
        out.append((m, eps, chain_cols))
        active = _deflate(g, active, chain_cols, tol)
    return out


def _pick_chain_generator(nmat, g, active, m, tol, complex_mode):
    """Vector v in the active span with B(v, N^(m-1) v) != 0, normalized to +-1.

    Float real mode picks the dominant eigenvector of the projected symmetric
    form; complex bilinear mode searches deterministic candidate combinations.
    """
    k = active.shape[1]
    form = active.conj().T @ g @ np.linalg.matrix_power(nmat, m - 1) @ active
    if not complex_mode:
        # active has real span; form is symmetric up to roundoff
        form_s = (form + form.T).real / 2.0
        w, vecs = np.linalg.eigh(form_s)
        idx = int(np.argmax(np.abs(w)))
        theta = w[idx]
        scale = max(np.abs(form_s).max(), np.abs(nmat).max(), 1.0)
        if abs(theta) <= tol * scale:
            raise ConditioningError(
                f"degenerate chain pairing for block size {m}; "
                "input sits near a Jordan-structure boundary"
            )
        v = active @ vecs[:, idx]
        v = v / np.sqrt(abs(theta))
        return v.real, (1 if theta > 0 else -1)
    # complex bilinear form x^T Q x (no conjugation): search candidates
    q = active.T @ g @ np.linalg.matrix_power(nmat, m - 1) @ active
    cands = [np.eye(k, dtype=complex)[:, i] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            e = np.eye(k, dtype=complex)
            cands.append(e[:, i] + e[:, j])
            cands.append(e[:, i] + 1j * e[:, j])
    vals = [c @ q @ c for c in cands]
    idx = int(np.argmax(np.abs(vals)))
    qv = vals[idx]
    scale = max(np.abs(q).max(), 1.0)
    if abs(qv) <= tol * scale:
        raise ConditioningError(
            f"degenerate complex chain pairing for block size {m}"
        )
    v = active @ cands[idx]
    # normalize B(v, N^(m-1) v) = -1 so the realified Gram cells are diag(-1, 1)
    mu = np.sqrt(-1.0 / qv + 0j)
    return v * mu, 1


def _straighten(nmat, g, v, m, eps):
    """Zero the lower Hankel moments B(v, N^k v), k < m-1, of the chain."""
    target = -1.0 if np.iscomplexobj(v) else float(eps)
    for k in range(m - 2, -1, -1):
        h_k = v @ g @ np.linalg.matrix_power(nmat, k) @ v
        if abs(h_k) == 0.0:
            continue
        a_coef = -h_k / (2.0 * target)
        v = v + a_coef * (np.linalg.matrix_power(nmat, m - 1 - k) @ v)
    return v


def _deflate(g, active, chain_cols, tol):
    """Basis of the B-orthocomplement of the chain inside the active span."""
    constraints = chain_cols.T @ g @ active  # rows: B(e_j, active columns)
    _u, s, vh = np.linalg.svd(constraints)
    rank = int((s > max(s[0], 1.0) * 1e-10).sum()) if s.size else 0
    keep = vh.conj().T[:, rank:]
    return active @ keep


def _realify_chain(cols: np.ndarray) -> np.ndarray:
    """Complex chain columns -> interleaved real pairs (sqrt2 Re, -sqrt2 Im)."""
    out = []
    for j in range(cols.shape[1]):
        e = cols[:, j]
        out.append(np.sqrt(2.0) * e.real)
        out.append(-np.sqrt(2.0) * e.imag)
    return np.column_stack(out)


def negative_index(form: PetrovNormalForm) -> int:
    """Negative inertia of the Gram, from the block data alone."""
    total = 0
    i = 0
    for _lam, sizes in form.structure.real_blocks:
        for m in sizes:
            eps = form.signs[i]
            total += (m + ((-1) ** m - 1) // 2 * eps) // 2
            i += 1
    for _a, _b, sizes in form.structure.complex_blocks:
        for m in sizes:
            total += m
    return total


def _real_block_list(form: PetrovNormalForm) -> list[tuple[float, int, int]]:
    """(lambda, size, eps) per real block in sign order."""
    out = []
    i = 0
    for lam, sizes in form.structure.real_blocks:
        for m in sizes:
            out.append((lam, m, form.signs[i]))
            i += 1
    return out


def classify_algebraic(form: PetrovNormalForm) -> AlgebraicType:
    """Match the block multiset onto the index-1 or index-2 labeled forms."""
    neg = negative_index(form)
    if neg not in (1, 2):
        raise TaxonomyError(f"negative index {neg} outside the classified range")
    reals = _real_block_list(form)
    cplx = [
        (a, b, m) for a, b, sizes in form.structure.complex_blocks for m in sizes
    ]
    # blocks that carry negative Gram directions
    neg_reals = [
        (lam, m, eps) for lam, m, eps in reals if (m + ((-1) ** m - 1) // 2 * eps) // 2
    ]
    background = [
        (lam, m, eps) for lam, m, eps in reals if not (m + ((-1) ** m - 1) // 2 * eps) // 2
    ]
    if any(m != 1 or eps != 1 for _l, m, eps in background):
        raise TaxonomyError("non-index blocks must be positive 1-blocks")
    if neg == 1:
        return _classify_index1(neg_reals, cplx)
    return _classify_index2(neg_reals, cplx)


def _classify_index1(neg_reals, cplx) -> AlgebraicType:
    if len(cplx) == 1 and cplx[0][2] == 1 and not neg_reals:
        a, b, _ = cplx[0]
        return AlgebraicType(1, "IV", None, {"alpha": a, "beta": b})
    if cplx:
        raise TaxonomyError("complex blocks incompatible with index 1")
    if len(neg_reals) != 1:
        raise TaxonomyError("index-1 pattern needs one negative-carrying block")
    lam, m, eps = neg_reals[0]
    if m == 1:
        return AlgebraicType(1, "I", None, {"a0": lam})
    if m == 2:
        return AlgebraicType(1, "II", eps, {"b": lam})
    if m == 3 and eps == 1:
        return AlgebraicType(1, "III", None, {"b": lam})
    raise TaxonomyError(f"real block (size {m}, sign {eps}) not in the index-1 list")


def _classify_index2(neg_reals, cplx) -> AlgebraicType:
    csizes = sorted(m for *_ab, m in cplx)
    if csizes == [2] and not neg_reals:
        a, b, _ = cplx[0]
        return AlgebraicType(2, "I", None, {"alpha": a, "beta": b})
    if csizes == [1, 1] and not neg_reals:
        params = {
            "pairs": [(a, b) for a, b, _m in sorted(cplx, key=lambda t: (t[0], t[1]))]
        }
        return AlgebraicType(2, "II", None, params)
    if csizes == [1] and len(neg_reals) == 1:
        a, b, _ = cplx[0]
        lam, m, eps = neg_reals[0]
        if m == 1:  # eps == -1 by negativity
            return AlgebraicType(2, "III", None, {"alpha": a, "beta": b, "a0": lam})
        if m == 2:
            return AlgebraicType(2, "IV", eps, {"alpha": a, "beta": b, "b": lam})
        if m == 3 and eps == 1:
            return AlgebraicType(2, "V", None, {"alpha": a, "beta": b, "b": lam})
        raise TaxonomyError("complex pair plus incompatible real block")
    if csizes:
        raise TaxonomyError("complex block pattern not in the index-2 list")
    # neg_reals stays in canonical block order; match on the size multiset
    pattern = tuple(sorted(m for _l, m, _e in neg_reals))
    if pattern == (4,):
        lam, _m, eps = neg_reals[0]
        return AlgebraicType(2, "VI", eps, {"b": lam})
    if pattern == (3,):
        lam, _m, eps = neg_reals[0]
        if eps == -1:
            return AlgebraicType(2, "VII-i", None, {"b": lam})
        raise TaxonomyError("lone positive 3-block carries wrong inertia")
    if pattern == (1, 3):
        one = next(b for b in neg_reals if b[1] == 1)
        three = next(b for b in neg_reals if b[1] == 3)
        if three[2] == 1:  # one[2] == -1 by negativity
            return AlgebraicType(2, "VII-ii", None, {"b": three[0], "a0": one[0]})
        raise TaxonomyError("3-block sign incompatible with VII-ii")
    if pattern == (2, 3):
        two = next(b for b in neg_reals if b[1] == 2)
        three = next(b for b in neg_reals if b[1] == 3)
        if three[2] == 1:
            return AlgebraicType(2, "VIII", two[2], {"b1": three[0], "b2": two[0]})
        raise TaxonomyError("3-block sign incompatible with VIII")
    if pattern == (2, 2):
        (l1, _m1, e1), (l2, _m2, e2) = neg_reals
        label = "IX-i" if e1 == e2 else "IX-ii"
        # representative sign: the canonical first block's
        return AlgebraicType(2, label, e1, {"b1": l1, "b2": l2})
    if pattern == (1, 2):
        one = next(b for b in neg_reals if b[1] == 1)
        two = next(b for b in neg_reals if b[1] == 2)
        return AlgebraicType(2, "X", two[2], {"b": two[0], "a0": one[0]})
    if pattern == (1, 1):
        return AlgebraicType(2, "XI", None, {"a": sorted(b[0] for b in neg_reals)})
    raise TaxonomyError(f"negative block pattern {pattern} not in the index-2 list")


def classify_geometric(
    pair: SelfAdjointPair, tol: float | None = None
) -> GeometricType:
    """Orientation-free label: agree under both unit-normal directions."""
    t1 = classify_algebraic(petrov_normal_form(pair, tol))
    flipped = SelfAdjointPair(-to_float(pair.a), pair.space)
    t2 = classify_algebraic(petrov_normal_form(flipped, tol))
    if t1.label != t2.label or t1.index != t2.index:
        raise TaxonomyError(
            f"label not orientation-invariant: {t1.label} vs {t2.label}"
        )
    return GeometricType(t1.index, t1.label)


def classify_pair(
    a: np.ndarray, gram: np.ndarray, tol: float | None = None
) -> dict:
    """One-shot classification bundle used by the CLI."""
    tol = default_tol() if tol is None else tol
    space = BilinearSpace.from_gram(gram, tol)
    pair = SelfAdjointPair(to_float(a), space)
    form = petrov_normal_form(pair, tol)
    alg = classify_algebraic(form)
    geo = classify_geometric(pair, tol)
    return {
        "algebraic": alg.to_json(),
        "geometric": geo.to_json(),
        "structure": form.structure.to_json(),
        "signs": list(form.signs),
        "negative_index": negative_index(form),
        "transform": form.transform.tolist(),
    }
