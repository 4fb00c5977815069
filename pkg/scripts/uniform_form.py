"""
Uniform normal form of a matrix from its Jordan-Chevalley decomposition.

V splits as ker S ⊕ im S. On each part the generating vectors of Jordan chains
of N of a fixed length m are chosen to span an S-invariant space F; the span
of F, NF, ..., N^(m-1)F is a uniform block whose matrix has the companion form
of S|F on the diagonal and identity blocks on the subdiagonal. Nothing is
factored: every subspace is found by exact linear solves.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from scripts.exact_linalg import (
    Mat,
    Subspace,
    Vector,
    char_poly,
    column_span,
    conjugate,
    contains,
    coordinates,
    extend_to_basis,
    image_basis,
    intersect,
    is_direct_sum,
    is_invertible,
    kernel_basis,
    rank,
    restrict,
    solve,
    span,
    subspace_sum,
    whole_space,
)
from scripts.jordan_chevalley import JCDecomposition
from scripts.nilpotent_structure import nilpotency_index
from scripts.polyarith import Poly, poly_product
from scripts.semisimplicity import is_semisimple
from scripts.utils import CheckReport, NotInvariantError, ShapeError, VerificationError, logger

KERNEL_PART = 'ker_S'
IMAGE_PART = 'im_S'


@dataclass(frozen=True)
class UniformBlock:
    """
    One uniform block U = F ⊕ NF ⊕ ... ⊕ N^(m-1)F.

    ``u_basis`` holds the block's columns of the final basis, ordered
    [u_1..u_q, Nu_1..Nu_q, ..., N^(m-1)u_1..N^(m-1)u_q].
    """

    part: str
    chain_length: int
    f_basis: Subspace
    q: int
    companion_polys: Tuple[Poly, ...]
    c_matrix: Mat
    d_matrix: Mat
    u_basis: Mat


@dataclass(frozen=True)
class UniformNormalForm:
    p_basis: Mat
    b: Mat
    blocks: Tuple[UniformBlock, ...]
    factorization: Tuple[Tuple[Poly, int], ...]
    kernel_S_dim: int


def companion_matrix(f: Poly) -> Mat:
    """
    Companion matrix of a monic polynomial of degree r >= 1: ones on the
    subdiagonal, last column the negated low coefficients.

    Raises:
        ValueError: If f is not monic or is constant
    """
    if not f.is_monic() or f.degree < 1:
        raise ValueError(f"companion_matrix needs a monic non-constant polynomial, got {f}")
    r = int(f.degree)
    rows = [[Fraction(0)] * r for _ in range(r)]
    for i in range(1, r):
        rows[i][i - 1] = Fraction(1)
    for i in range(r):
        rows[i][r - 1] = -f.coeffs[i]
    return Mat.from_rows(rows)


def annihilator(s: Mat, v: Sequence[Fraction]) -> Tuple[Poly, List[Vector]]:
    """
    Monic polynomial of least degree killing v under s, and the Krylov
    vectors v, s·v, ..., s^(r-1)·v that span the cyclic subspace of v.
    """
    dim = s.rows
    krylov: List[Vector] = []
    current = tuple(Fraction(x) for x in v)
    while True:
        if not krylov:
            relation = Mat.zeros(0, 1) if all(x == 0 for x in current) else None
        else:
            relation = solve(Mat.from_columns(krylov, dim), Mat.from_columns([current], dim))
        if relation is not None:
            break
        krylov.append(current)
        current = s.apply(current)
    coeffs = [-c for c in relation.column(0)] + [Fraction(1)]
    return Poly(tuple(coeffs)), krylov


def split_ker_im(s: Mat) -> Tuple[Subspace, Subspace]:
    """
    V = ker S ⊕ im S for semisimple S.

    Raises:
        VerificationError: If S is not semisimple or the sum is not direct
    """
    if not s.is_square:
        raise ShapeError(f"split_ker_im requires a square matrix, got {s.rows}x{s.cols}")
    dim = s.rows
    if dim == 0:
        return span([], 0), span([], 0)
    if not is_semisimple(s)[0]:
        raise VerificationError("split_ker_im: S is not semisimple")
    ker, im = kernel_basis(s), image_basis(s)
    if not is_direct_sum([ker, im], dim):
        raise VerificationError("ker S + im S is not a direct sum")
    s_im = restrict(s, im)
    chi_im = char_poly(s_im)
    if chi_im(0) == 0:
        raise VerificationError("S restricted to im S is singular")
    if char_poly(s) != Poly.monomial(ker.dim) * chi_im:
        raise VerificationError("χ_S != λ^(dim ker S) · χ_(S|im S)")
    logger.debug(f"dim ker S = {ker.dim}, dim im S = {im.dim}")
    return ker, im


def invariant_complement(s: Mat, w: Subspace, w_sub: Subspace) -> Subspace:
    """
    An S-invariant F with w = w_sub ⊕ F.

    In a basis of w adapted to w_sub the restriction of S is block upper
    triangular [[T11, T12], [0, T22]]. F is spanned by the columns of [X; I]
    where X solves T11·X - X·T22 = -T12; free variables are set to zero.

    Raises:
        ValueError: If w_sub is not contained in w
        NotInvariantError: If w or w_sub is not S-invariant
        VerificationError: If no invariant complement exists (S not semisimple)
    """
    k, j = w.dim, w_sub.dim
    if j == 0:
        return w
    if j == k:
        if not contains(w, w_sub.basis):
            raise ValueError("w_sub is not contained in w")
        return span([], w.ambient_dim)

    s_w = restrict(s, w)
    inner = coordinates(w, w_sub.basis)
    if inner is None:
        raise ValueError("w_sub is not contained in w")
    extra = extend_to_basis(inner.columns(), Mat.identity(k).columns(), k)
    adapted = Mat.from_columns(inner.columns() + extra, k)
    t = adapted.inverse() @ s_w @ adapted
    if not t.submatrix(j, k, 0, j).is_zero():
        raise NotInvariantError("w_sub is not invariant under S")
    t11 = t.submatrix(0, j, 0, j)
    t12 = t.submatrix(0, j, j, k)
    t22 = t.submatrix(j, k, j, k)

    width = k - j
    unknowns = j * width
    system = [[Fraction(0)] * unknowns for _ in range(unknowns)]
    rhs = [[Fraction(0)] for _ in range(unknowns)]
    for a in range(j):
        for b in range(width):
            row = a * width + b
            for c in range(j):
                system[row][c * width + b] += t11[a, c]
            for c in range(width):
                system[row][a * width + c] -= t22[c, b]
            rhs[row][0] = -t12[a, b]
    solution = solve(Mat.from_rows(system, unknowns), Mat.from_rows(rhs, 1))
    if solution is None:
        raise VerificationError("No S-invariant complement exists; S is not semisimple on w")

    x = Mat(j, width, solution.column(0))
    section = adapted @ Mat.from_rows(x.to_rows() + Mat.identity(width).to_rows(), width)
    return column_span(w.basis @ section)


def generator_spaces(n_restricted: Mat, s_restricted: Mat) -> List[Tuple[int, Subspace]]:
    """
    S-invariant spaces F_m of generating vectors of chains of length exactly m,
    for m from the nilpotency index down to 1; empty F_m are skipped.
    """
    dim = n_restricted.rows
    if dim == 0:
        return []
    index = nilpotency_index(n_restricted)
    image = image_basis(n_restricted)
    kernels = [span([], dim)]
    power = Mat.identity(dim)
    for _ in range(index):
        power = power @ n_restricted
        kernels.append(kernel_basis(power))

    spaces: List[Tuple[int, Subspace]] = []
    for m in range(index, 0, -1):
        covered = subspace_sum(kernels[m - 1], intersect(image, kernels[m]))
        f = invariant_complement(s_restricted, kernels[m], covered)
        if f.dim > 0:
            spaces.append((m, f))
    return spaces


def cyclic_companion_basis(s_f: Mat) -> Tuple[Mat, List[Poly], Mat]:
    """
    Greedy decomposition of a semisimple map into cyclic subspaces.

    Returns:
        Tuple of the basis (Krylov bases concatenated), the annihilators of
        the cyclic generators, and the block-companion matrix basis⁻¹·s_f·basis

    Raises:
        VerificationError: If the companion structure or χ identity fails
    """
    q = s_f.rows
    if q == 0:
        return Mat.zeros(0, 0), [], Mat.zeros(0, 0)
    chosen: List[Vector] = []
    polys: List[Poly] = []
    working = whole_space(q)
    unit_vectors = Mat.identity(q).columns()
    while len(chosen) < q:
        current_rank = len(chosen)
        seed = next(
            e for e in unit_vectors
            if rank(Mat.from_columns(chosen + [e], q)) > current_rank
        )
        split = solve(Mat.from_columns(chosen + working.vectors(), q), Mat.from_columns([seed], q))
        if split is None:
            raise VerificationError("Chosen cyclic subspaces and their complement do not span")
        component = working.basis @ split.submatrix(len(chosen), q, 0, 1)
        mu, krylov = annihilator(s_f, component.column(0))
        chosen.extend(krylov)
        polys.append(mu)
        working = invariant_complement(s_f, working, span(krylov, q))

    basis = Mat.from_columns(chosen, q)
    c_matrix = basis.inverse() @ s_f @ basis
    if c_matrix != Mat.block_diagonal([companion_matrix(mu) for mu in polys]):
        raise VerificationError("Cyclic basis does not give a block-companion matrix")
    if poly_product(polys) != char_poly(s_f):
        raise VerificationError("Product of annihilators differs from χ(S|F)")
    return basis, polys, c_matrix


def d_matrix(c: Mat, m: int) -> Mat:
    """m·q square matrix with c on the diagonal blocks and identity blocks below them."""
    q = c.rows
    size = m * q
    rows = [[Fraction(0)] * size for _ in range(size)]
    for level in range(m):
        offset = level * q
        for i in range(q):
            for j in range(q):
                rows[offset + i][offset + j] = c[i, j]
            if level + 1 < m:
                rows[offset + q + i][offset + i] = Fraction(1)
    return Mat.from_rows(rows, size)


def _block_layout(blocks: Sequence[UniformBlock]) -> Mat:
    return Mat.block_diagonal([blk.d_matrix for blk in blocks])


def assemble(a: Mat, dec: JCDecomposition) -> UniformNormalForm:
    """
    Basis P with P⁻¹·A·P = diag(D_1, ..., D_p), kernel-of-S blocks first and
    then image-of-S blocks, each by chain length descending.

    Raises:
        VerificationError: If any structural identity fails
    """
    dim = a.rows
    s, n = dec.s, dec.n
    ker, im = split_ker_im(s)
    blocks: List[UniformBlock] = []
    for tag, part in ((KERNEL_PART, ker), (IMAGE_PART, im)):
        if part.dim == 0:
            continue
        n_part = restrict(n, part)
        s_part = restrict(s, part)
        for m, f in generator_spaces(n_part, s_part):
            s_f = restrict(s_part, f)
            cyclic, polys, c = cyclic_companion_basis(s_f)
            generators = part.basis @ f.basis @ cyclic
            columns: List[Vector] = []
            layer = generators
            for _ in range(m):
                columns.extend(layer.columns())
                layer = n @ layer
            if not layer.is_zero():
                raise VerificationError(f"N^{m} does not vanish on the generators of length-{m} chains")
            blocks.append(UniformBlock(
                part=tag,
                chain_length=m,
                f_basis=column_span(part.basis @ f.basis),
                q=f.dim,
                companion_polys=tuple(polys),
                c_matrix=c,
                d_matrix=d_matrix(c, m),
                u_basis=Mat.from_columns(columns, dim),
            ))
            logger.debug(f"Block {tag}: m = {m}, q = {f.dim}, annihilators {[str(mu) for mu in polys]}")

    all_columns = [v for blk in blocks for v in blk.u_basis.columns()]
    if len(all_columns) != dim:
        raise VerificationError(f"Blocks supply {len(all_columns)} basis vectors for dimension {dim}")
    p_basis = Mat.from_columns(all_columns, dim)
    if not is_invertible(p_basis):
        raise VerificationError("Uniform basis is singular")
    b = conjugate(a, p_basis)
    if b != _block_layout(blocks):
        raise VerificationError("P⁻¹AP does not have the uniform block layout")

    unf = UniformNormalForm(p_basis, b, tuple(blocks), (), ker.dim)
    factorization = tuple(factor_charpoly(unf))
    logger.info(f"Uniform normal form: {len(blocks)} blocks, dim ker S = {ker.dim}")
    return UniformNormalForm(p_basis, b, tuple(blocks), factorization, ker.dim)


def factor_charpoly(unf: UniformNormalForm) -> List[Tuple[Poly, int]]:
    """(χ_(S|F), m) for each block; the product of χ_(S|F)^m is χ_A."""
    return [(poly_product(blk.companion_polys), blk.chain_length) for blk in unf.blocks]


def _expand(factorization: Sequence[Tuple[Poly, int]]) -> Poly:
    return poly_product(f ** m for f, m in factorization)


def verify_uniform(unf: UniformNormalForm, a: Mat, dec: JCDecomposition) -> CheckReport:
    """
    Exact re-check of a uniform normal form: global identities plus, for
    every block U of height m - 1, N^(m-1)U != 0, N^m U = 0 and
    ker N^(m-1) ∩ U = NU.
    """
    if (a.rows, a.cols) != (unf.p_basis.rows, unf.p_basis.cols) or (a.rows, a.cols) != (unf.b.rows, unf.b.cols):
        raise ShapeError("Normal form and matrix shapes disagree")
    report = CheckReport()
    dim = a.rows
    s, n = dec.s, dec.n

    invertible = is_invertible(unf.p_basis)
    report.record('p_invertible', invertible)
    report.record('conjugation', invertible and conjugate(a, unf.p_basis) == unf.b)
    report.record('block_layout', bool(unf.blocks) and unf.b == _block_layout(unf.blocks))

    factors = factor_charpoly(unf)
    expected = _expand(factors)
    report.record('charpoly_factorization', expected == char_poly(a))
    kernel_blocks = [fm for fm, blk in zip(factors, unf.blocks) if blk.part == KERNEL_PART]
    report.record('kernel_power', _expand(kernel_blocks) == Poly.monomial(unf.kernel_S_dim))

    ker, im = kernel_basis(s), image_basis(s)
    report.record('kernel_dim', ker.dim == unf.kernel_S_dim)
    for name, part in (('ker_S_invariant', ker), ('im_S_invariant', im)):
        try:
            restrict(a, part)
            report.record(name, True)
        except NotInvariantError:
            report.record(name, False)

    for index, blk in enumerate(unf.blocks):
        prefix = f"block{index}_"
        m = blk.chain_length
        u_space = column_span(blk.u_basis)
        lower = n.power(m - 1)
        report.record(prefix + 'height_reached', not (lower @ blk.u_basis).is_zero())
        report.record(prefix + 'annihilated', (n.power(m) @ blk.u_basis).is_zero())
        report.record(prefix + 'uniform', intersect(kernel_basis(lower), u_space) == column_span(n @ blk.u_basis))
        try:
            s_on_f = restrict(s, blk.f_basis)
            s_on_u = restrict(s, u_space)
            report.record(prefix + 'f_invariant', True)
            report.record(prefix + 'u_charpoly', char_poly(s_on_u) == char_poly(s_on_f) ** m)
        except NotInvariantError:
            report.record(prefix + 'f_invariant', False)
            report.record(prefix + 'u_charpoly', False)
        report.record(prefix + 'dim', blk.u_basis.cols == m * blk.q and blk.f_basis.dim == blk.q)
    report.record('dimension_total', sum(blk.u_basis.cols for blk in unf.blocks) == dim)
    return report
