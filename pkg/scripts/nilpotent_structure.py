"""
Young diagram of a nilpotent map.

The chain basis is built by recursion on im N: chains of N restricted to
im N are pulled back one step through a single linear solve each, and the
ends of those chains are extended to a basis of ker N by canonical kernel
vectors, which become chains of length one.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from scripts.exact_linalg import (
    Mat,
    Subspace,
    Vector,
    extend_to_basis,
    image_basis,
    kernel_basis,
    rank,
    restrict,
    solve,
)
from scripts.utils import CheckReport, NotNilpotentError, ShapeError, VerificationError, logger


@dataclass(frozen=True)
class JordanChain:
    """v, Nv, ..., N^(length-1) v with N^length v = 0."""

    generator: Vector
    length: int
    vectors: Tuple[Vector, ...]


@dataclass(frozen=True)
class YoungDiagram:
    """
    Chains of a nilpotent map, longest first.

    ``row_counts[l - 1]`` is the number of chains of length at least l, which
    is also dim ker N^l - dim ker N^(l-1).
    """

    chains: Tuple[JordanChain, ...]
    row_counts: Tuple[int, ...]
    ambient_dim: int


def _require_nilpotent(n: Mat, operation: str) -> None:
    if not n.is_square:
        raise ShapeError(f"{operation} requires a square matrix, got {n.rows}x{n.cols}")
    if n.rows and not n.power(n.rows).is_zero():
        raise NotNilpotentError(f"{operation}: N^{n.rows} is not zero")


def nilpotency_index(n: Mat) -> int:
    """
    Smallest k >= 1 with N^k = 0.

    Raises:
        NotNilpotentError: If N^dim != 0
    """
    _require_nilpotent(n, "nilpotency_index")
    k = 1
    power = n
    while not power.is_zero():
        power = power @ n
        k += 1
    return k


def kernel_filtration(n: Mat) -> Tuple[List[int], List[int]]:
    """
    Dimensions of ker N^l for l = 1..index, and their successive differences.

    Returns:
        Tuple[List[int], List[int]]: (dims, row_counts); both empty for a 0x0 map
    """
    _require_nilpotent(n, "kernel_filtration")
    if n.rows == 0:
        return [], []
    dims: List[int] = []
    power = n
    for _ in range(nilpotency_index(n)):
        dims.append(n.rows - rank(power))
        power = power @ n
    row_counts = [dims[0]] + [dims[i] - dims[i - 1] for i in range(1, len(dims))]
    return dims, row_counts


def _row_counts(chains: Sequence[JordanChain]) -> Tuple[int, ...]:
    height = max((c.length for c in chains), default=0)
    return tuple(sum(1 for c in chains if c.length >= level) for level in range(1, height + 1))


def _chain_from(n: Mat, generator: Vector) -> JordanChain:
    vectors = [tuple(generator)]
    while True:
        following = n.apply(vectors[-1])
        if all(x == 0 for x in following):
            break
        vectors.append(following)
    return JordanChain(tuple(generator), len(vectors), tuple(vectors))


def young_basis(n: Mat) -> YoungDiagram:
    """
    Basis of Jordan chains realizing the Young diagram of a nilpotent map.

    Args:
        n (Mat): Nilpotent square matrix

    Returns:
        YoungDiagram: Chains sorted by length descending, ties in construction order

    Raises:
        NotNilpotentError: If n is not nilpotent
        VerificationError: If the chains fail to form a basis
    """
    _require_nilpotent(n, "young_basis")
    dim = n.rows
    if dim == 0:
        return YoungDiagram((), (), 0)

    kernel = kernel_basis(n)
    image = image_basis(n)
    if image.dim == 0:
        chains = [JordanChain(v, 1, (v,)) for v in kernel.vectors()]
        return YoungDiagram(tuple(chains), _row_counts(chains), dim)

    inner = young_basis(restrict(n, image))
    chains: List[JordanChain] = []
    for inner_chain in inner.chains:
        w = image.basis.apply(inner_chain.generator)
        pulled_back = solve(n, Mat.from_columns([w], dim))
        if pulled_back is None:
            raise VerificationError("A vector of im N has no preimage under N")
        chain = _chain_from(n, pulled_back.column(0))
        if chain.length != inner_chain.length + 1:
            raise VerificationError(
                f"Pulled-back chain has length {chain.length}, expected {inner_chain.length + 1}"
            )
        chains.append(chain)

    ends = [chain.vectors[-1] for chain in chains]
    extension = extend_to_basis(ends, kernel.vectors(), dim)
    chains.extend(JordanChain(y, 1, (y,)) for y in extension)

    # Σ(m_i + 1) + q = dim im N + dim ker N at every level
    if sum(c.length for c in chains) != image.dim + kernel.dim:
        raise VerificationError("Chain lengths do not add up to dim im N + dim ker N")
    all_vectors = [v for c in chains for v in c.vectors]
    if rank(Mat.from_columns(all_vectors, dim)) != dim:
        raise VerificationError("Jordan chain vectors are linearly dependent")
    generators = [c.generator for c in chains]
    if rank(Mat.from_columns(generators + image.vectors(), dim)) != dim:
        raise VerificationError("Chain generators do not complement im N")

    chains.sort(key=lambda c: -c.length)
    logger.debug(f"Young diagram of {dim}x{dim} nilpotent map: lengths {[c.length for c in chains]}")
    return YoungDiagram(tuple(chains), _row_counts(chains), dim)


def diagram_shape(diagram: YoungDiagram) -> Tuple[int, ...]:
    return tuple(c.length for c in diagram.chains)


def jordan_block_matrix(diagram: YoungDiagram) -> Tuple[Mat, Mat]:
    """
    Chain basis in standard order [N^(l-1)v, ..., Nv, v] per chain, and the
    Jordan matrix (ones on the superdiagonal of each block) N has in it.
    """
    dim = diagram.ambient_dim
    columns: List[Vector] = []
    blocks: List[Mat] = []
    for chain in diagram.chains:
        columns.extend(reversed(chain.vectors))
        size = chain.length
        blocks.append(Mat.from_rows([[1 if j == i + 1 else 0 for j in range(size)] for i in range(size)]))
    basis = Mat.from_columns(columns, dim) if columns else Mat.zeros(dim, 0)
    j = Mat.block_diagonal(blocks) if blocks else Mat.zeros(0, 0)
    return basis, j


def lift_diagram(diagram: YoungDiagram, w: Subspace) -> YoungDiagram:
    """Rewrite a diagram computed in w's coordinates in ambient coordinates."""
    if diagram.ambient_dim != w.dim:
        raise ShapeError(f"Diagram lives in dimension {diagram.ambient_dim}, subspace has dimension {w.dim}")
    lifted = tuple(
        JordanChain(
            w.basis.apply(c.generator),
            c.length,
            tuple(w.basis.apply(v) for v in c.vectors),
        )
        for c in diagram.chains
    )
    return YoungDiagram(lifted, diagram.row_counts, w.ambient_dim)


def young_checks(n: Mat, diagram: YoungDiagram) -> CheckReport:
    """Exact consistency checks of a diagram against the map it was built from."""
    report = CheckReport()
    dim = n.rows
    report.record('row_counts_match_filtration', list(diagram.row_counts) == kernel_filtration(n)[1])
    basis, j = jordan_block_matrix(diagram)
    forms_basis = basis.cols == dim and rank(basis) == dim
    report.record('chains_form_basis', forms_basis)
    report.record('jordan_conjugation', forms_basis and (dim == 0 or basis.inverse() @ n @ basis == j))
    report.record('chain_ends_in_kernel', all(
        all(x == 0 for x in n.apply(c.vectors[-1])) for c in diagram.chains
    ))
    return report
