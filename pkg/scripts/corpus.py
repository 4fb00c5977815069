"""
Seeded generators of test matrices.

Every generator takes a ``random.Random`` instance so a corpus is fully
determined by its seed.
"""

import os
import random
from typing import List, Optional, Sequence, Tuple

from config import settings
from scripts.exact_linalg import Mat
from scripts.polyarith import Poly, poly_product
from scripts.reporting import serialize_matrix_file
from scripts.uniform_form import companion_matrix
from scripts.utils import ensure_directory_exists, logger


def random_integer_matrix(rng: random.Random, dim: int, bound: int) -> Mat:
    return Mat.from_rows([[rng.randint(-bound, bound) for _ in range(dim)] for _ in range(dim)])


def random_unimodular(rng: random.Random, dim: int, steps: Optional[int] = None) -> Mat:
    """Integer matrix of determinant ±1 built from random elementary row operations."""
    rows = Mat.identity(dim).to_rows()
    for _ in range(steps if steps is not None else 3 * dim):
        if dim < 2:
            break
        i, j = rng.sample(range(dim), 2)
        if rng.random() < 0.2:
            rows[i], rows[j] = rows[j], rows[i]
            continue
        factor = rng.choice((-2, -1, 1, 2))
        rows[i] = [x + factor * y for x, y in zip(rows[i], rows[j])]
    return Mat.from_rows(rows)


def random_partition(rng: random.Random, n: int) -> List[int]:
    """Random partition of n, parts in descending order."""
    parts = []
    remaining = n
    while remaining:
        part = rng.randint(1, remaining)
        parts.append(part)
        remaining -= part
    return sorted(parts, reverse=True)


def shift_blocks(sizes: Sequence[int]) -> Mat:
    """Block diagonal of nilpotent Jordan blocks (ones on the superdiagonal)."""
    dim = sum(sizes)
    rows = [[0] * dim for _ in range(dim)]
    offset = 0
    for size in sizes:
        for i in range(size - 1):
            rows[offset + i][offset + i + 1] = 1
        offset += size
    return Mat.from_rows(rows, dim)


def jordan_oracle(rng: random.Random, dim: int, bound: int = 3) -> Tuple[Mat, Mat, Mat, Mat]:
    """
    A = T (D + N0) T⁻¹ with D integer diagonal, N0 a nilpotent shift inside the
    blocks of equal eigenvalues, and T unimodular.

    Returns:
        Tuple of A, D, N0 and T; the semisimple part of A is T D T⁻¹
    """
    groups = random_partition(rng, dim)
    if len(groups) > 2 * bound + 1:
        raise ValueError(f"Cannot pick {len(groups)} distinct eigenvalues in [-{bound}, {bound}]")
    eigenvalues = rng.sample(range(-bound, bound + 1), len(groups))
    diagonal: List[int] = []
    chain_sizes: List[int] = []
    for size, value in zip(groups, eigenvalues):
        diagonal.extend([value] * size)
        chain_sizes.extend(random_partition(rng, size))
    d = Mat.diagonal(diagonal)
    n0 = shift_blocks(chain_sizes)
    t = random_unimodular(rng, dim)
    a = t @ (d + n0) @ t.inverse()
    return a, d, n0, t


def random_nilpotent(rng: random.Random, dim: int) -> Tuple[Mat, List[int]]:
    """Conjugated nilpotent matrix and its Jordan block sizes."""
    shape = random_partition(rng, dim)
    t = random_unimodular(rng, dim)
    return t @ shift_blocks(shape) @ t.inverse(), shape


def companion_of_product(factors: Sequence[Poly]) -> Mat:
    return companion_matrix(poly_product(factors))


def generate_corpus(
    seed: Optional[int] = None,
    count: Optional[int] = None,
    max_dim: Optional[int] = None,
    bound: Optional[int] = None,
) -> List[Mat]:
    """
    Pseudo-random integer matrices of dimensions 1..max_dim with entries in
    [-bound, bound]; defaults come from the settings.
    """
    rng = random.Random(settings.CORPUS_SEED if seed is None else seed)
    count = settings.CORPUS_SIZE if count is None else count
    max_dim = settings.CORPUS_MAX_DIM if max_dim is None else max_dim
    bound = settings.CORPUS_ENTRY_BOUND if bound is None else bound
    return [random_integer_matrix(rng, rng.randint(1, max_dim), bound) for _ in range(count)]


def write_corpus(directory: str, matrices: Sequence[Mat]) -> List[str]:
    """Write one input file per matrix; returns the paths written."""
    ensure_directory_exists(directory)
    paths = []
    for index, matrix in enumerate(matrices):
        path = os.path.join(directory, f"matrix_{index:03d}.json")
        with open(path, 'wb') as f:
            f.write(serialize_matrix_file(matrix))
        paths.append(path)
    logger.info(f"Wrote {len(paths)} corpus matrices to {directory}")
    return paths
