"""
Matrix input files and analysis reports.

Input files are JSON objects {"matrix": [[rational-string, ...], ...]}.
Reports serialize every rational as a string and every polynomial as its
ascending coefficient list; the pretty format prints polynomials in
descending notation instead.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config import settings
from scripts.exact_linalg import Mat
from scripts.nilpotent_structure import YoungDiagram
from scripts.polyarith import Poly, format_poly, format_rational, parse_rational
from scripts.semisimplicity import SquarefreeData
from scripts.uniform_form import UniformNormalForm
from scripts.utils import ParseError, ShapeError


@dataclass
class AnalysisReport:
    """
    Everything a subcommand computed. Stages that did not run stay None and
    are left out of the serialized report.
    """

    input_dim: int
    char_poly: Optional[Poly] = None
    squarefree: Optional[SquarefreeData] = None
    semisimple_flag: Optional[bool] = None
    witness: Optional[Mat] = None
    s: Optional[Mat] = None
    n: Optional[Mat] = None
    s_polynomial: Optional[Poly] = None
    young_ker: Optional[YoungDiagram] = None
    young_im: Optional[YoungDiagram] = None
    normal_form: Optional[UniformNormalForm] = None
    verified: Optional[bool] = None
    checks: Optional[Dict[str, bool]] = None
    include_checks: bool = False

    @property
    def factorization(self) -> Optional[List[Tuple[Poly, int]]]:
        if self.normal_form is None:
            return None
        return list(self.normal_form.factorization)


def parse_matrix_file(data: bytes) -> Mat:
    """
    Parse an input file.

    Args:
        data (bytes): UTF-8 JSON text

    Returns:
        Mat: The square rational matrix

    Raises:
        ParseError: If the text is not valid JSON of the expected structure
            or an entry is not a valid rational literal
        ShapeError: If rows are ragged, the matrix is empty or not square,
            or its dimension exceeds MAX_DIMENSION
    """
    try:
        document = json.loads(data.decode('utf-8'))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ParseError(f"Input is not valid JSON: {e}")
    if not isinstance(document, dict) or 'matrix' not in document:
        raise ParseError('Input must be a JSON object with a "matrix" key')
    rows = document['matrix']
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError('"matrix" must be a list of rows')
    parsed = [[parse_rational(entry) for entry in row] for row in rows]
    if not parsed or not parsed[0]:
        raise ShapeError("Empty matrix")
    matrix = Mat.from_rows(parsed)
    if not matrix.is_square:
        raise ShapeError(f"Matrix must be square, got {matrix.rows}x{matrix.cols}")
    if matrix.rows > settings.MAX_DIMENSION:
        raise ShapeError(f"Dimension {matrix.rows} exceeds MAX_DIMENSION={settings.MAX_DIMENSION}")
    return matrix


def matrix_to_strings(m: Mat) -> List[List[str]]:
    return [[format_rational(x) for x in row] for row in m.to_rows()]


def serialize_matrix_file(m: Mat) -> bytes:
    return (json.dumps({'matrix': matrix_to_strings(m)}) + '\n').encode('utf-8')


def _vector_strings(v: Sequence[Fraction]) -> List[str]:
    return [format_rational(x) for x in v]


def _diagram_to_dict(diagram: YoungDiagram) -> Dict[str, Any]:
    return {
        'row_counts': list(diagram.row_counts),
        'chains': [[_vector_strings(v) for v in chain.vectors] for chain in diagram.chains],
    }


def report_to_dict(r: AnalysisReport) -> Dict[str, Any]:
    """Report as a dict whose insertion order is the documented key order."""
    out: Dict[str, Any] = {'input_dim': r.input_dim}
    if r.char_poly is not None:
        out['char_poly'] = r.char_poly.to_strings()
    if r.squarefree is not None:
        out['d'] = r.squarefree.d.to_strings()
        out['p'] = r.squarefree.p.to_strings()
        out['M'] = r.squarefree.big_m
    if r.semisimple_flag is not None:
        out['semisimple'] = r.semisimple_flag
    if r.s is not None:
        out['S'] = matrix_to_strings(r.s)
    if r.n is not None:
        out['N'] = matrix_to_strings(r.n)
    if r.s_polynomial is not None:
        out['s_polynomial'] = r.s_polynomial.to_strings()
    if r.young_ker is not None and r.young_im is not None:
        out['young'] = {'ker_S': _diagram_to_dict(r.young_ker), 'im_S': _diagram_to_dict(r.young_im)}
    if r.normal_form is not None:
        unf = r.normal_form
        out['P'] = matrix_to_strings(unf.p_basis)
        out['B'] = matrix_to_strings(unf.b)
        out['blocks'] = [
            {
                'part': blk.part,
                'm': blk.chain_length,
                'q': blk.q,
                'companion_polys': [mu.to_strings() for mu in blk.companion_polys],
            }
            for blk in unf.blocks
        ]
        out['factorization'] = [
            {'poly': poly.to_strings(), 'exponent': exponent} for poly, exponent in r.factorization
        ]
    if r.verified is not None:
        out['verified'] = r.verified
    if r.include_checks and r.checks is not None:
        out['checks'] = dict(r.checks)
    return out


def format_matrix(m: Mat, indent: str = '  ') -> List[str]:
    """Right-aligned table, one line per row."""
    if m.rows == 0 or m.cols == 0:
        return [f"{indent}(empty)"]
    cells = matrix_to_strings(m)
    width = max(len(c) for row in cells for c in row)
    return [f"{indent}[ " + '  '.join(c.rjust(width) for c in row) + ' ]' for row in cells]


def _format_diagram(name: str, diagram: YoungDiagram) -> List[str]:
    lengths = ', '.join(str(c.length) for c in diagram.chains) or 'none'
    rows = ', '.join(str(r) for r in diagram.row_counts) or 'none'
    return [f"Young diagram on {name}: chain lengths [{lengths}], row counts [{rows}]"]


def _format_factor(poly: Poly, exponent: int) -> str:
    terms = sum(1 for c in poly.coeffs if c != 0)
    body = f"({format_poly(poly)})" if terms > 1 else format_poly(poly)
    return body if exponent == 1 else f"{body}^{exponent}"


def _pretty_lines(r: AnalysisReport) -> List[str]:
    lines = [f"Input dimension: {r.input_dim}"]
    if r.char_poly is not None:
        lines.append(f"χ_A(λ) = {format_poly(r.char_poly)}")
    if r.squarefree is not None:
        lines.append(f"d(λ) = {format_poly(r.squarefree.d)}")
        lines.append(f"p(λ) = {format_poly(r.squarefree.p)}")
        lines.append(f"M = {r.squarefree.big_m}")
    if r.semisimple_flag is not None:
        lines.append(f"Semisimple: {'yes' if r.semisimple_flag else 'no'}")
        if r.witness is not None and not r.semisimple_flag:
            lines.append("Witness p(A):")
            lines.extend(format_matrix(r.witness))
    for label, m in (('S', r.s), ('N', r.n)):
        if m is not None:
            lines.append(f"{label}:")
            lines.extend(format_matrix(m))
    if r.s_polynomial is not None:
        lines.append(f"s(λ) = {format_poly(r.s_polynomial)}")
    if r.young_ker is not None and r.young_im is not None:
        lines.extend(_format_diagram('ker S', r.young_ker))
        lines.extend(_format_diagram('im S', r.young_im))
    if r.normal_form is not None:
        unf = r.normal_form
        lines.append("P:")
        lines.extend(format_matrix(unf.p_basis))
        lines.append("B = P⁻¹AP:")
        lines.extend(format_matrix(unf.b))
        lines.append("Blocks:")
        for blk in unf.blocks:
            polys = ', '.join(format_poly(mu) for mu in blk.companion_polys)
            lines.append(f"  {blk.part}  m={blk.chain_length}  q={blk.q}  {polys}")
        factors = ' · '.join(_format_factor(poly, e) for poly, e in unf.factorization)
        lines.append(f"χ_A(λ) = {factors}")
    if r.verified is not None:
        lines.append(f"Verified: {'yes' if r.verified else 'no'}")
    if r.include_checks and r.checks:
        lines.append("Checks:")
        width = max(len(name) for name in r.checks)
        for name, passed in r.checks.items():
            lines.append(f"  {name.ljust(width)}  {'pass' if passed else 'FAIL'}")
    return lines


def emit_report(r: AnalysisReport, fmt: str) -> bytes:
    """
    Serialize a report.

    Args:
        r (AnalysisReport): The report
        fmt (str): "json" or "pretty"

    Returns:
        bytes: UTF-8 text ending in a newline
    """
    if fmt == 'json':
        text = json.dumps(report_to_dict(r), ensure_ascii=False, indent=2)
    elif fmt == 'pretty':
        text = '\n'.join(_pretty_lines(r))
    else:
        raise ValueError(f"Unsupported report format: {fmt}")
    return (text + '\n').encode('utf-8')
