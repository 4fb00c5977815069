from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from scripts.exact_linalg import Mat, restrict, span, whole_space
from scripts.jordan_chevalley import JCDecomposition, jc_iterate, jc_verify
from scripts.nilpotent_structure import lift_diagram, nilpotency_index, young_basis, young_checks
from scripts.reporting import AnalysisReport
from scripts.semisimplicity import is_semisimple, squarefree_checks, squarefree_data
from scripts.uniform_form import assemble, split_ker_im, verify_uniform
from scripts.utils import CheckReport, log_duration, logger

COMMANDS = ('analyze', 'semisimple', 'jc', 'nilpotent', 'uniform')


@dataclass
class RunOptions:
    verify: bool = False
    input_is_nilpotent: bool = False


class AnalysisManager:
    """Runs the pipeline stages on one matrix and collects their results and checks."""

    def __init__(self, matrix: Mat, options: Optional[RunOptions] = None):
        """
        Args:
            matrix (Mat): Square input matrix
            options (RunOptions, optional): Flags of the current command
        """
        self.matrix = matrix
        self.options = options or RunOptions()
        self.report = AnalysisReport(input_dim=matrix.rows, include_checks=self.options.verify)
        self.checks = CheckReport()
        self._decomposition: Optional[JCDecomposition] = None

    def decomposition(self) -> JCDecomposition:
        if self._decomposition is None:
            with log_duration("Jordan-Chevalley decomposition"):
                self._decomposition = jc_iterate(self.matrix)
        return self._decomposition

    def run_semisimplicity(self) -> None:
        """Fill the characteristic polynomial, square-free data and the semisimplicity flag."""
        with log_duration("semisimplicity test"):
            data = squarefree_data(self.matrix)
            flag, witness = is_semisimple(self.matrix)
        self.report.char_poly = data.chi
        self.report.squarefree = data
        self.report.semisimple_flag = flag
        self.report.witness = witness
        self.checks.merge(squarefree_checks(data), 'squarefree.')

    def run_jordan_chevalley(self) -> None:
        dec = self.decomposition()
        self.report.s = dec.s
        self.report.n = dec.n
        self.report.s_polynomial = dec.s_polynomial
        self.checks.merge(jc_verify(self.matrix, dec), 'jc.')
        if self.report.semisimple_flag is not None:
            self.checks.record('jc.semisimple_iff_n_zero', self.report.semisimple_flag == dec.n.is_zero())

    def run_young(self) -> None:
        """
        Young diagrams of N on ker S and on im S, in ambient coordinates.

        With ``input_is_nilpotent`` the input itself is N and S = 0, so the
        whole space is ker S.
        """
        dim = self.matrix.rows
        if self.options.input_is_nilpotent:
            nilpotency_index(self.matrix)
            parts = [('ker_S', whole_space(dim), self.matrix), ('im_S', span([], dim), Mat.zeros(0, 0))]
        else:
            dec = self.decomposition()
            ker, im = split_ker_im(dec.s)
            parts = [('ker_S', ker, restrict(dec.n, ker)), ('im_S', im, restrict(dec.n, im))]

        with log_duration("Young diagrams"):
            for name, part, n_part in parts:
                diagram = young_basis(n_part)
                self.checks.merge(young_checks(n_part, diagram), f"young.{name}.")
                lifted = lift_diagram(diagram, part)
                if name == 'ker_S':
                    self.report.young_ker = lifted
                else:
                    self.report.young_im = lifted

    def run_uniform(self) -> None:
        dec = self.decomposition()
        with log_duration("uniform normal form"):
            unf = assemble(self.matrix, dec)
        self.report.normal_form = unf
        self.checks.merge(verify_uniform(unf, self.matrix, dec), 'uniform.')

    def stages(self, command: str) -> List[Callable[[], None]]:
        if self.options.input_is_nilpotent and command == 'nilpotent':
            return [self.run_young]
        plan: Dict[str, List[Callable[[], None]]] = {
            'semisimple': [self.run_semisimplicity],
            'jc': [self.run_semisimplicity, self.run_jordan_chevalley],
            'nilpotent': [self.run_semisimplicity, self.run_jordan_chevalley, self.run_young],
            'uniform': [self.run_semisimplicity, self.run_jordan_chevalley, self.run_young, self.run_uniform],
        }
        plan['analyze'] = plan['uniform']
        if command not in plan:
            raise ValueError(f"Invalid command: {command}")
        return plan[command]

    def run(self, command: str) -> AnalysisReport:
        logger.info(f"Running '{command}' on a {self.matrix.rows}x{self.matrix.cols} matrix")
        for stage in self.stages(command):
            stage()
        self.report.checks = dict(self.checks.checks)
        self.report.verified = self.checks.passed
        if not self.checks.passed:
            logger.error(f"Failed checks: {', '.join(self.checks.failures)}")
        return self.report


def run_command(cmd: str, opts: RunOptions, m: Mat) -> AnalysisReport:
    """
    Run one subcommand on a parsed matrix.

    Args:
        cmd (str): One of COMMANDS
        opts (RunOptions): Command flags
        m (Mat): Input matrix

    Returns:
        AnalysisReport: Filled through the stages the command covers
    """
    return AnalysisManager(m, opts).run(cmd)
