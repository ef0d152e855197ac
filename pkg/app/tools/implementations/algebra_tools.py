from typing import Dict, Optional, Tuple

from app.schubert.graded_algebras import mobius_algebra, mobius_isomorphism_verdict, pullback_relations_check
from app.schubert.matroid_core import Matroid
from app.schubert.pipeline import PipelineContext
from app.tools.base_tool import FORCE_LARGE_FIELD, MATROID_FIELD, BaseTool
from app.tools.registry import ToolRegistry


@ToolRegistry.register
class AlgebraTool(BaseTool):
    """
    The graded Mobius algebra B(M) against the subalgebra of the Chow ring of
    the augmented Bergman fan generated by the pulled back classes y_i.
    """

    name = "Graded Algebras"
    slug = "algebra"
    description = "Hilbert functions of B(M), the Chow ring and the y-subalgebra, with structure comparison"
    category = "Algebra"

    def get_form_fields(self) -> list:
        return [MATROID_FIELD, FORCE_LARGE_FIELD]

    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        context = PipelineContext(matroid, self.pipeline_options(form_data))
        algebra = mobius_algebra(matroid)
        report = context.subalgebra
        data = {
            'matroid': matroid.name,
            'mobius_hilbert': algebra.hilbert_function(),
            'mobius_associative': algebra.is_associative(),
            'chow_dims': context.chow.dims,
            'subalgebra': report.to_dict(),
            'pullback': pullback_relations_check(matroid),
            # Hilbert function and structure only; the diagonal comparison is the verify tool's job
            'isomorphic': mobius_isomorphism_verdict(matroid, [], report)
        }
        return f"B({matroid.name}) Hilbert function {data['mobius_hilbert']}", data

    def summary_tables(self, data: Dict):
        hilbert = [[k, b, c, s] for k, (b, c, s) in enumerate(
            zip(data['mobius_hilbert'], data['chow_dims'], data['subalgebra']['hilbert']))]
        checks = [[key, value] for key, value in data['subalgebra'].items() if isinstance(value, bool)]
        checks += [[key, value] for key, value in data['pullback'].items()]
        checks.append(['isomorphic', data['isomorphic']])
        return [('Hilbert functions', ['degree', 'B(M)', 'Chow', 'y-subalgebra'], hilbert),
                ('structure', ['check', 'holds'], checks)]
