import csv
from io import StringIO
from typing import Dict, Optional, Tuple

from app.schubert.filtration_ss import (
    acyclicity_check,
    d1_squares_to_zero,
    e2_dims,
    euler_check,
    koszul_homology_total,
    xi1_page,
)
from app.schubert.matroid_core import Matroid
from app.schubert.pipeline import PipelineContext, table_to_dict
from app.schubert.tropical_cohomology import off_diagonal_support
from app.tools.base_tool import FORCE_LARGE_FIELD, MATROID_FIELD, MAX_P_FIELD, BaseTool
from app.tools.registry import ToolRegistry


@ToolRegistry.register
class CohomologyTool(BaseTool):
    """
    The tropical cohomology table of Y_M, computed cellularly, next to the
    Whitney numbers it is compared with.
    """

    name = "Tropical Cohomology"
    slug = "cohomology"
    description = "dim H^{p,q}(Y_M) for p up to max_p, with the diagonal and the Whitney numbers"
    category = "Cohomology"

    def get_form_fields(self) -> list:
        return [MATROID_FIELD, MAX_P_FIELD, FORCE_LARGE_FIELD]

    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        context = PipelineContext(matroid, self.pipeline_options(form_data))
        table = context.cohomology
        data = {
            'matroid': matroid.name,
            'rank': matroid.rank,
            'max_p': context.max_p,
            'table': table_to_dict(table),
            'diagonal': context.diagonal,
            'whitney': matroid.whitney_numbers(),
            'off_diagonal': [f'{p},{q}' for p, q in off_diagonal_support(table)]
        }
        return f"Diagonal of H(Y_{matroid.name}): {data['diagonal']}", data

    @staticmethod
    def _rows(data: Dict):
        rank = data['rank']
        return [[p] + [data['table'].get(f'{p},{q}', 0) for q in range(rank + 1)]
                for p in range(data['max_p'] + 1)]

    def summary_tables(self, data: Dict):
        headers = ['p \\ q'] + [str(q) for q in range(data['rank'] + 1)]
        return [('H^{p,q}', headers, self._rows(data)),
                (None, ['diagonal', 'whitney'], [[data['diagonal'], data['whitney']]])]

    def get_export_formats(self) -> list:
        return ['json', 'csv']

    def export_results(self, results: Dict, format: str):
        if format != 'csv':
            return super().export_results(results, format)
        data = results.get('data') or {}
        output = StringIO()
        writer = csv.writer(output)
        writer.writerow(['p'] + [f'q={q}' for q in range(data.get('rank', 0) + 1)])
        writer.writerows(self._rows(data))
        return output.getvalue().encode('utf-8'), 'text/csv', self.export_filename(results, 'csv')


@ToolRegistry.register
class SpectralTool(BaseTool):
    name = "Rank Spectral Sequence"
    slug = "spectral"
    description = "E_1 and E_2 pages of the rank filtration, Koszul blocks and the flat-rank page"
    category = "Cohomology"

    def get_form_fields(self) -> list:
        return [MATROID_FIELD, MAX_P_FIELD]

    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        options = self.pipeline_options(form_data)
        # E-pages need no face complex
        options.force_large = True
        context = PipelineContext(matroid, options)
        rows = {}
        for p in range(context.max_p + 1):
            page = context.page(p)
            complexes = context.koszul(p)
            rows[str(p)] = {
                'e1': [page.dims.get(a, 0) for a in range(matroid.rank + 1)],
                'e2': [e2_dims(page).get(a, 0) for a in range(matroid.rank + 1)],
                'd1_squared_zero': d1_squares_to_zero(page),
                'euler': euler_check(matroid, page),
                'koszul_blocks': len(complexes),
                'koszul_acyclic': acyclicity_check(complexes),
                'koszul_homology': {str(a): d for a, d in koszul_homology_total(complexes, p).items()},
                'xi1': {f'{k},{l}': d for (k, l), d in sorted(xi1_page(matroid, page).items())}
            }
        data = {'matroid': matroid.name, 'rank': matroid.rank, 'max_p': context.max_p, 'rows': rows}
        return f"E-pages of {matroid.name} for p = 0..{context.max_p}", data

    def summary_tables(self, data: Dict):
        tables = []
        for p, row in data['rows'].items():
            columns = [[a, e1, e2] for a, (e1, e2) in enumerate(zip(row['e1'], row['e2']))]
            tables.append((f'p = {p}', ['a', 'E_1', 'E_2'], columns))
        return tables
