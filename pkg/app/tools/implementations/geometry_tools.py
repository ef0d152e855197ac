from typing import Dict, Optional, Tuple

from app.schubert.bergman import build_augmented, build_bergman
from app.schubert.fan_geometry import delta_compatible, fan_axioms_check, product_of_lines_fan
from app.schubert.matroid_core import Matroid
from app.schubert.pipeline import PipelineContext
from app.schubert.schubert_complex import export_stratification_dot, stratification
from app.tools.base_tool import FORCE_LARGE_FIELD, MATROID_FIELD, BaseTool
from app.tools.registry import ToolRegistry


@ToolRegistry.register
class FanTool(BaseTool):
    """
    The augmented Bergman fan of a matroid, with the Bergman fan of its free
    coextension for comparison.
    """

    name = "Augmented Bergman Fan"
    slug = "fan"
    description = "Rays and cones of the augmented Bergman fan and its compatibility with (P^1)^E"
    category = "Geometry"

    def get_form_fields(self) -> list:
        return [MATROID_FIELD]

    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        augmented = build_augmented(matroid)
        fan = augmented.fan
        coextension = matroid.free_coextension()
        data = {
            'matroid': matroid.name,
            'rays': [{'label': label, 'vector': list(ray)} for label, ray in zip(augmented.ray_label, fan.rays)],
            'cone_counts': fan.cone_counts(),
            'maximal_cones': [augmented.describe_cone(c) for c in fan.maximal_cones],
            'fan_axioms': fan_axioms_check(fan),
            'compatible_with_product_of_lines': delta_compatible(fan, product_of_lines_fan(len(matroid.ground))),
            'coextension_bergman_cone_counts': build_bergman(coextension).cone_counts()
        }
        return f"Augmented Bergman fan of {matroid.name}: cone counts {data['cone_counts']}", data

    def summary_tables(self, data: Dict):
        rays = [[r['label'], r['vector']] for r in data['rays']]
        counts = [[k, n] for k, n in enumerate(data['cone_counts'])]
        return [('rays', ['ray', 'vector'], rays), ('cones', ['dim', 'count'], counts)]


@ToolRegistry.register
class FacesTool(BaseTool):
    name = "Face Complex"
    slug = "faces"
    description = "Cells of Y_M by dimension and the strata M(I,F) with their cell counts"
    category = "Geometry"

    def get_form_fields(self) -> list:
        return [MATROID_FIELD, FORCE_LARGE_FIELD]

    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        context = PipelineContext(matroid, self.pipeline_options(form_data))
        complex_ = context.face_complex
        strata = stratification(complex_)
        data = {
            'matroid': matroid.name,
            'cells': len(complex_.cells),
            'cells_by_dim': [n for _, n in sorted(complex_.dims_histogram().items())],
            'boundary_squared_zero': complex_.boundary_squares_to_zero(),
            'strata': [
                {
                    'label': matroid.pair_label(pair),
                    'rank': pair.rank,
                    'cells': len(cells),
                    'minor_f_vector': matroid.minor_f_vector(pair)
                }
                for pair, cells in strata.items()
            ]
        }
        return f"Y_{matroid.name} has {data['cells']} cells in {len(strata)} strata", data

    def summary_tables(self, data: Dict):
        strata = [[s['label'], s['rank'], s['cells'], s['minor_f_vector']] for s in data['strata']]
        cells = [[q, n] for q, n in enumerate(data['cells_by_dim'])]
        return [('cells', ['dim', 'count'], cells),
                ('strata', ['stratum', 'rank', 'cells', 'minor f-vector'], strata)]


@ToolRegistry.register
class ExportDotTool(BaseTool):
    name = "Stratification DOT"
    slug = "export-dot"
    description = "The admissible pair order as a Graphviz digraph"
    category = "Geometry"

    def get_form_fields(self) -> list:
        return [MATROID_FIELD]

    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        dot = export_stratification_dot(matroid)
        nodes = len(matroid.admissible_pairs())
        return f"{nodes} strata", {'matroid': matroid.name, 'nodes': nodes, 'dot': dot}

    def get_export_formats(self) -> list:
        return ['json', 'dot']

    def export_results(self, results: Dict, format: str):
        if format == 'dot':
            dot = (results.get('data') or {}).get('dot', '')
            return dot.encode('utf-8'), 'text/vnd.graphviz', self.export_filename(results, 'dot')
        return super().export_results(results, format)
