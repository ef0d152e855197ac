from typing import Dict, List, Optional, Tuple

from app.schubert.catalog import catalog_entries
from app.schubert.exceptions import DivisionNotExact
from app.schubert.matroid_core import Matroid, N_p
from app.tools.base_tool import MATROID_FIELD, BaseTool
from app.tools.registry import ToolRegistry


def _coefficients(poly) -> List[int]:
    """Coefficients from the constant term up."""
    return [int(c) for c in reversed(poly.all_coeffs())]


@ToolRegistry.register
class InfoTool(BaseTool):
    """
    Basic invariants of a matroid: rank, flats, independent sets, Whitney
    numbers, the characteristic polynomials and the admissible pair census.
    """

    name = "Matroid Info"
    slug = "info"
    description = "Rank, Whitney numbers, f-vector, characteristic polynomial and admissible pairs"
    category = "Matroids"

    def get_form_fields(self) -> list:
        return [MATROID_FIELD]

    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        try:
            reduced = _coefficients(matroid.reduced_characteristic_polynomial())
        except DivisionNotExact:
            reduced = None
        pairs = matroid.admissible_pairs()
        data = {
            'matroid': matroid.name,
            'ground_set': list(matroid.ground),
            'rank': matroid.rank,
            'bases': len(matroid.bases),
            'flats': len(matroid.flats),
            'loops': list(matroid.sort(matroid.loops)),
            'coloops': list(matroid.sort(matroid.coloops)),
            'components': [list(c) for c in matroid.connected_components()],
            'whitney': matroid.whitney_numbers(),
            'f_vector': matroid.f_vector(),
            'characteristic_polynomial': _coefficients(matroid.characteristic_polynomial()),
            'reduced_characteristic_polynomial': reduced,
            'admissible_pairs': len(pairs),
            'N_p': [N_p(matroid, p) for p in range(matroid.rank + 1)]
        }
        return f"{matroid.name}: rank {matroid.rank} on {len(matroid.ground)} elements", data


@ToolRegistry.register
class CatalogTool(BaseTool):
    name = "Catalog"
    slug = "catalog"
    description = "Named matroids and families accepted as catalog:NAME"
    category = "Matroids"
    needs_matroid = False

    def get_form_fields(self) -> list:
        return []

    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        entries = catalog_entries()
        return f"{len(entries)} catalog entries", {'entries': entries}

    def summary_tables(self, data: Dict):
        rows = [[e['name'], e['elements'], e['rank'], e['description']] for e in data['entries']]
        return [(None, ['name', 'elements', 'rank', 'description'], rows)]
