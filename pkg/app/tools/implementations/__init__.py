# This file imports all tool implementations to ensure they get registered
# When you add a new tool, import it here

from app.tools.implementations.matroid_tools import CatalogTool, InfoTool
from app.tools.implementations.geometry_tools import ExportDotTool, FacesTool, FanTool
from app.tools.implementations.cohomology_tools import CohomologyTool, SpectralTool
from app.tools.implementations.algebra_tools import AlgebraTool
from app.tools.implementations.verify_tool import VerifyTool

__all__ = [
    'InfoTool', 'CatalogTool', 'FanTool', 'FacesTool', 'ExportDotTool',
    'CohomologyTool', 'SpectralTool', 'AlgebraTool', 'VerifyTool'
]
