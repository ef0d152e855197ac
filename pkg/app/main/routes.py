from flask import jsonify

from app.checks import CheckRegistry
from app.main import main_bp
from app.schubert.catalog import catalog_names
from app.tools.registry import ToolRegistry


@main_bp.route('/')
def index():
    """Registered tools grouped by category, the check slugs and the catalog names"""
    tools_by_category = {}

    for slug, tool_class in sorted(ToolRegistry.get_all_tools().items()):
        tools_by_category.setdefault(tool_class.category, []).append({
            'name': tool_class.name,
            'slug': tool_class.slug,
            'description': tool_class.description
        })

    return jsonify({
        'tools_by_category': tools_by_category,
        'checks': CheckRegistry.slugs(),
        'catalog': catalog_names()
    })
