import uuid

from flask import current_app, jsonify, make_response, request, session

from app.schubert.exceptions import SchubertError
from app.tools import tools_bp
from app.tools.registry import ToolRegistry


def _request_data() -> dict:
    """JSON body if present, otherwise the form fields."""
    data = request.get_json(silent=True)
    if isinstance(data, dict):
        return data
    return request.form.to_dict()


def _status_for(results: dict) -> int:
    if results.get('success'):
        return 200
    return 400 if results.get('input_error') else 500


@tools_bp.route('/<slug>', methods=['GET', 'POST'])
def execute_tool(slug):
    """
    Generic route that works for all registered tools.

    GET describes the tool and its form fields. POST validates the input and
    runs the tool, in the background when it supports async execution and the
    matroid is at or above the async threshold.
    """
    tool = ToolRegistry.get_tool(slug)

    if not tool:
        return jsonify({'success': False, 'message': f'Tool "{slug}" not found'}), 404

    if request.method == 'GET':
        return jsonify({
            'name': tool.name,
            'slug': tool.slug,
            'description': tool.description,
            'category': tool.category,
            'form_fields': tool.get_form_fields(),
            'export_formats': tool.get_export_formats(),
            'supports_async': tool.supports_async()
        })

    form_data = _request_data()

    is_valid, error_message = tool.validate_input(form_data)
    if not is_valid:
        return jsonify({'success': False, 'message': f'Validation error: {error_message}'}), 400

    try:
        use_async = False
        if tool.supports_async():
            try:
                use_async = tool.should_run_async(tool.load_matroid(form_data))
            except SchubertError as e:
                results = tool.error_result(e)
                return jsonify(results), _status_for(results)

        if use_async:
            results = tool.execute_async(form_data, str(uuid.uuid4()))
            return jsonify(results), 202 if results.get('success') else _status_for(results)

        results = tool.execute(form_data)

        # Store results in session for export
        session[f'tool_results_{slug}'] = results

    except Exception as e:
        current_app.logger.exception("Tool %s failed", slug)
        return jsonify({'success': False, 'message': f'Error executing tool: {str(e)}', 'data': None}), 500

    return jsonify(results), _status_for(results)


@tools_bp.route('/<slug>/export/<format>')
def export_tool_results(slug, format):
    """
    Export the last results of a tool, retrieved from the session.
    """
    tool = ToolRegistry.get_tool(slug)

    if not tool:
        return jsonify({'success': False, 'message': f'Tool "{slug}" not found'}), 404

    if format not in tool.get_export_formats():
        return jsonify({'success': False,
                        'message': f'Export format "{format}" not supported for this tool'}), 400

    results = session.get(f'tool_results_{slug}')

    if not results or not results.get('success'):
        return jsonify({'success': False,
                        'message': 'No results available to export. Please run the tool first.'}), 404

    try:
        file_content, mimetype, filename = tool.export_results(results, format)
    except Exception as e:
        current_app.logger.exception("Export of %s as %s failed", slug, format)
        return jsonify({'success': False, 'message': f'Export failed: {str(e)}'}), 500

    response = make_response(file_content)
    response.headers['Content-Type'] = mimetype
    response.headers['Content-Disposition'] = f'attachment; filename={filename}'
    return response
