from .report_generator import ReportGenerator
from .serialization import CodeInput, code_from_dict, code_to_dict, trellis_from_dict, trellis_to_dict, load_code, load_trellis
from .dot_export import export_dot
from .display import display_trellis, format_matrix

__all__ = [
    'ReportGenerator',
    'CodeInput',
    'code_from_dict',
    'code_to_dict',
    'trellis_from_dict',
    'trellis_to_dict',
    'load_code',
    'load_trellis',
    'export_dot',
    'display_trellis',
    'format_matrix'
]
