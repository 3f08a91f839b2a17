"""
Lestrade interface: configuration, pretty printing, transcript and the
command inspector
"""

from interface.config import InspectorConfig, get_config
from interface.pretty import PrettyPrinter, despace
from interface.transcript import Transcript
from interface.inspector import Inspector

__all__ = [
    'InspectorConfig',
    'get_config',
    'PrettyPrinter',
    'despace',
    'Transcript',
    'Inspector',
]
