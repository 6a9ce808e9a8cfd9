from . import errors as ERRORS
from . import grammar as GRAMMAR
from . import logs as LOGS
from . import parameters as PARAMETERS

__all__ = [
    'ERRORS',
    'GRAMMAR',
    'LOGS',
    'PARAMETERS'
]
