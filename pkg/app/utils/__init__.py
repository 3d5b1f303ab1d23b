from .json_formatter import JSONFormatter, LoggerAdapter, configure_logging

__all__ = [
    'JSONFormatter',
    'LoggerAdapter',
    'configure_logging',
]
