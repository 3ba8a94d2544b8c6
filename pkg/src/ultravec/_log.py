"""Package logger for ultravec."""

import logging

log = logging.getLogger(__name__)

__all__ = ('log',)
