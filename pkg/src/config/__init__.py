"""
Configuration module - all configurable values in one place.
"""

from .settings import settings, Settings
from . import constants

__all__ = ['settings', 'Settings', 'constants']
