"""Utility functions and definitions for lcd_certify."""

import logging

LOGGER = logging.getLogger(__name__)
