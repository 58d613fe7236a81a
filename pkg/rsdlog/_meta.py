"""
This module contains project meta-data.
"""

__author__ = "rsdlog developers"
__copyright__ = "Copyright © 2026 by rsdlog developers"
__credits__ = []
__license__ = "MIT License"
__version__ = "0.1.0"
