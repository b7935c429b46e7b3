"""
bracelit info file
"""

from importlib.metadata import version

__application__ = "bracelit"
__version__ = version(__application__)
