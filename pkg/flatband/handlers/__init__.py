"""
Command handlers for the batch front-end.
"""

from .commands import Command, VERBS, run
