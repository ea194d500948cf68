"""
errors.py - Exception hierarchy shared by every module of the toolkit
"""
from typing import Optional


class GallaiToolkitError(Exception):
    """Base class for all toolkit errors"""


class GallaiInputError(GallaiToolkitError, ValueError):
    """Out-of-range vertex or colour, malformed partition, bad parameters"""


class UnsupportedParameterError(GallaiInputError):
    """Parameters for which no construction is defined (e.g. parity obstruction)"""


class ColoringParseError(GallaiInputError):
    """A coloring file that does not follow the v1 text format"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CheckpointMismatchError(GallaiInputError):
    """Checkpoint written for a different problem, or unreadable"""


class SearchInconclusive(GallaiToolkitError):
    """The search ran out of budget before reaching a verdict"""

    def __init__(self, message: str, nodes_explored: int = 0):
        self.nodes_explored = nodes_explored
        super().__init__(message)


class SearchPaused(GallaiToolkitError):
    """The search stopped on request after writing a checkpoint"""

    def __init__(self, checkpoint_path: str, nodes_explored: int):
        self.checkpoint_path = checkpoint_path
        self.nodes_explored = nodes_explored
        super().__init__(f"search paused after {nodes_explored} nodes; checkpoint at {checkpoint_path}")
