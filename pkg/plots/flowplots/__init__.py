"""Figure scripts consuming the solver's frame files.

This package reads only the documented outputs (version-stamped CSV profiles,
stacked space-time CSV, legacy structured-points VTK) and renders line
profiles and contour figures. A format change upstream is a breaking contract
and shows up as a version-tag mismatch.
"""

__version__ = "0.1.0"

SUPPORTED_FORMAT = "grpflow-frame v1"
