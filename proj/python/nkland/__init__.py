"""NK fitness landscapes with weighted loci.

Thin re-export of the compiled ``_core`` extension; see the README for the
operations it exposes.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
