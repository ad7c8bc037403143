"""Twisted arrow constructions for finite categories, simplicial sets, and spaces.

The heavy lifting lives in the compiled extension ``twarrow._core``; this
package just re-exports it.  Categories and simplicial sets round-trip through
the same text formats the ``twarrow`` command-line tool reads and writes.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
