"""One-shot source coding with side-information: entropies, codes, verifiers."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
