"""Life-insurance reserves with reserve-dependent surrender behaviour."""

from thiele._core import *  # noqa: F401,F403
from thiele._core import __doc__  # noqa: F401
