"""Finite-model-theory workbench: FO evaluation on finite structures,
forbidden-set conversions, width-2 graph interpretations, gadget
encodings and Turing-machine sentence compilation."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401
