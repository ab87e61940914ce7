"""Graded homotopy structures at bounded degree and arity."""

from .graded import *  # noqa: F401,F403
from .graded import random_dend_system, sign_mask, system_from_json  # noqa: F401
from .rota import *  # noqa: F401,F403
from .twoterm import *  # noqa: F401,F403
from .twoterm import general_identity_blocks, two_term_residuals  # noqa: F401
