from ._nacirc import *  # noqa: F401,F403
