from ._polyexp import *  # noqa: F401,F403
