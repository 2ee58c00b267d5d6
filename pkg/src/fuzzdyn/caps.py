"""Enumeration caps.

Defaults: hyperspaces are enumerated for at most 16 points and fuzzy grids
for at most 10**6 membership functions.  Setting ``FUZZDYN_CAP`` to an
integer replaces both limits by a single bound on the number of enumerated
objects.
"""

import os

HYPERSPACE_POINTS = 16
GRID_SIZE = 10**6


def env_cap():
    raw = os.environ.get("FUZZDYN_CAP")
    if raw is None or raw.strip() == "":
        return None
    return int(raw)


def hyperspace_allowed(n_points, cap=None):
    """True when the 2**n - 1 nonempty subsets of ``n_points`` may be listed."""
    if cap is None:
        cap = env_cap()
    if cap is None:
        return n_points <= HYPERSPACE_POINTS
    return 2**n_points - 1 <= cap


def grid_allowed(size, cap=None):
    if cap is None:
        cap = env_cap()
    if cap is None:
        cap = GRID_SIZE
    return size <= cap
