"""Network inference from error-prone informant reports.

Union/intersection locally-aggregated-structure estimators, closed-form
expected-error theory with the intersection/union crossover density, and a
Bayesian informant-accuracy model sampled by Gibbs updates, plus simulation
and file-format helpers.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
