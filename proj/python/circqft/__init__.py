"""Circulant two-qubit Fourier-gate simulator.

Frequencies are angular, in rad/ms; times are in ms. Use ``from_khz`` to
convert a caption value "omega/2pi in kHz".
"""

from ._circqft import *  # noqa: F401,F403
from ._circqft import __doc__  # noqa: F401
