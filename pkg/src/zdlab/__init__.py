"""Zero-dispersion limit of the Benjamin-Ono equation on the circle, computed three ways."""
from .fourier import TorusFunction

__all__ = ["TorusFunction"]
__version__ = "0.1.0"
