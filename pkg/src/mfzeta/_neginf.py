"""The explicit negative-infinity value used for empty series and empty spectra."""
import math


class NegInfinity:
    """Singleton marking an abscissa or spectrum value of minus infinity.

    It compares below every real number and converts to ``float('-inf')``; it is
    kept distinct from floats so that "empty" can never arise from rounding.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __float__(self):
        return -math.inf

    def __lt__(self, other):
        return not isinstance(other, NegInfinity)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, NegInfinity)

    def __eq__(self, other):
        return isinstance(other, NegInfinity)

    def __hash__(self):
        return hash("mfzeta.NEG_INF")

    def __reduce__(self):
        return (NegInfinity, ())


NEG_INF = NegInfinity()


def is_neg_inf(x):
    return isinstance(x, NegInfinity)


def as_float(x):
    return -math.inf if isinstance(x, NegInfinity) else float(x)
