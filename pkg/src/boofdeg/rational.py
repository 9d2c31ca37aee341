"""Exact rational scalars.

Every numeric quantity in this package that is not an integer is an exact
rational.  Floats are never used in any measure computation.  The scalar
type is gmpy2.mpq when gmpy2 is importable (much faster, identical
semantics) and fractions.Fraction otherwise.
"""

try:
    from gmpy2 import mpq as Q  # type: ignore
except ImportError:  # pragma: no cover - depends on environment
    from fractions import Fraction as Q

QNUM = type(Q(0))

ZERO = Q(0)
ONE = Q(1)


def rat(num, den=1):
    """Build an exact rational from ints (or pass a rational through)."""
    if den == 1 and isinstance(num, QNUM):
        return num
    return Q(num, den)


def parse_rat(text: str):
    """Parse 'p/q' or 'p' into an exact rational.  Raises ValueError."""
    s = text.strip()
    if "/" in s:
        a, b = s.split("/", 1)
        den = int(b)
        if den == 0:
            raise ValueError("zero denominator in %r" % text)
        return Q(int(a), den)
    return Q(int(s))


def rat_str(q) -> str:
    """Render as 'p/q' (or 'p' when integral), the serialization form."""
    q = Q(q)
    n, d = q.numerator, q.denominator
    if d == 1:
        return str(int(n))
    return "%d/%d" % (int(n), int(d))


def as_int(q) -> int:
    """Exact conversion to int; raises if q is not integral."""
    q = Q(q)
    if q.denominator != 1:
        raise ValueError("not an integer: %s" % q)
    return int(q.numerator)
