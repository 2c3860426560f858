from decimal import Decimal, localcontext
from fractions import Fraction


def decimal_str(q, digits: int = 12) -> str:
    """At most ``digits`` significant digits, trailing zeros trimmed."""
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = digits + 20
        d = Decimal(q.numerator) / Decimal(q.denominator)
        out = format(d, f".{digits}g")
    return "0" if out in ("-0", "0E+0") else out


def rational_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_with_decimal(q) -> str:
    return f"{rational_str(q)} ({decimal_str(q)})"


def parse_rational(text: str) -> Fraction:
    """Accepts ``n``, ``n/d`` or a finite decimal literal; the value is kept exact."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
