"""
Racionales exactos e intervalos cerrados.

Los extremos son fractions.Fraction (siempre en términos mínimos, denominador
positivo). Los intervalos abiertos o semiabiertos de la entrada se cierran con
un ε menor que cualquier hueco entre extremos distintos (ver closing_epsilon).
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInterval, ParseError

Rational = Fraction


def as_rational(value: int | str | Fraction) -> Fraction:
    """Convierte int/str/Fraction a Fraction sin pasar por float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return parse_rational(value)


def parse_rational(text: str) -> Fraction:
    """
    Parsea un literal decimal ("3.25", "-2", "1e3") o fracción ("1/3") de forma exacta.

    Raises:
        ParseError: si el literal no es un racional finito
    """
    raw = text.strip()
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"racional inválido: {text!r}") from e


def format_rational(value: Fraction) -> str:
    """
    Representación canónica: decimal exacto cuando el denominador solo tiene
    factores 2 y 5, "p/q" en otro caso. parse_rational(format_rational(x)) == x.
    """
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    rest, twos, fives = den, 0, 0
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return f"{num}/{den}"
    places = max(twos, fives)
    scaled = abs(num) * 10**places // den
    digits = str(scaled).rjust(places + 1, "0")
    whole, frac = digits[:-places], digits[-places:].rstrip("0")
    sign = "-" if num < 0 else ""
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


@dataclass(frozen=True, slots=True, order=True)
class Interval:
    """Intervalo cerrado [l, r] con extremos racionales exactos."""

    l: Fraction
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "l", as_rational(self.l))
        object.__setattr__(self, "r", as_rational(self.r))
        if self.l > self.r:
            raise InvalidInterval(f"intervalo con l > r: [{self.l}, {self.r}]")

    def contains(self, point: Fraction) -> bool:
        return self.l <= point <= self.r

    def intersects(self, other: "Interval") -> bool:
        return self.l <= other.r and other.l <= self.r

    def shifted(self, left: Fraction, right: Fraction) -> "Interval":
        """[l + left, r + right]."""
        return Interval(self.l + left, self.r + right)

    def __str__(self) -> str:
        return f"[{format_rational(self.l)},{format_rational(self.r)}]"


@dataclass(frozen=True, slots=True)
class RawInterval:
    """Intervalo tal como llega de la entrada, con extremos posiblemente abiertos."""

    l: Fraction
    r: Fraction
    left_closed: bool = True
    right_closed: bool = True
    text: str = field(default="", compare=False)

    def close(self, eps: Fraction) -> Interval:
        """Cierra los extremos abiertos desplazándolos ε hacia dentro."""
        lo = self.l if self.left_closed else self.l + eps
        hi = self.r if self.right_closed else self.r - eps
        if lo > hi:
            raise InvalidInterval(f"intervalo vacío: {self.text or (self.l, self.r)}")
        return Interval(lo, hi)


def closing_epsilon(endpoints: Iterable[Fraction], count: int) -> Fraction:
    """
    ε = (mínimo hueco positivo entre extremos distintos) / (4·(count + 1)).

    Sin hueco (un solo extremo o ninguno) se usa hueco 1. `count` es el total
    de intervalos de la base.
    """
    points = sorted(set(endpoints))
    gaps = [b - a for a, b in zip(points, points[1:])]
    gap = min(gaps) if gaps else Fraction(1)
    return gap / (4 * (count + 1))


def intersect_all(xs: Sequence[Interval]) -> Interval | None:
    """[max l, min r] si no es vacío; None si los intervalos no se cortan."""
    if not xs:
        raise InvalidInterval("intersect_all requiere al menos un intervalo")
    lo = max(x.l for x in xs)
    hi = min(x.r for x in xs)
    if lo <= hi:
        return Interval(lo, hi)
    return None


def dyadic_interval(bits: str) -> tuple[Fraction, Fraction]:
    """Segmento diádico semiabierto [x, x + 2^-|b|) de una cadena de bits."""
    x = Fraction(0)
    for j, bit in enumerate(bits, start=1):
        if bit == "1":
            x += Fraction(1, 2**j)
    return x, x + Fraction(1, 2 ** len(bits))


__all__ = [
    "Rational",
    "Interval",
    "RawInterval",
    "as_rational",
    "parse_rational",
    "format_rational",
    "closing_epsilon",
    "intersect_all",
    "dyadic_interval",
]
