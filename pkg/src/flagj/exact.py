# flagj/exact.py

"""Exact scalars over Q(i) and the string formats used for rational I/O."""

import numbers
import re
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from typing import Generic, TypeVar, Union

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^(?P<re>{_RATIONAL})$")
_IMAG_RE = re.compile(rf"^(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i$")
_COMPLEX_RE = re.compile(
  rf"^(?P<re>{_RATIONAL})(?P<op>[+-])(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i$"
)


class GaussianRational:
  """An element p + q·i of Q(i) with exact rational parts.

  Instances are immutable and compare equal to ints and Fractions when the
  imaginary part vanishes.
  """

  __slots__ = ("_real", "_imag")

  def __init__(self, real: "RationalLike" = 0, imag: "RationalLike" = 0):
    object.__setattr__(self, "_real", Fraction(real))
    object.__setattr__(self, "_imag", Fraction(imag))

  def __setattr__(self, name, value):
    raise AttributeError("GaussianRational is immutable")

  @property
  def real(self) -> Fraction:
    return self._real

  @property
  def imag(self) -> Fraction:
    return self._imag

  def conjugate(self) -> "GaussianRational":
    return GaussianRational(self._real, -self._imag)

  def norm(self) -> Fraction:
    """Returns |z|², an exact rational."""
    return self._real * self._real + self._imag * self._imag

  def __add__(self, other):
    other = _coerce(other)
    if other is NotImplemented:
      return other
    return GaussianRational(self._real + other._real, self._imag + other._imag)

  __radd__ = __add__

  def __sub__(self, other):
    other = _coerce(other)
    if other is NotImplemented:
      return other
    return GaussianRational(self._real - other._real, self._imag - other._imag)

  def __rsub__(self, other):
    other = _coerce(other)
    if other is NotImplemented:
      return other
    return other - self

  def __mul__(self, other):
    other = _coerce(other)
    if other is NotImplemented:
      return other
    return GaussianRational(
      self._real * other._real - self._imag * other._imag,
      self._real * other._imag + self._imag * other._real,
    )

  __rmul__ = __mul__

  def __truediv__(self, other):
    other = _coerce(other)
    if other is NotImplemented:
      return other
    denominator = other.norm()
    if not denominator:
      raise ZeroDivisionError("division by zero in Q(i)")
    numerator = self * other.conjugate()
    return GaussianRational(
      numerator._real / denominator, numerator._imag / denominator
    )

  def __rtruediv__(self, other):
    other = _coerce(other)
    if other is NotImplemented:
      return other
    return other / self

  def __neg__(self) -> "GaussianRational":
    return GaussianRational(-self._real, -self._imag)

  def __pos__(self) -> "GaussianRational":
    return self

  def __bool__(self) -> bool:
    return bool(self._real) or bool(self._imag)

  def __eq__(self, other) -> bool:
    other = _coerce(other)
    if other is NotImplemented:
      return NotImplemented
    return self._real == other._real and self._imag == other._imag

  def __hash__(self) -> int:
    if not self._imag:
      return hash(self._real)
    return hash((self._real, self._imag))

  def __repr__(self) -> str:
    return f"GaussianRational({format_gaussian(self)!r})"

  def __str__(self) -> str:
    return format_gaussian(self)


RationalLike = Union[int, Fraction, str]
Scalar = Union[int, Fraction, GaussianRational]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def _coerce(value) -> GaussianRational:
  if isinstance(value, GaussianRational):
    return value
  if isinstance(value, numbers.Rational) and not isinstance(value, bool):
    return GaussianRational(value)
  return NotImplemented


def as_gaussian(value: Scalar) -> GaussianRational:
  """Converts an int, Fraction or GaussianRational to a GaussianRational.

  Raises:
      TypeError: If the value is a float or any other inexact type.
  """
  coerced = _coerce(value)
  if coerced is NotImplemented:
    raise TypeError(f"Expected an exact scalar, got {type(value).__name__}")
  return coerced


def parse_rational(value: RationalLike) -> Fraction:
  """Parses "p/q" strings and ints into a Fraction.

  Floats are rejected so that no rounded value can enter a computation.

  Raises:
      ValueError: If the value is not an exact rational.
  """
  if isinstance(value, bool) or isinstance(value, float):
    raise ValueError(
      f"Rational {value!r} must be given as an int or a 'p/q' string"
    )
  if isinstance(value, (int, Fraction)):
    return Fraction(value)
  if not isinstance(value, str):
    raise ValueError(f"Cannot read a rational from {value!r}")
  text = value.replace(" ", "")
  if not _REAL_RE.match(text):
    raise ValueError(f"Malformed rational '{value}', expected 'p/q'")
  try:
    return Fraction(text)
  except ZeroDivisionError as e:
    raise ValueError(f"Zero denominator in rational '{value}'") from e


def _imaginary_part(text: str) -> Fraction:
  if text in ("", "+"):
    return Fraction(1)
  if text == "-":
    return Fraction(-1)
  return parse_rational(text)


def parse_gaussian(value: RationalLike | GaussianRational) -> GaussianRational:
  """Parses Gaussian rationals written as "p/q+r/si".

  Accepted forms include "1/12+-1/12i", "-1/24+1/24i", "2i", "-i" and plain
  rationals.

  Raises:
      ValueError: If the text is not a Gaussian rational.
  """
  if isinstance(value, GaussianRational):
    return value
  if not isinstance(value, str):
    return GaussianRational(parse_rational(value))
  text = value.replace(" ", "")
  if match := _REAL_RE.match(text):
    return GaussianRational(parse_rational(match["re"]))
  if match := _IMAG_RE.match(text):
    return GaussianRational(0, _imaginary_part(match["im"]))
  if match := _COMPLEX_RE.match(text):
    imag = _imaginary_part(match["im"])
    if match["op"] == "-":
      imag = -imag
    return GaussianRational(parse_rational(match["re"]), imag)
  raise ValueError(f"Malformed Gaussian rational '{value}'")


def format_rational(value: Fraction | int) -> str:
  return str(Fraction(value))


def format_gaussian(value: Scalar) -> str:
  """Formats a scalar as "p/q+r/si", dropping a vanishing part."""
  z = as_gaussian(value)
  if not z.imag:
    return format_rational(z.real)
  if not z.real:
    return f"{format_rational(z.imag)}i"
  return f"{format_rational(z.real)}+{format_rational(z.imag)}i"


K = TypeVar("K")


class LinearCombination(Generic[K]):
  """A finitely supported map from basis keys to GaussianRationals.

  Zero coefficients are never stored, so two combinations are equal exactly
  when their stored terms are.
  """

  __slots__ = ("_terms",)

  def __init__(
    self, terms: Mapping[K, Scalar] | Iterable[tuple[K, Scalar]] = ()
  ):
    items = terms.items() if isinstance(terms, Mapping) else terms
    acc: dict[K, GaussianRational] = {}
    for key, coeff in items:
      total = acc.get(key, ZERO) + as_gaussian(coeff)
      if total:
        acc[key] = total
      else:
        acc.pop(key, None)
    self._terms = acc

  def coefficient(self, key: K) -> GaussianRational:
    return self._terms.get(key, ZERO)

  def items(self) -> Iterator[tuple[K, GaussianRational]]:
    return iter(self._terms.items())

  def keys(self) -> Iterator[K]:
    return iter(self._terms)

  def __iter__(self) -> Iterator[K]:
    return iter(self._terms)

  def __len__(self) -> int:
    return len(self._terms)

  def __bool__(self) -> bool:
    return bool(self._terms)

  def __add__(self, other):
    if not isinstance(other, LinearCombination):
      return NotImplemented
    return type(self)([*self._terms.items(), *other._terms.items()])

  def __sub__(self, other):
    if not isinstance(other, LinearCombination):
      return NotImplemented
    return self + (-other)

  def __neg__(self):
    return type(self)({key: -coeff for key, coeff in self._terms.items()})

  def __mul__(self, scalar):
    if isinstance(scalar, LinearCombination):
      return NotImplemented
    factor = as_gaussian(scalar)
    return type(self)(
      {key: coeff * factor for key, coeff in self._terms.items()}
    )

  __rmul__ = __mul__

  def __eq__(self, other) -> bool:
    if not isinstance(other, LinearCombination):
      return NotImplemented
    return self._terms == other._terms

  def __hash__(self) -> int:
    return hash(frozenset(self._terms.items()))

  def __repr__(self) -> str:
    body = " + ".join(
      f"({format_gaussian(coeff)}){key}" for key, coeff in self._terms.items()
    )
    return f"{type(self).__name__}({body or '0'})"
