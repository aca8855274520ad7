# flagj/gacs/noncomplex_type.py

"""Blocks of non-complex type, parametrized by (a, x, y) with a² - xy = -1."""

import dataclasses
from fractions import Fraction

import numpy as np

from ..exact import I, RationalLike, format_rational, parse_rational
from ..liealg import GeneralizedVector, Kind, Symbol
from ..rootsystem import Root
from .base import EigenBasis, RootJ


@dataclasses.dataclass(frozen=True)
class NonComplexJ(RootJ):
  """A non-diagonal block with exact parameters a, x, y.

  The block is only a generalized almost complex structure when x and y are
  nonzero and a² - x·y = -1; construction does not enforce this so that
  `violations` can report it.
  """

  a: Fraction
  x: Fraction
  y: Fraction

  def __post_init__(self):
    for name in ("a", "x", "y"):
      object.__setattr__(self, name, parse_rational(getattr(self, name)))

  @classmethod
  def from_ax(cls, a: RationalLike, x: RationalLike) -> "NonComplexJ":
    """Builds the valid block with y = (a² + 1)/x.

    Raises:
        ValueError: If x is zero.
    """
    a, x = parse_rational(a), parse_rational(x)
    if not x:
      raise ValueError("x must be nonzero for a non-complex block")
    return cls(a, x, (a * a + 1) / x)

  @property
  def is_complex(self) -> bool:
    return False

  @property
  def constraint(self) -> Fraction:
    """Returns a² - x·y, which must equal -1."""
    return self.a * self.a - self.x * self.y

  def violations(self) -> list[str]:
    problems = []
    if not self.x:
      problems.append("x must be nonzero")
    if not self.y:
      problems.append("y must be nonzero")
    if self.constraint != -1:
      problems.append(
        f"a^2 - x*y = {format_rational(self.constraint)}, expected -1"
      )
    return problems

  def matrix4(self) -> np.ndarray:
    a, x, y = self.a, self.x, self.y
    return np.array(
      [
        [a, 0, 0, -x],
        [0, a, x, 0],
        [0, -y, -a, 0],
        [y, 0, 0, -a],
      ],
      dtype=object,
    )

  def eigenbasis(self, root: Root) -> EigenBasis:
    dual = self.a - I
    return EigenBasis(
      root,
      (
        GeneralizedVector(
          {Symbol(Kind.A, root): self.x, Symbol(Kind.A_DUAL, root): dual}
        ),
        GeneralizedVector(
          {Symbol(Kind.S, root): self.x, Symbol(Kind.S_DUAL, root): dual}
        ),
      ),
    )

  def negate_basis(self) -> "NonComplexJ":
    return NonComplexJ(self.a, -self.x, -self.y)

  def epsilon(self) -> None:
    return None

  def to_dict(self) -> dict:
    return {
      "kind": "noncomplex",
      "a": format_rational(self.a),
      "x": format_rational(self.x),
      "y": format_rational(self.y),
    }

  def __str__(self) -> str:
    return (
      f"(a={format_rational(self.a)}, x={format_rational(self.x)}, "
      f"y={format_rational(self.y)})"
    )
