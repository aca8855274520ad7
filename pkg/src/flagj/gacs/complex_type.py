# flagj/gacs/complex_type.py

"""Blocks of complex type, +J0 and -J0."""

import dataclasses

import numpy as np

from ..exact import I
from ..liealg import GeneralizedVector, Kind, Symbol
from ..rootsystem import Root
from .base import EigenBasis, RootJ

J0 = np.array(
  [
    [0, -1, 0, 0],
    [1, 0, 0, 0],
    [0, 0, 0, -1],
    [0, 0, 1, 0],
  ],
  dtype=object,
)


@dataclasses.dataclass(frozen=True)
class ComplexJ(RootJ):
  """The block sign·J0, induced by an invariant almost complex structure.

  Attributes:
      sign: +1 for J0, -1 for -J0.
  """

  sign: int = 1

  @property
  def is_complex(self) -> bool:
    return True

  def violations(self) -> list[str]:
    if self.sign not in (1, -1):
      return [f"complex sign must be +1 or -1, got {self.sign!r}"]
    return []

  def matrix4(self) -> np.ndarray:
    return self.sign * J0

  def eigenbasis(self, root: Root) -> EigenBasis:
    s = -I * self.sign
    return EigenBasis(
      root,
      (
        GeneralizedVector({Symbol(Kind.A, root): 1, Symbol(Kind.S, root): s}),
        GeneralizedVector(
          {Symbol(Kind.A_DUAL, root): 1, Symbol(Kind.S_DUAL, root): s}
        ),
      ),
    )

  def negate_basis(self) -> "ComplexJ":
    return ComplexJ(-self.sign)

  def epsilon(self) -> int:
    # J0 corresponds to epsilon = -1.
    return -self.sign

  def to_dict(self) -> dict:
    return {"kind": "complex", "sign": self.sign}

  def __str__(self) -> str:
    return "J0" if self.sign == 1 else "-J0"
