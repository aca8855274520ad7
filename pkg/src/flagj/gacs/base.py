"""Defines the abstract base class for a per-root structure block."""

import abc
import dataclasses

import numpy as np

from ..exact import ZERO, GaussianRational
from ..liealg import GeneralizedVector, Kind, Symbol
from ..rootsystem import Root

# Pairing matrix of the ordered basis {A, S, -S*, A*}.
B_MATRIX = np.array(
  [
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
  ],
  dtype=object,
)


@dataclasses.dataclass(frozen=True)
class EigenBasis:
  """Two generalized vectors spanning the i-eigenspace of a block."""

  root: Root
  vectors: tuple[GeneralizedVector, GeneralizedVector]


class RootJ(abc.ABC):
  """Abstract base class for a block J_g acting on u_g + u_g*.

  Matrices are written in the ordered basis {A_g, S_g, -S*_g, A*_g}.
  """

  @property
  @abc.abstractmethod
  def is_complex(self) -> bool:
    """Whether the block is of complex type (+J0 or -J0)."""
    raise NotImplementedError

  @abc.abstractmethod
  def violations(self) -> list[str]:
    """Returns the constraints the block fails; empty when valid."""
    raise NotImplementedError

  @abc.abstractmethod
  def matrix4(self) -> np.ndarray:
    """Returns the 4x4 rational matrix of the block."""
    raise NotImplementedError

  @abc.abstractmethod
  def eigenbasis(self, root: Root) -> EigenBasis:
    """Returns a basis of the i-eigenspace L_root.

    Args:
        root: The positive root the block sits at.
    """
    raise NotImplementedError

  @abc.abstractmethod
  def negate_basis(self) -> "RootJ":
    """Returns the same block written over the basis of the negative root."""
    raise NotImplementedError

  @abc.abstractmethod
  def epsilon(self) -> int | None:
    """Returns the complex-structure sign, or None for non-complex blocks."""
    raise NotImplementedError

  @abc.abstractmethod
  def to_dict(self) -> dict:
    """Returns the JSON form of the block."""
    raise NotImplementedError

  @property
  def is_valid(self) -> bool:
    return not self.violations()


def to_coordinates(vector: GeneralizedVector, root: Root) -> np.ndarray:
  """Returns the coordinates of a vector supported at root in {A, S, -S*, A*}.

  Raises:
      ValueError: If the vector has a component at another root.
  """
  for symbol in vector.keys():
    if symbol.root != root:
      raise ValueError(f"{symbol} does not lie over {root}")
  return np.array(
    [
      vector.coefficient(Symbol(Kind.A, root)),
      vector.coefficient(Symbol(Kind.S, root)),
      -vector.coefficient(Symbol(Kind.S_DUAL, root)),
      vector.coefficient(Symbol(Kind.A_DUAL, root)),
    ],
    dtype=object,
  )


def from_coordinates(coords: np.ndarray, root: Root) -> GeneralizedVector:
  return GeneralizedVector(
    {
      Symbol(Kind.A, root): coords[0],
      Symbol(Kind.S, root): coords[1],
      Symbol(Kind.S_DUAL, root): -coords[2],
      Symbol(Kind.A_DUAL, root): coords[3],
    }
  )


def apply_block(
  block: RootJ, vector: GeneralizedVector, root: Root
) -> GeneralizedVector:
  """Applies the block's matrix to a vector over root."""
  return from_coordinates(block.matrix4() @ to_coordinates(vector, root), root)


def b_pairing(
  v: GeneralizedVector, w: GeneralizedVector, root: Root
) -> GaussianRational:
  """Returns the bilinear pairing v^T B w of two vectors over root."""
  value = to_coordinates(v, root) @ B_MATRIX @ to_coordinates(w, root)
  return ZERO + value
