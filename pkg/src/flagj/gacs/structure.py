# flagj/gacs/structure.py

"""Invariant structures as one block per positive root."""

import dataclasses
import random
from collections.abc import Iterator, Mapping, Sequence
from fractions import Fraction

import numpy as np

from ..exact import parse_rational
from ..rootsystem import Root, RootSystem
from .base import RootJ
from .complex_type import J0, ComplexJ
from .noncomplex_type import NonComplexJ


@dataclasses.dataclass(frozen=True)
class Violation:
  """A constraint failed by a structure at one root."""

  root: str
  message: str

  def __str__(self) -> str:
    return f"{self.root}: {self.message}"


class Structure:
  """A map from positive roots to blocks, J = sum over g > 0 of J_g."""

  def __init__(self, blocks: Mapping[Root, RootJ]) -> None:
    self._blocks = dict(blocks)

  @classmethod
  def uniform(cls, rs: RootSystem, block: RootJ) -> "Structure":
    return cls({root: block for root in rs.positive_roots})

  def __getitem__(self, root: Root) -> RootJ:
    return self._blocks[root]

  def __contains__(self, root: Root) -> bool:
    return root in self._blocks

  def __iter__(self) -> Iterator[Root]:
    return iter(self._blocks)

  def __len__(self) -> int:
    return len(self._blocks)

  def items(self):
    return self._blocks.items()

  def __eq__(self, other) -> bool:
    if not isinstance(other, Structure):
      return NotImplemented
    return self._blocks == other._blocks

  def __hash__(self) -> int:
    return hash(frozenset(self._blocks.items()))

  def replace(self, root: Root, block: RootJ) -> "Structure":
    blocks = dict(self._blocks)
    blocks[root] = block
    return Structure(blocks)

  def noncomplex_roots(self) -> frozenset[Root]:
    return frozenset(
      root for root, block in self._blocks.items() if not block.is_complex
    )

  def validate(self, rs: RootSystem) -> list[Violation]:
    """Checks totality on the positive roots and every block's constraints.

    Returns:
        The violations in canonical root order; empty when the structure is
        valid.
    """
    violations = []
    for root in rs.positive_roots:
      if root not in self._blocks:
        violations.append(Violation(str(root), "missing block"))
        continue
      for message in self._blocks[root].violations():
        violations.append(Violation(str(root), message))
    for root in self._blocks:
      if not (root.is_positive and rs.is_root(root.coeffs)):
        violations.append(
          Violation(str(root), f"not a positive root of {rs.spec}")
        )
    return violations

  def ensure_valid(self, rs: RootSystem) -> None:
    """Raises ValueError listing every violation, if any."""
    violations = self.validate(rs)
    if violations:
      details = "; ".join(str(v) for v in violations)
      raise ValueError(f"Invalid structure: {details}")

  def to_dict(self) -> dict:
    ordered = sorted(self._blocks, key=Root.sort_key)
    return {"blocks": {str(r): self._blocks[r].to_dict() for r in ordered}}

  @classmethod
  def from_dict(cls, rs: RootSystem, data: Mapping) -> "Structure":
    """Reads the {"blocks": {...}} JSON form.

    Totality is left to `validate` so that missing roots are reported as
    violations.

    Raises:
        ValueError: On unknown root names or malformed blocks.
    """
    if not isinstance(data, Mapping) or not isinstance(
      data.get("blocks"), Mapping
    ):
      raise ValueError("A structure needs a 'blocks' mapping")
    blocks = {}
    for name, block_data in data["blocks"].items():
      root = rs.parse_root(name)
      if not root.is_positive:
        raise ValueError(
          f"Blocks are indexed by positive roots, got '{name}'"
        )
      try:
        blocks[root] = block_from_dict(block_data)
      except (TypeError, KeyError, ValueError) as e:
        raise ValueError(f"Malformed block at '{name}': {e}") from e
    return cls(blocks)

  def __repr__(self) -> str:
    body = ", ".join(f"{r}: {b}" for r, b in self._blocks.items())
    return f"Structure({{{body}}})"


def block_from_dict(data: Mapping) -> RootJ:
  """Reads one block in complex, noncomplex or matrix form."""
  kind = data["kind"]
  if kind == "complex":
    sign = data.get("sign", 1)
    if isinstance(sign, bool) or sign not in (1, -1):
      raise ValueError(f"complex sign must be 1 or -1, got {sign!r}")
    return ComplexJ(int(sign))
  if kind == "noncomplex":
    if "y" in data:
      return NonComplexJ(data["a"], data["x"], data["y"])
    return NonComplexJ.from_ax(data["a"], data["x"])
  if kind == "matrix":
    rows = [[parse_rational(v) for v in row] for row in data["rows"]]
    return from_matrix4(np.array(rows, dtype=object))
  raise ValueError(f"Unknown block kind '{kind}'")


def from_matrix4(matrix: Sequence[Sequence] | np.ndarray) -> RootJ:
  """Classifies a 4x4 rational matrix as an invariant block.

  The invariant generalized almost complex structures on u_g + u_g* are
  exactly ±J0 and the non-complex family in the basis {A, S, -S*, A*}.

  Raises:
      ValueError: If the matrix is none of these.
  """
  m = np.array(matrix, dtype=object)
  if m.shape != (4, 4):
    raise ValueError(f"Expected a 4x4 matrix, got shape {m.shape}")
  m = np.vectorize(Fraction, otypes=[object])(m)
  for sign in (1, -1):
    if np.array_equal(m, sign * J0):
      return ComplexJ(sign)
  candidate = NonComplexJ(m[0, 0], -m[0, 3], m[3, 0])
  if np.array_equal(m, candidate.matrix4()) and candidate.is_valid:
    return candidate
  raise ValueError(
    "Matrix is not an invariant generalized almost complex structure"
  )


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
  """Draws a small rational p/q with |p| <= 6 and 1 <= q <= 4."""
  while True:
    value = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    if value or not nonzero:
      return value


def random_block(
  rng: random.Random, noncomplex_probability: float = 0.5
) -> RootJ:
  """Draws a valid block; non-complex ones come from (a, x) with y derived."""
  if rng.random() < noncomplex_probability:
    return NonComplexJ.from_ax(
      random_rational(rng), random_rational(rng, nonzero=True)
    )
  return ComplexJ(rng.choice((1, -1)))


def random_structure(
  rs: RootSystem,
  rng: random.Random,
  noncomplex_probability: float = 0.5,
) -> Structure:
  return Structure(
    {
      root: random_block(rng, noncomplex_probability)
      for root in rs.positive_roots
    }
  )
