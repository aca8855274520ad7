# flagj/nijenhuis.py

"""Brute-force integrability oracle built on the Nijenhuis operator."""

import dataclasses
import itertools
import math
from collections.abc import Callable, Sequence

from absl import logging
from tqdm import tqdm

from .exact import ZERO, GaussianRational, format_gaussian
from .gacs import Structure
from .liealg import (
  GeneralizedVector,
  LieAlgebra,
  RegularElement,
  UElement,
  alpha_of_H,
)

DEFAULT_MAX_RANK = 4

Evaluator = Callable[
  [GeneralizedVector, GeneralizedVector, GeneralizedVector], GaussianRational
]


@dataclasses.dataclass(frozen=True)
class Witness:
  """A basis triple of L on which the operator does not vanish."""

  labels: tuple[str, str, str]
  value: GaussianRational

  def to_dict(self) -> dict:
    return {"vectors": list(self.labels), "value": format_gaussian(self.value)}


@dataclasses.dataclass(frozen=True)
class OracleResult:
  integrable: bool
  witness: Witness | None
  triples_checked: int


def _dual_term(
  algebra: LieAlgebra,
  h: RegularElement,
  owner: GeneralizedVector,
  x: UElement,
  y: UElement,
) -> GaussianRational:
  """Returns the sum over dual terms d_g of owner of k_g <H, [d_g, [x, y]]>."""
  duals = owner.dual_part()
  if not duals or not x or not y:
    return ZERO
  inner = algebra.bracket_u(x, y)
  if not inner:
    return ZERO
  total = ZERO
  for symbol, coeff in duals:
    k = 1 / alpha_of_H(algebra.rs, h, symbol.root)
    total += coeff * k * algebra.killing_bracket(h, symbol, inner)
  return total


def nij(
  a: GeneralizedVector,
  b: GeneralizedVector,
  c: GeneralizedVector,
  algebra: LieAlgebra,
  h: RegularElement | None = None,
) -> GaussianRational:
  """Evaluates the Nijenhuis operator on three generalized vectors.

  Nij(A, B, C) = (k<H,[C2,[A1,B1]]> + k<H,[A2,[B1,C1]]> + k<H,[B2,[C1,A1]]>)/12,
  where X1 is the vector part of X, X2 its dual part, and each dual symbol
  at g enters through its u-symbol weighted by k_g = 1/g(H).

  Args:
      a: First argument.
      b: Second argument.
      c: Third argument.
      algebra: The compact form carrying the structure constants.
      h: The regular element; defaults to c_i = 1.

  Returns:
      The exact value in Q(i).
  """
  h = h or RegularElement.default(algebra.rs.rank)
  a1, b1, c1 = a.vector_part(), b.vector_part(), c.vector_part()
  total = (
    _dual_term(algebra, h, c, a1, b1)
    + _dual_term(algebra, h, a, b1, c1)
    + _dual_term(algebra, h, b, c1, a1)
  )
  return total / 12


def global_eigenbasis(
  s: Structure, algebra: LieAlgebra
) -> list[tuple[str, GeneralizedVector]]:
  """Returns the labelled eigenvectors of every block, in root order."""
  vectors = []
  for root in algebra.rs.positive_roots:
    basis = s[root].eigenbasis(root)
    for i, vector in enumerate(basis.vectors, start=1):
      vectors.append((f"e{i}[{root}]", vector))
  return vectors


def first_nonvanishing(
  vectors: Sequence[tuple[str, GeneralizedVector]],
  evaluate: Evaluator,
  desc: str = "Scanning triples",
) -> tuple[Witness | None, int]:
  """Evaluates all distinct unordered triples in canonical order.

  Returns:
      The first witness (or None) and the number of triples evaluated.
  """
  total = math.comb(len(vectors), 3)
  checked = 0
  triples = itertools.combinations(range(len(vectors)), 3)
  with tqdm(
    triples, total=total, desc=desc, leave=False, disable=None
  ) as pbar:
    for i, j, k in pbar:
      checked += 1
      value = evaluate(vectors[i][1], vectors[j][1], vectors[k][1])
      if value:
        labels = (vectors[i][0], vectors[j][0], vectors[k][0])
        return Witness(labels, value), checked
  return None, checked


def check_rank(algebra: LieAlgebra, max_rank: int | None) -> None:
  if max_rank is not None and algebra.rs.rank > max_rank:
    raise ValueError(
      f"Brute force on {algebra.rs.spec} exceeds the rank cap {max_rank}; "
      "raise max_rank to run it anyway"
    )


def is_integrable_bruteforce(
  s: Structure,
  algebra: LieAlgebra,
  h: RegularElement | None = None,
  max_rank: int | None = DEFAULT_MAX_RANK,
) -> OracleResult:
  """Decides integrability by exhaustive vanishing of Nij on L.

  Args:
      s: The structure; validated first.
      algebra: The compact form of the structure's root system.
      h: The regular element; defaults to c_i = 1.
      max_rank: Largest rank accepted, or None for no cap.

  Returns:
      The verdict and, on failure, the first nonvanishing triple.

  Raises:
      ValueError: If the structure is invalid or the rank cap is exceeded.
  """
  s.ensure_valid(algebra.rs)
  check_rank(algebra, max_rank)
  h = h or RegularElement.default(algebra.rs.rank)
  vectors = global_eigenbasis(s, algebra)
  witness, checked = first_nonvanishing(
    vectors,
    lambda a, b, c: nij(a, b, c, algebra, h),
    desc=f"Nijenhuis oracle on {algebra.rs.spec}",
  )
  if witness is not None:
    logging.debug(
      "Nij = %s on %s",
      format_gaussian(witness.value),
      ", ".join(witness.labels),
    )
  return OracleResult(witness is None, witness, checked)
