# flagj/survey.py

"""Enumerates Θ and the admissible complex signs around <Θ>+."""

import collections
import itertools
from collections.abc import Iterator, Sequence
from fractions import Fraction

from absl import logging
from tqdm import tqdm

from . import classify, nijenhuis, twisted
from .gacs import ComplexJ, RootJ, Structure
from .liealg import LieAlgebra, RegularElement
from .rootsystem import Root, RootSystem

COLUMNS = ("theta", "noncomplex", "patterns", "needs_omega")


def theta_label(theta: Sequence[Root]) -> str:
  return "{" + ", ".join(str(r) for r in theta) + "}"


def theta_subsets(rs: RootSystem) -> list[tuple[Root, ...]]:
  """All subsets of the simple roots, by size, then in root order."""
  return [
    subset
    for size in range(rs.rank + 1)
    for subset in itertools.combinations(rs.simple_roots, size)
  ]


def generic_seeds(
  theta: Sequence[Root], rs: RootSystem
) -> dict[Root, tuple[Fraction, Fraction]]:
  """a_i = i and x_i = i + 1 on the i-th simple root of Θ."""
  return {
    root: (Fraction(rs.index(root) + 1), Fraction(rs.index(root) + 2))
    for root in theta
  }


def generic_params(
  theta: Sequence[Root], rs: RootSystem
) -> dict[Root, tuple[Fraction, Fraction]]:
  """Unrelated (a, x) on every root of <Θ>+, a = height and x = position."""
  return {
    root: (Fraction(root.height), Fraction(rs.index(root) + 1))
    for root in rs.theta_closure(theta)
  }


def admissible_signs(
  rs: RootSystem, base: Structure
) -> Iterator[dict[Root, int]]:
  """Yields every sign map on the complex roots of base passing the table.

  The non-complex blocks of base are kept. Roots are assigned in height
  order and each triple is checked once its sum is assigned, which prunes
  every inadmissible prefix.
  """
  complex_roots = [r for r in rs.positive_roots if base[r].is_complex]
  by_sum = collections.defaultdict(list)
  for t in rs.zero_sum_triples:
    by_sum[t.sum].append(t)
  blocks: dict[Root, RootJ] = dict(base.items())

  def extend(i: int) -> Iterator[dict[Root, int]]:
    if i == len(complex_roots):
      yield {r: blocks[r].sign for r in complex_roots}
      return
    root = complex_roots[i]
    for sign in (1, -1):
      blocks[root] = ComplexJ(sign)
      verdicts = (
        classify.triple_status(blocks[t.a], blocks[t.b], blocks[t.sum])
        for t in by_sum[root]
      )
      if all(v.integrable for v in verdicts):
        yield from extend(i + 1)

  yield from extend(0)


def survey_theta(
  rs: RootSystem,
  theta: Sequence[Root],
  algebra: LieAlgebra | None = None,
  h: RegularElement | None = None,
) -> dict:
  """Counts the admissible sign patterns for one Θ.

  Args:
      rs: The root system.
      theta: The subset of simple roots.
      algebra: When given, every admissible pattern is re-checked by the
        brute-force oracle.
      h: The regular element for the oracle; defaults to c_i = 1.

  Raises:
      RuntimeError: If the oracle rejects an admissible pattern.
  """
  seeds = generic_seeds(theta, rs)
  base = classify.construct_from_theta(rs, theta, seeds)
  patterns = 0
  for signs in admissible_signs(rs, base):
    patterns += 1
    if algebra is not None:
      s = classify.construct_from_theta(rs, theta, seeds, signs)
      result = nijenhuis.is_integrable_bruteforce(
        s, algebra, h, max_rank=None
      )
      if not result.integrable:
        raise RuntimeError(
          f"Oracle rejects an admissible sign pattern for Θ = "
          f"{theta_label(theta)}: {result.witness}"
        )

  params = generic_params(theta, rs)
  construction = twisted.construct_twisted(rs, theta, params)
  row = {
    "theta": theta_label(theta),
    "noncomplex": len(rs.theta_closure(theta)),
    "patterns": patterns,
    "needs_omega": bool(construction.solution.three_form),
  }
  logging.info(
    "Survey %s %s: %d sign patterns", rs.spec, row["theta"], patterns
  )
  return row


def survey_rows(
  rs: RootSystem,
  oracle: bool = False,
  max_rank: int | None = nijenhuis.DEFAULT_MAX_RANK,
  h: RegularElement | None = None,
) -> list[dict]:
  """Runs survey_theta over all 2^rank subsets Θ.

  Raises:
      ValueError: If the rank exceeds max_rank.
  """
  if max_rank is not None and rs.rank > max_rank:
    raise ValueError(
      f"Survey of {rs.spec} exceeds the rank cap {max_rank}; "
      "raise --max-rank to run it anyway"
    )
  algebra = LieAlgebra(rs) if oracle else None
  subsets = tqdm(
    theta_subsets(rs), desc=f"Surveying {rs.spec}", leave=False, disable=None
  )
  return [survey_theta(rs, theta, algebra, h) for theta in subsets]

