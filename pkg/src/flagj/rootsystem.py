# flagj/rootsystem.py

"""Root systems of semi-simple Lie algebras built from Cartan data.

Roots are integer coefficient vectors over the simple roots a1..al (Bourbaki
numbering). Only positive roots are stored; negative roots are produced on the
fly by negation.
"""

import dataclasses
import functools
import itertools
import re
from collections.abc import Iterable, Sequence
from enum import Enum
from fractions import Fraction

import numpy as np
from absl import logging

MAX_CLASSICAL_RANK = 8

_SPEC_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")
_TERM_RE = re.compile(r"^(\d*)a(\d+)$")


class Family(str, Enum):
  """Dynkin families of simple Lie algebras."""

  A = "A"
  B = "B"
  C = "C"
  D = "D"
  E = "E"
  F = "F"
  G = "G"


_CLASSICAL_MIN_RANK = {Family.A: 1, Family.B: 2, Family.C: 2, Family.D: 4}
_EXCEPTIONAL_RANKS = {Family.E: (6, 7, 8), Family.F: (4,), Family.G: (2,)}


@dataclasses.dataclass(frozen=True)
class AlgebraSpec:
  """A Dynkin type such as A3 or G2."""

  family: Family
  rank: int

  def __post_init__(self):
    try:
      family = (
        self.family
        if isinstance(self.family, Family)
        else Family(str(self.family).strip().upper())
      )
    except ValueError as e:
      raise ValueError(f"Unknown Dynkin family '{self.family}'") from e
    if isinstance(self.rank, bool) or not isinstance(self.rank, int):
      raise ValueError(f"Rank must be an integer, got {self.rank!r}")
    object.__setattr__(self, "family", family)

    if family in _CLASSICAL_MIN_RANK:
      low = _CLASSICAL_MIN_RANK[family]
      if not low <= self.rank <= MAX_CLASSICAL_RANK:
        raise ValueError(
          f"Type {family.value} requires rank between {low} and "
          f"{MAX_CLASSICAL_RANK}, got {self.rank}"
        )
    elif self.rank not in _EXCEPTIONAL_RANKS[family]:
      allowed = ", ".join(str(r) for r in _EXCEPTIONAL_RANKS[family])
      raise ValueError(
        f"Type {family.value} requires rank in {{{allowed}}}, got {self.rank}"
      )

  @classmethod
  def parse(cls, text: str) -> "AlgebraSpec":
    """Parses names like "A3" or "g2"."""
    match = _SPEC_RE.match(text)
    if not match:
      raise ValueError(f"Malformed algebra '{text}', expected e.g. 'A3'")
    return cls(Family(match.group(1).upper()), int(match.group(2)))

  def __str__(self) -> str:
    return f"{self.family.value}{self.rank}"


def expected_positive_roots(spec: AlgebraSpec) -> int:
  """Returns the classical count of positive roots for a Dynkin type."""
  n = spec.rank
  match spec.family:
    case Family.A:
      return n * (n + 1) // 2
    case Family.B | Family.C:
      return n * n
    case Family.D:
      return n * (n - 1)
    case Family.E:
      return {6: 36, 7: 63, 8: 120}[n]
    case Family.F:
      return 24
    case Family.G:
      return 6
  raise ValueError(f"Unsupported algebra {spec}")


@dataclasses.dataclass(frozen=True)
class Root:
  """A root as its coefficient vector over the simple roots."""

  coeffs: tuple[int, ...]

  def __post_init__(self):
    coeffs = tuple(int(c) for c in self.coeffs)
    if not any(coeffs):
      raise ValueError("The zero vector is not a root")
    if any(c > 0 for c in coeffs) and any(c < 0 for c in coeffs):
      raise ValueError(f"Coefficients {coeffs} mix signs")
    object.__setattr__(self, "coeffs", coeffs)

  @property
  def rank(self) -> int:
    return len(self.coeffs)

  @property
  def height(self) -> int:
    return sum(self.coeffs)

  @property
  def is_positive(self) -> bool:
    return self.height > 0

  @property
  def sign(self) -> int:
    return 1 if self.is_positive else -1

  def __neg__(self) -> "Root":
    return Root(tuple(-c for c in self.coeffs))

  def __abs__(self) -> "Root":
    return self if self.is_positive else -self

  def sort_key(self) -> tuple:
    """Orders roots by height, then a1-major coefficients; negatives last."""
    positive = abs(self)
    return (
      0 if self.is_positive else 1,
      positive.height,
      tuple(-c for c in positive.coeffs),
    )

  def __str__(self) -> str:
    positive = abs(self)
    terms = []
    for i, c in enumerate(positive.coeffs, start=1):
      if c:
        terms.append(f"a{i}" if c == 1 else f"{c}a{i}")
    name = "+".join(terms)
    if self.is_positive:
      return name
    return f"-{name}" if len(terms) == 1 else f"-({name})"


def parse_root_coeffs(text: str, rank: int) -> tuple[int, ...]:
  """Parses "a1+a2", "2a1+a2" or "-(a1+a2)" into a coefficient vector.

  Raises:
      ValueError: If the text is malformed or names a simple root beyond the
        rank.
  """
  body = text.replace(" ", "")
  sign = 1
  if body.startswith("-"):
    sign = -1
    body = body[1:]
    if body.startswith("(") and body.endswith(")"):
      body = body[1:-1]
  if not body:
    raise ValueError(f"Malformed root name '{text}'")

  coeffs = [0] * rank
  for term in body.split("+"):
    match = _TERM_RE.match(term)
    if not match:
      raise ValueError(f"Malformed root name '{text}'")
    index = int(match.group(2))
    if not 1 <= index <= rank:
      raise ValueError(
        f"Root '{text}' names a{index}, but the rank is {rank}"
      )
    if coeffs[index - 1]:
      raise ValueError(f"Root '{text}' repeats a{index}")
    coeffs[index - 1] = int(match.group(1) or 1)
  return tuple(sign * c for c in coeffs)


@dataclasses.dataclass(frozen=True)
class Triple:
  """Positive roots a, b with a + b = sum a positive root; a precedes b."""

  a: Root
  b: Root
  sum: Root

  @property
  def roots(self) -> tuple[Root, Root, Root]:
    return (self.a, self.b, self.sum)

  @property
  def name(self) -> str:
    return f"{self.a}|{self.b}|{self.sum}"

  def __str__(self) -> str:
    return self.name


class RootSystem:
  """The positive roots of a Dynkin type together with its inner product.

  Attributes:
      spec: The Dynkin type.
      cartan: Integer Cartan matrix, cartan[i, j] = 2(a_i, a_j)/(a_i, a_i).
      gram: Integer matrix of inner products (a_i, a_j), short roots having
        squared length 2.
      positive_roots: Positive roots ordered by height, then coefficients.
      symmetrizer: d_i = (a_i, a_i)/2, making diag(d)·cartan symmetric.
  """

  def __init__(
    self,
    spec: AlgebraSpec,
    cartan: np.ndarray,
    gram: np.ndarray,
    positive_roots: Iterable[Root],
  ) -> None:
    self.spec = spec
    self.cartan = cartan
    self.gram = gram
    self.positive_roots: tuple[Root, ...] = tuple(
      sorted(positive_roots, key=Root.sort_key)
    )
    self.symmetrizer: tuple[Fraction, ...] = tuple(
      Fraction(int(gram[i, i]), 2) for i in range(spec.rank)
    )
    self._index = {root: i for i, root in enumerate(self.positive_roots)}
    self._coeffs = frozenset(
      c for r in self.positive_roots for c in (r.coeffs, (-r).coeffs)
    )

  @property
  def rank(self) -> int:
    return self.spec.rank

  @property
  def simple_roots(self) -> tuple[Root, ...]:
    return self.positive_roots[: self.rank]

  @property
  def highest_root(self) -> Root:
    return self.positive_roots[-1]

  def index(self, root: Root) -> int:
    """Returns the position of a positive root in the canonical order."""
    return self._index[root]

  def is_root(self, coeffs: Sequence[int]) -> bool:
    return tuple(coeffs) in self._coeffs

  def parse_root(self, text: str) -> Root:
    """Parses a root name and checks that it is a root of this system."""
    coeffs = parse_root_coeffs(text, self.rank)
    if not self.is_root(coeffs):
      raise ValueError(f"'{text}' is not a root of {self.spec}")
    return Root(coeffs)

  def pairing(self, a: Root, b: Root) -> Fraction:
    """Returns the symmetrized-Cartan inner product (a, b)."""
    value = np.asarray(a.coeffs) @ self.gram @ np.asarray(b.coeffs)
    return Fraction(int(value))

  def length2(self, root: Root) -> Fraction:
    return self.pairing(root, root)

  def cartan_integer(self, b: Root, a: Root) -> int:
    """Returns <b, a^v> = 2(b, a)/(a, a)."""
    value = 2 * self.pairing(b, a) / self.length2(a)
    if value.denominator != 1:
      raise RuntimeError(f"Non-integral Cartan integer for {b}, {a}")
    return int(value)

  def root_add(self, a: Root, b: Root) -> Root | None:
    """Returns a + b if it is a root, else None."""
    coeffs = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
    return Root(coeffs) if self.is_root(coeffs) else None

  def string_below(self, b: Root, a: Root) -> int:
    """Returns p = max{k >= 0 : b - k·a is a root}."""
    p = 0
    while self.is_root(
      tuple(y - (p + 1) * x for x, y in zip(a.coeffs, b.coeffs))
    ):
      p += 1
    return p

  @functools.cached_property
  def zero_sum_triples(self) -> tuple[Triple, ...]:
    """Every positive pair {a, b} whose sum is a root, listed once."""
    triples = []
    for a, b in itertools.combinations(self.positive_roots, 2):
      total = self.root_add(a, b)
      if total is not None:
        triples.append(Triple(a, b, total))
    return tuple(triples)

  def theta_closure(
    self,
    theta: Iterable[Root],
    simple_system: Sequence[Root] | None = None,
  ) -> frozenset[Root]:
    """Returns <theta>+, the roots reachable from theta by adding theta.

    Args:
        theta: A subset of the simple system.
        simple_system: The simple system theta is drawn from. Defaults to the
          standard simple roots, in which case the result is the set of
          positive roots supported on theta.

    Raises:
        ValueError: If theta is not contained in the simple system.
    """
    simple = (
      self.simple_roots if simple_system is None else tuple(simple_system)
    )
    theta = tuple(theta)
    for root in theta:
      if root not in simple:
        raise ValueError(f"Root {root} is not in the simple system")

    closure = set(theta)
    frontier = list(theta)
    while frontier:
      grown = []
      for gamma in frontier:
        for delta in theta:
          total = self.root_add(gamma, delta)
          if total is not None and total not in closure:
            closure.add(total)
            grown.append(total)
      frontier = grown
    return frozenset(closure)

  def _check_selection(self, selection: Iterable[Root]) -> tuple[Root, ...]:
    selected = tuple(selection)
    seen = set()
    for root in selected:
      positive = abs(root)
      if positive not in self._index:
        raise ValueError(f"{root} is not a root of {self.spec}")
      if positive in seen:
        raise ValueError(f"Selection picks both signs of {positive}")
      seen.add(positive)
    missing = [str(r) for r in self.positive_roots if r not in seen]
    if missing:
      raise ValueError(f"Selection misses {', '.join(missing)}")
    return selected

  def check_positive_system(self, selection: Iterable[Root]) -> bool:
    """Checks that a one-of-±γ selection is closed under root addition.

    Raises:
        ValueError: If the selection does not pick exactly one of ±γ for every
          positive root γ.
    """
    selected = self._check_selection(selection)
    members = set(selected)
    for a, b in itertools.combinations(selected, 2):
      total = self.root_add(a, b)
      if total is not None and total not in members:
        logging.debug("Selection not closed: %s + %s = %s", a, b, total)
        return False
    return True

  def simple_system_of(self, selection: Iterable[Root]) -> tuple[Root, ...]:
    """Returns the elements of a positive system that are not sums of two."""
    selected = self._check_selection(selection)
    sums = set()
    for a, b in itertools.combinations(selected, 2):
      total = self.root_add(a, b)
      if total is not None:
        sums.add(total)
    return tuple(root for root in selected if root not in sums)

  def __repr__(self) -> str:
    return f"RootSystem({self.spec}, {len(self.positive_roots)} positive roots)"


def _diagram(spec: AlgebraSpec) -> tuple[list[int], list[tuple[int, int]]]:
  """Returns squared simple-root lengths and Dynkin edges (0-based)."""
  n = spec.rank
  chain = [(i, i + 1) for i in range(n - 1)]
  match spec.family:
    case Family.A:
      return [2] * n, chain
    case Family.B:
      return [4] * (n - 1) + [2], chain
    case Family.C:
      return [2] * (n - 1) + [4], chain
    case Family.D:
      return [2] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    case Family.E:
      edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
      return [2] * n, edges
    case Family.F:
      return [4, 4, 2, 2], chain
    case Family.G:
      return [2, 6], chain
  raise ValueError(f"Unsupported algebra {spec}")


def _gram_and_cartan(spec: AlgebraSpec) -> tuple[np.ndarray, np.ndarray]:
  lengths, edges = _diagram(spec)
  gram = np.diag(lengths).astype(int)
  for i, j in edges:
    gram[i, j] = gram[j, i] = -max(lengths[i], lengths[j]) // 2
  cartan = np.zeros_like(gram)
  for i in range(spec.rank):
    for j in range(spec.rank):
      numerator = 2 * int(gram[i, j])
      if numerator % int(gram[i, i]):
        raise RuntimeError(f"Non-integral Cartan matrix for {spec}")
      cartan[i, j] = numerator // int(gram[i, i])
  return gram, cartan


@functools.lru_cache(maxsize=None)
def build_root_system(spec: AlgebraSpec) -> RootSystem:
  """Builds the positive roots of a Dynkin type by the root-string closure.

  Starting from the simple roots, a_i is added to a root g whenever the
  a_i-string through g continues upwards: with q the length of the string
  below g, g + a_i is a root iff q - <g, a_i^v> > 0.

  Args:
      spec: A validated Dynkin type.

  Returns:
      The root system, cached per type.

  Raises:
      RuntimeError: If the closure disagrees with the classical root count.
  """
  gram, cartan = _gram_and_cartan(spec)
  n = spec.rank
  simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
  found = set(simple)
  layer = list(simple)

  while layer:
    next_layer = []
    for gamma in layer:
      for i in range(n):
        q = 0
        below = list(gamma)
        while True:
          below[i] -= 1
          if tuple(below) not in found:
            break
          q += 1
        pairing = sum(gamma[j] * int(cartan[i, j]) for j in range(n))
        if q - pairing > 0:
          raised = tuple(c + (k == i) for k, c in enumerate(gamma))
          if raised not in found:
            found.add(raised)
            next_layer.append(raised)
    layer = next_layer

  expected = expected_positive_roots(spec)
  if len(found) != expected:
    raise RuntimeError(
      f"Root closure for {spec} found {len(found)} positive roots, "
      f"expected {expected}"
    )
  rs = RootSystem(spec, cartan, gram, (Root(c) for c in found))
  logging.info("Built %s with %d positive roots", spec, len(found))
  return rs
