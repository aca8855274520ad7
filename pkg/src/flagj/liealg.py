# flagj/liealg.py

"""Structure constants and the compact real form u of a semi-simple algebra.

The Chevalley basis {e_r, h_i} of g has [e_r, e_s] = N_{r,s} e_{r+s},
[e_r, e_-r] = h_r (the coroot) and [h_i, e_r] = <r, a_i^v> e_r. The compact
form is spanned by A_r = e_r - e_-r, S_r = i(e_r + e_-r) and i·h_i.
"""

import dataclasses
import functools
import itertools
from collections import defaultdict
from collections.abc import Iterable, Mapping
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from absl import logging

from .exact import (
  ZERO,
  GaussianRational,
  I,
  LinearCombination,
  RationalLike,
  parse_rational,
)
from .rootsystem import Root, RootSystem

# Exhaustive g-level Jacobi check is run for systems up to this many positive
# roots (F4 included).
JACOBI_CHECK_LIMIT = 24


class Kind(str, Enum):
  """Basis symbol kinds of u and of its dual."""

  A = "A"
  S = "S"
  H = "iH"
  A_DUAL = "A*"
  S_DUAL = "S*"

  @property
  def is_dual(self) -> bool:
    return self in (Kind.A_DUAL, Kind.S_DUAL)

  @property
  def underlying(self) -> "Kind":
    """The u-symbol a dual symbol is identified with."""
    return {Kind.A_DUAL: Kind.A, Kind.S_DUAL: Kind.S}.get(self, self)

  @property
  def dual(self) -> "Kind":
    return {Kind.A: Kind.A_DUAL, Kind.S: Kind.S_DUAL}[self]


class Symbol(NamedTuple):
  """A basis symbol such as A[a1+a2]; iH symbols carry a simple root."""

  kind: Kind
  root: Root

  def __str__(self) -> str:
    return f"{self.kind.value}[{self.root}]"


class UElement(LinearCombination[Symbol]):
  """An exact element of the complexified compact form over A, S, iH."""

  def __init__(self, terms=()):
    super().__init__(terms)
    for symbol in self.keys():
      if symbol.kind.is_dual:
        raise ValueError(f"{symbol} is not an element of u")


class GeneralizedVector(LinearCombination[Symbol]):
  """A combination of A, S, A*, S* symbols at positive roots.

  The A/S part is the vector component, the A*/S* part the dual one. iH never
  appears in an operand.
  """

  def __init__(self, terms=()):
    super().__init__(terms)
    for symbol in self.keys():
      if symbol.kind is Kind.H:
        raise ValueError("iH symbols cannot appear in a generalized vector")
      if not symbol.root.is_positive:
        raise ValueError(f"{symbol} is not indexed by a positive root")

  @classmethod
  def basis(cls, kind: Kind, root: Root) -> "GeneralizedVector":
    return cls({Symbol(kind, root): 1})

  def vector_part(self) -> UElement:
    return UElement(
      (symbol, coeff) for symbol, coeff in self.items()
      if not symbol.kind.is_dual
    )

  def dual_part(self) -> list[tuple[Symbol, GaussianRational]]:
    """Returns the dual terms keyed by their underlying u-symbols."""
    return [
      (Symbol(symbol.kind.underlying, symbol.root), coeff)
      for symbol, coeff in self.items()
      if symbol.kind.is_dual
    ]


@dataclasses.dataclass(frozen=True)
class RegularElement:
  """A regular H in the positive Weyl chamber, given by c_i = a_i(H) > 0."""

  c: tuple[Fraction, ...]

  def __post_init__(self):
    if isinstance(self.c, (str, bytes, Mapping)) or not isinstance(
      self.c, Iterable
    ):
      raise ValueError(f"H must be a list of coordinates, got {self.c!r}")
    values = tuple(parse_rational(value) for value in self.c)
    if not values:
      raise ValueError("A regular element needs at least one coordinate")
    for value in values:
      if value <= 0:
        raise ValueError(f"H coordinates must be positive, got {value}")
    object.__setattr__(self, "c", values)

  @classmethod
  def default(cls, rank: int) -> "RegularElement":
    return cls(tuple(Fraction(1) for _ in range(rank)))

  @classmethod
  def parse(cls, values: Iterable[RationalLike]) -> "RegularElement":
    """Reads H from a list such as ["1", "2", "1/2"].

    Raises:
        ValueError: If values is not a list of positive rationals.
    """
    if isinstance(values, (str, bytes, Mapping)) or not isinstance(
      values, Iterable
    ):
      raise ValueError(f"H must be a list of coordinates, got {values!r}")
    return cls(tuple(values))


def alpha_of_H(rs: RootSystem, h: RegularElement, a: Root) -> Fraction:
  """Returns a(H) = sum n_i c_i; nonzero for every root since H is regular."""
  if len(h.c) != rs.rank:
    raise ValueError(
      f"H has {len(h.c)} coordinates but {rs.spec} has rank {rs.rank}"
    )
  return sum((n * c for n, c in zip(a.coeffs, h.c)), Fraction(0))


def pairing(rs: RootSystem, a: Root, b: Root) -> Fraction:
  """Returns (a, b) in the symmetrized-Cartan normalization."""
  return rs.pairing(a, b)


class StructureConstants:
  """Chevalley constants N_{a,b} for all signed root pairs.

  chevalley(a, b) is the integer N with |N| = p + 1. m(a, b) is the
  Weyl-normalized 2N/(a+b, a+b), which satisfies m_{a,b} = m_{b,c} = m_{c,a}
  whenever a + b + c = 0. The two agree when all roots have one length.
  """

  def __init__(self, rs: RootSystem, table: Mapping[tuple[Root, Root], int]):
    self.rs = rs
    self._table = dict(table)
    self._m = {
      (a, b): 2 * Fraction(value) / rs.length2(rs.root_add(a, b))
      for (a, b), value in self._table.items()
    }

  def chevalley(self, a: Root, b: Root) -> int:
    return self._table.get((a, b), 0)

  def m(self, a: Root, b: Root) -> Fraction:
    return self._m.get((a, b), Fraction(0))

  def items(self) -> Iterable[tuple[tuple[Root, Root], int]]:
    return self._table.items()

  def __len__(self) -> int:
    return len(self._table)


def _signed_roots(rs: RootSystem) -> list[Root]:
  return list(rs.positive_roots) + [-r for r in rs.positive_roots]


@functools.lru_cache(maxsize=None)
def chevalley_constants(rs: RootSystem) -> StructureConstants:
  """Builds the structure constants by the extraspecial-pair algorithm.

  Positive pairs are fixed by increasing height of their sum. For each sum x
  the extraspecial pair (r0, s0) has r0 minimal in the root order, and
  N_{r0,s0} = p + 1. Every other pair follows from the four-root relation,
  and mixed-sign pairs from the three-root relation.

  Raises:
      RuntimeError: If the table fails its consistency checks.
  """
  positive: dict[tuple[Root, Root], int] = {}

  def n(a: Root, b: Root) -> int:
    total = rs.root_add(a, b)
    if total is None:
      return 0
    if a.is_positive and b.is_positive:
      return positive[(a, b)]
    if not a.is_positive and not b.is_positive:
      return -n(-a, -b)
    if not a.is_positive:
      return -n(b, a)
    if total.is_positive:
      value = rs.length2(total) / rs.length2(a) * -positive[(-b, total)]
    else:
      value = rs.length2(-total) / rs.length2(b) * positive[(-total, a)]
    return _as_int(value, a, b)

  by_sum: dict[Root, list[tuple[Root, Root]]] = defaultdict(list)
  for r, s in itertools.combinations(rs.positive_roots, 2):
    total = rs.root_add(r, s)
    if total is not None:
      by_sum[total].append((r, s))

  for xi in rs.positive_roots:
    pairs = by_sum.get(xi)
    if not pairs:
      continue
    r0, s0 = pairs[0]
    top = rs.string_below(s0, r0) + 1
    positive[(r0, s0)], positive[(s0, r0)] = top, -top
    for r, s in pairs[1:]:
      value = Fraction(0)
      if (d := rs.root_add(s, -r0)) is not None:
        value += Fraction(n(s, -r0) * n(r, -s0)) / rs.length2(d)
      if (d := rs.root_add(r, -r0)) is not None:
        value += Fraction(n(-r0, r) * n(s, -s0)) / rs.length2(d)
      constant = _as_int(rs.length2(xi) / top * value, r, s)
      positive[(r, s)], positive[(s, r)] = constant, -constant

  table = {}
  for a in _signed_roots(rs):
    for b in _signed_roots(rs):
      value = n(a, b)
      if value:
        table[(a, b)] = value

  constants = StructureConstants(rs, table)
  _check_constants(rs, constants)
  logging.info("Built %d structure constants for %s", len(table), rs.spec)
  return constants


def _as_int(value: Fraction, a: Root, b: Root) -> int:
  if Fraction(value).denominator != 1:
    raise RuntimeError(f"Non-integral structure constant {value} at ({a}, {b})")
  return int(value)


def _check_constants(rs: RootSystem, constants: StructureConstants) -> None:
  for (a, b), value in constants.items():
    if constants.chevalley(b, a) != -value:
      raise RuntimeError(f"N is not antisymmetric at ({a}, {b})")
    if constants.chevalley(-a, -b) != -value:
      raise RuntimeError(f"N_(-a,-b) != -N_(a,b) at ({a}, {b})")
    if abs(value) != rs.string_below(b, a) + 1:
      raise RuntimeError(f"|N| != p + 1 at ({a}, {b})")

  if len(rs.positive_roots) > JACOBI_CHECK_LIMIT:
    logging.debug("Skipping the Jacobi check for %s", rs.spec)
    return
  defect = jacobi_defect(rs, constants)
  if defect is not None:
    names = ", ".join(str(x) for x in defect)
    raise RuntimeError(f"Jacobi identity fails on {names} for {rs.spec}")


def coroot(rs: RootSystem, root: Root) -> dict[int, Fraction]:
  """Expands h_root over the simple coroots: n_i (a_i, a_i)/(root, root)."""
  length = rs.length2(root)
  return {
    i: Fraction(n * int(rs.gram[i, i])) / length
    for i, n in enumerate(root.coeffs)
    if n
  }


def _g_bracket(rs, constants, x, y) -> dict:
  """Brackets two Chevalley basis symbols ("e", root) / ("h", i) of g."""
  (x_kind, x_val), (y_kind, y_val) = x, y
  if x_kind == "h" and y_kind == "h":
    return {}
  if x_kind == "h":
    simple = rs.simple_roots[x_val]
    return {y: Fraction(rs.cartan_integer(y_val, simple))}
  if y_kind == "h":
    swapped = _g_bracket(rs, constants, y, x)
    return {key: -value for key, value in swapped.items()}
  if x_val == -y_val:
    return {("h", i): value for i, value in coroot(rs, x_val).items()}
  value = constants.chevalley(x_val, y_val)
  if not value:
    return {}
  return {("e", rs.root_add(x_val, y_val)): Fraction(value)}


def _g_bracket_combo(rs, constants, x: dict, y: dict) -> dict:
  out: dict = defaultdict(Fraction)
  for xs, xc in x.items():
    for ys, yc in y.items():
      for key, value in _g_bracket(rs, constants, xs, ys).items():
        out[key] += xc * yc * value
  return {key: value for key, value in out.items() if value}


def jacobi_defect(rs: RootSystem, constants: StructureConstants):
  """Returns the first basis triple of g violating Jacobi, or None."""
  basis = [("h", i) for i in range(rs.rank)]
  basis += [("e", root) for root in _signed_roots(rs)]
  for x, y, z in itertools.combinations(basis, 3):
    total: dict = defaultdict(Fraction)
    for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
      inner = _g_bracket(rs, constants, q, r)
      for key, value in _g_bracket_combo(rs, constants, {p: 1}, inner).items():
        total[key] += value
    if any(total.values()):
      return (x, y, z)
  return None


class LieAlgebra:
  """The compact form u with exact brackets on its A/S/iH basis.

  Elements are normalized over positive roots using A_-g = -A_g, S_-g = S_g,
  and iH symbols are kept over the simple coroots, so equal elements have
  equal coefficients.

  Attributes:
      rs: The root system.
      constants: The Chevalley structure constants.
  """

  def __init__(
    self, rs: RootSystem, constants: StructureConstants | None = None
  ) -> None:
    self.rs = rs
    self.constants = constants or chevalley_constants(rs)
    self._brackets: dict[tuple[Symbol, Symbol], tuple] = {}
    self._simple_index = {root: i for i, root in enumerate(rs.simple_roots)}

  def _signed_terms(
    self, kind: Kind, root: Root, scale: Fraction
  ) -> list[tuple[Symbol, Fraction]]:
    if kind is Kind.H:
      return [
        (Symbol(Kind.H, self.rs.simple_roots[i]), 2 * scale * value)
        for i, value in coroot(self.rs, root).items()
      ]
    if root.is_positive:
      return [(Symbol(kind, root), scale)]
    sign = -1 if kind is Kind.A else 1
    return [(Symbol(kind, -root), sign * scale)]

  def basis(self, kind: Kind, root: Root) -> UElement:
    """Returns A_root or S_root (normalized), or i·h_root for Kind.H."""
    scale = Fraction(1, 2) if kind is Kind.H else Fraction(1)
    return UElement(self._signed_terms(kind, root, scale))

  def basis_bracket(self, x: Symbol, y: Symbol) -> tuple:
    """Returns [x, y] for two basis symbols as (Symbol, Fraction) pairs."""
    key = (x, y)
    if key not in self._brackets:
      self._brackets[key] = tuple(self._basis_bracket(x, y))
    return self._brackets[key]

  def _basis_bracket(self, x: Symbol, y: Symbol) -> list:
    if x.kind is Kind.H and y.kind is Kind.H:
      return []
    if x.kind is Kind.H:
      k = self.rs.cartan_integer(y.root, x.root)
      if y.kind is Kind.A:
        return [(Symbol(Kind.S, y.root), Fraction(k))]
      return [(Symbol(Kind.A, y.root), Fraction(-k))]
    if y.kind is Kind.H or (x.kind is Kind.S and y.kind is Kind.A):
      return [(symbol, -value) for symbol, value in self.basis_bracket(y, x)]

    a, b = x.root, y.root
    n = self.constants.chevalley
    if x.kind is Kind.A and y.kind is Kind.S and a == b:
      return self._signed_terms(Kind.H, a, Fraction(1))
    if a == b:
      return []
    if x.kind is Kind.A and y.kind is Kind.A:
      terms = [(Kind.A, 1, n(a, b)), (Kind.A, -1, n(-a, b))]
    elif x.kind is Kind.S:
      terms = [(Kind.A, 1, -n(a, b)), (Kind.A, -1, -n(a, -b))]
    else:
      terms = [(Kind.S, 1, n(a, b)), (Kind.S, -1, n(a, -b))]

    out = []
    for kind, sign, value in terms:
      if value:
        root = Root(tuple(p + sign * q for p, q in zip(a.coeffs, b.coeffs)))
        out.extend(self._signed_terms(kind, root, Fraction(value)))
    return out

  def bracket_u(self, x: UElement, y: UElement) -> UElement:
    """Returns [x, y], extended bilinearly from the basis table."""
    terms = []
    for xs, xc in x.items():
      for ys, yc in y.items():
        coeff = xc * yc
        for symbol, value in self.basis_bracket(xs, ys):
          terms.append((symbol, coeff * value))
    return UElement(terms)

  def killing_H(self, h: RegularElement, x: UElement) -> GaussianRational:
    """Returns <H, x>; only the iH part contributes.

    For x = i·h_g this is i·2g(H)/(g, g), which is i·g(H) on roots of squared
    length 2.
    """
    total = ZERO
    for symbol, coeff in x.items():
      if symbol.kind is Kind.H:
        total += coeff * self._h_weight(h, symbol.root)
    return total

  def _h_weight(self, h: RegularElement, simple: Root) -> GaussianRational:
    i = self._simple_index[simple]
    return I * (2 * h.c[i] / int(self.rs.gram[i, i]))

  def killing_bracket(
    self, h: RegularElement, y: Symbol, z: UElement
  ) -> GaussianRational:
    """Returns killing_H(h, [y, z]) for a basis symbol y of kind A or S.

    Only the terms of z at the root of y can produce an iH component.
    """
    total = ZERO
    for symbol, coeff in z.items():
      if symbol.kind is Kind.H or symbol.root != y.root:
        continue
      for target, value in self.basis_bracket(y, symbol):
        total += coeff * value * self._h_weight(h, target.root)
    return total
