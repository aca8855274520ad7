# flagj/twisted.py

"""Invariant 2- and 3-forms and integrability twisted by a closed 3-form.

A twisted structure replaces Nij by Nij + Ω(X, Y, Z) on the vector parts.
Triples that are not all non-complex are unaffected by Ω; on all-non-complex
triples Ω must take one prescribed value, and any such Ω is exact.
"""

import dataclasses
import functools
import itertools
from collections.abc import Iterable, Mapping

from absl import logging

from . import nijenhuis
from .classify import (
  Seeds,
  ThetaData,
  signed_selection,
  theta_in_positive_system,
  triple_status,
)
from .exact import (
  ZERO,
  GaussianRational,
  I,
  RationalLike,
  format_gaussian,
  parse_gaussian,
  parse_rational,
)
from .gacs import ComplexJ, NonComplexJ, RootJ, Structure
from .liealg import (
  GeneralizedVector,
  Kind,
  LieAlgebra,
  RegularElement,
  StructureConstants,
  UElement,
  chevalley_constants,
)
from .rootsystem import Root, RootSystem, Triple

# Values of Ω on (slot a, slot b, slot a+b) patterns, in units of Ω(X_a, X_b,
# X_-(a+b)). Every other A/S pattern vanishes.
_AS_PATTERNS = {
  (Kind.A, Kind.A, Kind.S): 2 * I,
  (Kind.A, Kind.S, Kind.A): -2 * I,
  (Kind.S, Kind.A, Kind.A): -2 * I,
  (Kind.S, Kind.S, Kind.S): -2 * I,
}


class InvariantTwoForm:
  """Diagonal values ω_g = ω(X_g, X_-g) of an invariant 2-form."""

  def __init__(
    self, diag: Mapping[Root, GaussianRational | RationalLike] = ()
  ) -> None:
    self._diag = {}
    for root, value in dict(diag).items():
      if not root.is_positive:
        raise ValueError(f"ω is indexed by positive roots, got {root}")
      value = parse_gaussian(value)
      if value:
        self._diag[root] = value

  def __getitem__(self, root: Root) -> GaussianRational:
    return self._diag.get(root, ZERO)

  def __bool__(self) -> bool:
    return bool(self._diag)

  def __eq__(self, other) -> bool:
    if not isinstance(other, InvariantTwoForm):
      return NotImplemented
    return self._diag == other._diag

  def items(self):
    return self._diag.items()

  def to_dict(self) -> dict:
    return {
      str(r): format_gaussian(self._diag[r])
      for r in sorted(self._diag, key=Root.sort_key)
    }

  @classmethod
  def from_dict(cls, rs: RootSystem, data: Mapping) -> "InvariantTwoForm":
    """Reads {"a1": "1/12+-1/12i", ...}.

    Raises:
        ValueError: On unknown roots or malformed values.
    """
    if not isinstance(data, Mapping):
      raise ValueError("ω must be a mapping from root names to values")
    diag = {}
    for name, value in data.items():
      try:
        diag[rs.parse_root(name)] = parse_gaussian(value)
      except ValueError as e:
        raise ValueError(f"Bad ω entry '{name}': {e}") from e
    return cls(diag)

  def __repr__(self) -> str:
    return f"InvariantTwoForm({self.to_dict()})"


class InvariantThreeForm:
  """Values Ω(X_a, X_b, X_-(a+b)) on zero-sum triples, zero if unset."""

  def __init__(self, values: Mapping[Triple, GaussianRational] = ()) -> None:
    self._values = {}
    for t, value in dict(values).items():
      value = parse_gaussian(value)
      if value:
        self._values[t] = value

  @classmethod
  def zero(cls) -> "InvariantThreeForm":
    return cls()

  def __getitem__(self, t: Triple) -> GaussianRational:
    return self._values.get(t, ZERO)

  def __bool__(self) -> bool:
    return bool(self._values)

  def __eq__(self, other) -> bool:
    if not isinstance(other, InvariantThreeForm):
      return NotImplemented
    return self._values == other._values

  def items(self):
    return self._values.items()

  def validate(self, rs: RootSystem) -> None:
    """Raises ValueError if Ω is set on a triple foreign to rs."""
    known = set(rs.zero_sum_triples)
    for t in self._values:
      if t not in known:
        raise ValueError(
          f"Ω is set on {t}, not a zero-sum triple of {rs.spec}"
        )

  def to_dict(self, rs: RootSystem) -> dict:
    """Returns every triple of rs, canonical order, keyed "a1|a2|a1+a2"."""
    return {t.name: format_gaussian(self[t]) for t in rs.zero_sum_triples}

  @classmethod
  def from_dict(cls, rs: RootSystem, data: Mapping) -> "InvariantThreeForm":
    by_name = {t.name: t for t in rs.zero_sum_triples}
    values = {}
    for name, value in data.items():
      if name not in by_name:
        raise ValueError(f"'{name}' is not a canonical triple of {rs.spec}")
      values[by_name[name]] = parse_gaussian(value)
    return cls(values)

  def __repr__(self) -> str:
    body = ", ".join(f"{t}: {format_gaussian(v)}" for t, v in self.items())
    return f"InvariantThreeForm({{{body}}})"


@dataclasses.dataclass(frozen=True)
class OmegaFailure:
  """A triple on which the twisted operator does not vanish on L."""

  triple: Triple
  reason: str
  required: GaussianRational | None = None
  actual: GaussianRational | None = None

  def to_dict(self) -> dict:
    out = {"triple": self.triple.name, "reason": self.reason}
    if self.required is not None:
      out["required"] = format_gaussian(self.required)
      out["actual"] = format_gaussian(self.actual)
    return out


@dataclasses.dataclass(frozen=True)
class OmegaResult:
  ok: bool
  failures: tuple[OmegaFailure, ...]


@dataclasses.dataclass(frozen=True)
class OmegaSolution:
  """A twisting 3-form together with a potential, Ω = dω."""

  three_form: InvariantThreeForm
  two_form: InvariantTwoForm


@dataclasses.dataclass(frozen=True)
class TwistedConstruction:
  structure: Structure
  solution: OmegaSolution


def d_omega(
  omega: InvariantTwoForm, constants: StructureConstants
) -> InvariantThreeForm:
  """Returns dω on every zero-sum triple, m_ab·(ω_a + ω_b - ω_(a+b))."""
  return InvariantThreeForm(
    {
      t: constants.m(t.a, t.b) * (omega[t.a] + omega[t.b] - omega[t.sum])
      for t in constants.rs.zero_sum_triples
    }
  )


def omega_on_AS(
  omega: InvariantThreeForm, t: Triple, pattern: tuple[Kind, Kind, Kind]
) -> GaussianRational:
  """Evaluates Ω on A/S basis vectors placed at (t.a, t.b, t.sum).

  Args:
      omega: The 3-form.
      t: The zero-sum triple.
      pattern: Kind.A or Kind.S for each of the three slots.
  """
  factor = _AS_PATTERNS.get(tuple(pattern))
  if factor is None:
    return ZERO
  return factor * omega[t]


@functools.lru_cache(maxsize=None)
def _triples_by_roots(rs: RootSystem) -> dict[frozenset[Root], Triple]:
  return {frozenset(t.roots): t for t in rs.zero_sum_triples}


def _parity(order: list[int]) -> int:
  inversions = sum(
    1 for i, j in itertools.combinations(range(len(order)), 2)
    if order[i] > order[j]
  )
  return -1 if inversions % 2 else 1


def omega_on_vectors(
  omega: InvariantThreeForm,
  x: UElement,
  y: UElement,
  z: UElement,
  rs: RootSystem,
) -> GaussianRational:
  """Extends Ω trilinearly and alternatingly to A/S combinations."""
  if not (omega and x and y and z):
    return ZERO
  index = _triples_by_roots(rs)
  total = ZERO
  for terms in itertools.product(x.items(), y.items(), z.items()):
    symbols = [symbol for symbol, _ in terms]
    t = index.get(frozenset(symbol.root for symbol in symbols))
    if t is None:
      continue
    roots = [symbol.root for symbol in symbols]
    order = [roots.index(root) for root in t.roots]
    pattern = tuple(symbols[i].kind for i in order)
    coeff = terms[0][1] * terms[1][1] * terms[2][1]
    total += _parity(order) * coeff * omega_on_AS(omega, t, pattern)
  return total


def nij_twisted(
  a: GeneralizedVector,
  b: GeneralizedVector,
  c: GeneralizedVector,
  omega: InvariantThreeForm,
  algebra: LieAlgebra,
  h: RegularElement | None = None,
) -> GaussianRational:
  """Returns Nij(a, b, c) + Ω(a1, b1, c1) over the vector parts."""
  return nijenhuis.nij(a, b, c, algebra, h) + omega_on_vectors(
    omega, a.vector_part(), b.vector_part(), c.vector_part(), algebra.rs
  )


def required_omega(
  ja: NonComplexJ, jb: NonComplexJ, jab: NonComplexJ, m: RationalLike
) -> GaussianRational:
  """The value Ω must take on an all-non-complex triple to vanish on L.

  Ω(X_a, X_b, X_-(a+b)) =
  (m/12)·((a_ab - i)/x_ab - (a_b - i)/x_b - (a_a - i)/x_a).
  """
  total = (
    (jab.a - I) / jab.x - (jb.a - I) / jb.x - (ja.a - I) / ja.x
  )
  return parse_rational(m) / 12 * total


def _all_noncomplex(blocks: Iterable[RootJ]) -> bool:
  return not any(block.is_complex for block in blocks)


def is_omega_integrable(
  s: Structure,
  omega: InvariantThreeForm,
  rs: RootSystem,
  constants: StructureConstants | None = None,
) -> OmegaResult:
  """Decides Ω-integrability triple by triple.

  A triple that is not all non-complex passes iff it passes untwisted. An
  all-non-complex triple passes iff Ω equals `required_omega` there.

  Raises:
      ValueError: If the structure or Ω is invalid.
  """
  s.ensure_valid(rs)
  omega.validate(rs)
  constants = constants or chevalley_constants(rs)
  failures = []
  for t in rs.zero_sum_triples:
    blocks = (s[t.a], s[t.b], s[t.sum])
    if _all_noncomplex(blocks):
      required = required_omega(*blocks, constants.m(t.a, t.b))
      if omega[t] != required:
        failures.append(
          OmegaFailure(t, "omega-mismatch", required, omega[t])
        )
      continue
    verdict = triple_status(*blocks)
    if not verdict.integrable:
      failures.append(OmegaFailure(t, verdict.reason.value))
  return OmegaResult(not failures, tuple(failures))


def solve_omega(
  s: Structure,
  rs: RootSystem,
  constants: StructureConstants | None = None,
) -> OmegaSolution | None:
  """Finds an exact Ω = dω for which s is Ω-integrable, if any exists.

  ω_g = (i - a_g)/(12·x_g) on non-complex roots and 0 elsewhere. Ω = dω
  then matches the required value on every all-non-complex triple; its values
  on other triples do not enter the twisted operator on L.

  Returns:
      The forms, zero when s is already integrable, or None when some
      obstructed triple is not all non-complex.

  Raises:
      ValueError: If the structure is invalid.
  """
  s.ensure_valid(rs)
  constants = constants or chevalley_constants(rs)
  needs_twist = False
  for t in rs.zero_sum_triples:
    blocks = (s[t.a], s[t.b], s[t.sum])
    if _all_noncomplex(blocks):
      needs_twist |= bool(required_omega(*blocks, constants.m(t.a, t.b)))
    elif not triple_status(*blocks).integrable:
      logging.info("No twisting form helps: %s is obstructed", t)
      return None

  if not needs_twist:
    return OmegaSolution(InvariantThreeForm.zero(), InvariantTwoForm())

  two_form = InvariantTwoForm(
    {
      root: (I - block.a) / (12 * block.x)
      for root, block in s.items()
      if not block.is_complex
    }
  )
  return OmegaSolution(d_omega(two_form, constants), two_form)


def construct_twisted(
  rs: RootSystem,
  theta: Iterable[Root],
  params: Seeds,
  constants: StructureConstants | None = None,
) -> TwistedConstruction:
  """Builds a structure non-complex on <Θ>+ with free parameters, twisted.

  Unlike the untwisted construction, every root of <Θ>+ carries its own
  (a, x); J0 is used elsewhere and the twisting form comes from solve_omega.

  Args:
      rs: The root system.
      theta: A subset of the simple roots.
      params: (a, x), x nonzero, for every root of <Θ>+.
      constants: Structure constants; built when omitted.

  Raises:
      ValueError: If params do not cover <Θ>+ exactly or an x is zero.
      RuntimeError: If no twisting form is found.
  """
  closure = rs.theta_closure(theta)
  missing = [
    str(r) for r in sorted(closure, key=Root.sort_key) if r not in params
  ]
  extra = [str(r) for r in params if r not in closure]
  if missing or extra:
    raise ValueError(
      f"Parameters must cover <Θ>+ exactly (missing {missing}, extra {extra})"
    )
  blocks = {}
  for root in rs.positive_roots:
    if root in closure:
      blocks[root] = NonComplexJ.from_ax(*params[root])
    else:
      blocks[root] = ComplexJ()
  s = Structure(blocks)
  solution = solve_omega(s, rs, constants)
  if solution is None:
    raise RuntimeError("Twisted construction produced an obstructed triple")
  return TwistedConstruction(s, solution)


def extract_theta_twisted(
  s: Structure,
  omega: InvariantThreeForm,
  rs: RootSystem,
  constants: StructureConstants | None = None,
) -> ThetaData:
  """Finds Θ for an Ω-integrable structure.

  Triples with exactly two non-complex blocks stay obstructed under any Ω, so
  the non-complex roots still form <Θ>+ for a simple system. Complex roots
  are oriented by their sign. Non-complex roots follow the sign of x unless
  an all-non-complex triple breaks closedness; then all are taken positively.

  Raises:
      ValueError: If s is not Ω-integrable for omega.
      RuntimeError: If neither orientation gives a positive system.
  """
  result = is_omega_integrable(s, omega, rs, constants)
  if not result.ok:
    failure = result.failures[0]
    raise ValueError(
      f"Structure is not Ω-integrable: triple {failure.triple} is "
      f"{failure.reason}"
    )
  for orient in (True, False):
    selection = signed_selection(s, rs, orient_noncomplex=orient)
    if rs.check_positive_system(selection):
      return theta_in_positive_system(s, rs, selection)
    logging.debug("Selection with orient_noncomplex=%s is not closed", orient)
  raise RuntimeError("No positive system fits an Ω-integrable structure")


def is_omega_integrable_bruteforce(
  s: Structure,
  omega: InvariantThreeForm,
  algebra: LieAlgebra,
  h: RegularElement | None = None,
  max_rank: int | None = nijenhuis.DEFAULT_MAX_RANK,
) -> nijenhuis.OracleResult:
  """Decides Ω-integrability by exhaustive vanishing of Nij_Ω on L.

  Raises:
      ValueError: If the inputs are invalid or the rank cap is exceeded.
  """
  s.ensure_valid(algebra.rs)
  omega.validate(algebra.rs)
  nijenhuis.check_rank(algebra, max_rank)
  h = h or RegularElement.default(algebra.rs.rank)
  vectors = nijenhuis.global_eigenbasis(s, algebra)
  witness, checked = nijenhuis.first_nonvanishing(
    vectors,
    lambda a, b, c: nij_twisted(a, b, c, omega, algebra, h),
    desc=f"Twisted oracle on {algebra.rs.spec}",
  )
  return nijenhuis.OracleResult(witness is None, witness, checked)
