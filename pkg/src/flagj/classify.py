# flagj/classify.py

"""Closed-form integrability of invariant structures.

Only zero-sum triples (a, b, a+b) of positive roots can obstruct, and each
one is decided from its three blocks alone. The integrable structures are
then described by a subset Θ of a simple system: non-complex blocks sit
exactly on <Θ>+, with parameters fixed by the simple-root seeds.
"""

import dataclasses
import math
from collections.abc import Iterable, Mapping
from enum import Enum
from fractions import Fraction

from absl import logging

from .exact import RationalLike, format_rational, parse_rational
from .gacs import ComplexJ, NonComplexJ, RootJ, Structure
from .rootsystem import Root, RootSystem, Triple

Seeds = Mapping[Root, tuple[RationalLike, RationalLike]]


class InfeasibleError(ValueError):
  """Well-formed construction input that admits no integrable structure."""


class Status(str, Enum):
  INTEGRABLE = "integrable"
  OBSTRUCTED = "obstructed"


class Reason(str, Enum):
  """Which row of the decision table a triple falls in."""

  COMPLEX_COMPATIBLE = "complex-signs-compatible"
  COMPLEX_SIGN_CLASH = "complex-sign-clash"
  ONE_NONCOMPLEX_COMPATIBLE = "one-noncomplex-compatible"
  ONE_NONCOMPLEX_CLASH = "one-noncomplex-sign-clash"
  TWO_NONCOMPLEX = "two-noncomplex-one-complex"
  SYSTEM_SATISFIED = "system-satisfied"
  SYSTEM_VIOLATED = "system-violated"


@dataclasses.dataclass(frozen=True)
class TripleVerdict:
  status: Status
  reason: Reason
  residuals: tuple[Fraction, Fraction] | None = None

  @property
  def integrable(self) -> bool:
    return self.status is Status.INTEGRABLE

  def to_dict(self) -> dict:
    out = {"status": self.status.value, "reason": self.reason.value}
    if self.residuals is not None:
      out["residuals"] = [format_rational(r) for r in self.residuals]
    return out


@dataclasses.dataclass(frozen=True)
class ClassificationResult:
  integrable: bool
  verdicts: tuple[tuple[Triple, TripleVerdict], ...]

  @property
  def failures(self) -> list[tuple[Triple, TripleVerdict]]:
    return [(t, v) for t, v in self.verdicts if not v.integrable]


@dataclasses.dataclass(frozen=True)
class ThetaData:
  """Θ, the non-complex roots <Θ>+, and the simple system Θ is drawn from."""

  theta: tuple[Root, ...]
  noncomplex_set: frozenset[Root]
  simple_system: tuple[Root, ...]

  def to_dict(self) -> dict:
    return {
      "theta": [str(r) for r in self.theta],
      "noncomplex": [
        str(r) for r in sorted(self.noncomplex_set, key=Root.sort_key)
      ],
      "simple_system": [str(r) for r in self.simple_system],
    }


def _ensure_valid(*blocks: RootJ) -> None:
  for block in blocks:
    problems = block.violations()
    if problems:
      raise ValueError(f"Invalid block {block}: {'; '.join(problems)}")


def residuals(
  ja: NonComplexJ, jb: NonComplexJ, jab: NonComplexJ
) -> tuple[Fraction, Fraction]:
  """Returns both left-hand sides of the non-complex system.

  The triple is integrable iff
  a_ab x_a x_b - a_b x_a x_ab - a_a x_b x_ab = 0 and
  x_a x_b - x_a x_ab - x_b x_ab = 0.
  """
  first = ja.x * jb.x * jab.a - jb.a * ja.x * jab.x - ja.a * jb.x * jab.x
  second = ja.x * jb.x - ja.x * jab.x - jb.x * jab.x
  return first, second


def triple_status(ja: RootJ, jb: RootJ, jab: RootJ) -> TripleVerdict:
  """Decides a zero-sum triple from its blocks at a, b and a + b.

  Args:
      ja: Block at a.
      jb: Block at b.
      jab: Block at a + b.

  Returns:
      The verdict with its table row, and residuals when all three blocks are
      non-complex.

  Raises:
      ValueError: If a block is invalid.
  """
  _ensure_valid(ja, jb, jab)
  noncomplex = [not j.is_complex for j in (ja, jb, jab)]

  match sum(noncomplex):
    case 0:
      if ja.sign == jb.sign != jab.sign:
        return TripleVerdict(Status.OBSTRUCTED, Reason.COMPLEX_SIGN_CLASH)
      return TripleVerdict(Status.INTEGRABLE, Reason.COMPLEX_COMPATIBLE)
    case 1:
      if noncomplex[2]:
        ok = ja.sign != jb.sign
      elif noncomplex[0]:
        ok = jb.sign == jab.sign
      else:
        ok = ja.sign == jab.sign
      if ok:
        return TripleVerdict(
          Status.INTEGRABLE, Reason.ONE_NONCOMPLEX_COMPATIBLE
        )
      return TripleVerdict(Status.OBSTRUCTED, Reason.ONE_NONCOMPLEX_CLASH)
    case 2:
      return TripleVerdict(Status.OBSTRUCTED, Reason.TWO_NONCOMPLEX)
    case _:
      values = residuals(ja, jb, jab)
      if any(values):
        return TripleVerdict(
          Status.OBSTRUCTED, Reason.SYSTEM_VIOLATED, values
        )
      return TripleVerdict(Status.INTEGRABLE, Reason.SYSTEM_SATISFIED, values)


def is_integrable(s: Structure, rs: RootSystem) -> ClassificationResult:
  """Applies the decision table to every zero-sum triple.

  Raises:
      ValueError: If the structure is invalid.
  """
  s.ensure_valid(rs)
  verdicts = tuple(
    (t, triple_status(s[t.a], s[t.b], s[t.sum])) for t in rs.zero_sum_triples
  )
  ok = all(v.integrable for _, v in verdicts)
  logging.debug(
    "%s structure: %d triples, integrable=%s", rs.spec, len(verdicts), ok
  )
  return ClassificationResult(ok, verdicts)


def _require_integrable(s: Structure, rs: RootSystem) -> None:
  result = is_integrable(s, rs)
  if not result.integrable:
    triple, verdict = result.failures[0]
    raise ValueError(
      f"Structure is not integrable: triple {triple} is {verdict.reason.value}"
    )


def _selected_sign(block: RootJ) -> int:
  if block.is_complex:
    return block.sign
  return 1 if block.x > 0 else -1


def signed_selection(
  s: Structure, rs: RootSystem, orient_noncomplex: bool = True
) -> tuple[Root, ...]:
  """Picks +g or -g for every positive root g from the blocks of s.

  Complex blocks follow their sign. Non-complex blocks follow the sign of x,
  or are all taken positively when orient_noncomplex is False.
  """
  def sign(block: RootJ) -> int:
    if not (block.is_complex or orient_noncomplex):
      return 1
    return _selected_sign(block)

  return tuple(
    root if sign(s[root]) > 0 else -root for root in rs.positive_roots
  )


def positive_system(s: Structure, rs: RootSystem) -> tuple[Root, ...]:
  """Returns the positive system P of an integrable structure.

  P holds +g when J_g is J0 or non-complex with x_g > 0, and -g otherwise.

  Raises:
      ValueError: If the structure is not integrable.
      RuntimeError: If P fails to be closed.
  """
  _require_integrable(s, rs)
  selection = signed_selection(s, rs)
  if not rs.check_positive_system(selection):
    raise RuntimeError("Positive system of an integrable structure not closed")
  return selection


def extract_theta(s: Structure, rs: RootSystem) -> ThetaData:
  """Finds Θ with non-complex blocks exactly on <Θ>+.

  Θ is taken inside the simple system of `positive_system(s)`, which is the
  standard one whenever every sign is positive.

  Raises:
      ValueError: If the structure is not integrable.
      RuntimeError: If the non-complex roots are not <Θ>+.
  """
  return theta_in_positive_system(s, rs, positive_system(s, rs))


def theta_in_positive_system(
  s: Structure, rs: RootSystem, selection: tuple[Root, ...]
) -> ThetaData:
  """Reads Θ off the simple system of a closed selection P.

  Raises:
      RuntimeError: If the non-complex roots are not <Θ>+ for that P.
  """
  simple = rs.simple_system_of(selection)
  noncomplex = s.noncomplex_roots()
  theta = tuple(root for root in simple if abs(root) in noncomplex)
  closure = frozenset(
    abs(r) for r in rs.theta_closure(theta, simple_system=simple)
  )
  if closure != noncomplex:
    raise RuntimeError(
      f"Non-complex roots are not <Θ>+ for "
      f"Θ = {[str(r) for r in theta]}"
    )
  return ThetaData(theta, noncomplex, simple)


def _check_theta(rs: RootSystem, theta: Iterable[Root]) -> tuple[Root, ...]:
  theta = tuple(sorted(set(theta), key=Root.sort_key))
  for root in theta:
    if root not in rs.simple_roots:
      raise ValueError(f"Θ must consist of simple roots, got {root}")
  return theta


def _check_seeds(
  theta: tuple[Root, ...], seeds: Seeds
) -> dict[Root, tuple[Fraction, Fraction]]:
  missing = [str(r) for r in theta if r not in seeds]
  extra = [str(r) for r in seeds if r not in theta]
  if missing or extra:
    raise ValueError(
      f"Seeds must cover Θ exactly (missing {missing}, extra {extra})"
    )
  checked = {}
  for root in theta:
    a, x = (parse_rational(v) for v in seeds[root])
    if not x:
      raise ValueError(f"Seed x at {root} must be nonzero")
    checked[root] = (a, x)
  return checked


def _check_signs(
  rs: RootSystem, closure: frozenset[Root], signs: Mapping[Root, int] | None
) -> dict[Root, int]:
  signs = dict(signs or {})
  for root, sign in signs.items():
    if root in closure or root not in rs.positive_roots:
      raise ValueError(f"Sign given at {root}, which is not a complex root")
    if sign not in (1, -1):
      raise ValueError(f"Sign at {root} must be +1 or -1, got {sign!r}")
  return signs


def closed_form(
  root: Root, rs: RootSystem, seeds: Mapping[Root, tuple[Fraction, Fraction]]
) -> tuple[Fraction, Fraction]:
  """Returns (a_g, x_g) for g = sum n_i a_i from the simple-root seeds.

  With P = prod x_i^n_i and D = sum_i n_i P/x_i,
  x_g = P/D and a_g = (sum_i a_i n_i P/x_i)/D.

  Raises:
      InfeasibleError: If D vanishes, naming the root.
  """
  support = [
    (n, seeds[simple])
    for n, simple in zip(root.coeffs, rs.simple_roots)
    if n
  ]
  xs = [x for _, (_, x) in support]
  product = math.prod(x**n for n, (_, x) in support)
  partials = []
  for i, (n, (a, x)) in enumerate(support):
    others = math.prod(
      xs[j] ** m for j, (m, _) in enumerate(support) if j != i
    )
    partials.append((n, a, n * x ** (n - 1) * others))
  denominator = sum(term for _, _, term in partials)
  if not denominator:
    raise InfeasibleError(f"Propagation denominator vanishes at root {root}")
  numerator = sum(a * term for _, a, term in partials)
  return numerator / denominator, product / denominator


def _assemble(
  rs: RootSystem,
  values: Mapping[Root, tuple[Fraction, Fraction]],
  signs: Mapping[Root, int],
) -> Structure:
  blocks = {}
  for root in rs.positive_roots:
    if root in values:
      blocks[root] = NonComplexJ.from_ax(*values[root])
    else:
      blocks[root] = ComplexJ(signs.get(root, 1))
  s = Structure(blocks)
  result = is_integrable(s, rs)
  if not result.integrable:
    triple, verdict = result.failures[0]
    raise InfeasibleError(
      f"Sign map is not admissible: triple {triple} is {verdict.reason.value}"
    )
  return s


def construct_from_theta(
  rs: RootSystem,
  theta: Iterable[Root],
  seeds: Seeds,
  signs: Mapping[Root, int] | None = None,
) -> Structure:
  """Builds an integrable structure non-complex exactly on <Θ>+.

  Args:
      rs: The root system.
      theta: A subset of the simple roots.
      seeds: (a, x) for every root in Θ, x nonzero.
      signs: Optional ±1 per complex root; J0 where omitted.

  Returns:
      The structure, with closed-form parameters on <Θ>+.

  Raises:
      InfeasibleError: On a vanishing denominator or a sign map violating the
        decision table.
      ValueError: On malformed theta, seeds or signs.
  """
  theta = _check_theta(rs, theta)
  checked = _check_seeds(theta, seeds)
  closure = rs.theta_closure(theta)
  signs = _check_signs(rs, closure, signs)
  values = {
    root: closed_form(root, rs, checked)
    for root in rs.positive_roots
    if root in closure
  }
  return _assemble(rs, values, signs)


def propagate(
  rs: RootSystem,
  seeds: Seeds,
  theta: Iterable[Root] | None = None,
  signs: Mapping[Root, int] | None = None,
) -> Structure:
  """Builds the same structure as construct_from_theta by height induction.

  Each root of <Θ>+ gets x = x_a x_b/(x_a + x_b) and
  a = (a_b x_a + a_a x_b)/(x_a + x_b) from every decomposition a + b, and
  all decompositions must agree.

  Args:
      rs: The root system.
      seeds: (a, x) on the simple roots of Θ.
      theta: Θ; defaults to the roots the seeds are given on.
      signs: Optional ±1 per complex root.

  Raises:
      InfeasibleError: On a vanishing denominator or inadmissible signs.
      ValueError: On malformed input.
      RuntimeError: If two decompositions disagree.
  """
  theta = _check_theta(rs, seeds.keys() if theta is None else theta)
  values = dict(_check_seeds(theta, seeds))
  closure = rs.theta_closure(theta)
  signs = _check_signs(rs, closure, signs)

  decompositions: dict[Root, list[Triple]] = {}
  for t in rs.zero_sum_triples:
    decompositions.setdefault(t.sum, []).append(t)

  for root in sorted(closure, key=Root.sort_key):
    if root in values:
      continue
    found = None
    for t in decompositions[root]:
      (aa, xa), (ab, xb) = values[t.a], values[t.b]
      denominator = xa + xb
      if not denominator:
        raise InfeasibleError(
          f"Propagation denominator vanishes at root {root} ({t.a} + {t.b})"
        )
      candidate = ((ab * xa + aa * xb) / denominator, xa * xb / denominator)
      if found is None:
        found = candidate
      elif candidate != found:
        raise RuntimeError(f"Decompositions of {root} disagree")
    values[root] = found
  return _assemble(rs, values, signs)
