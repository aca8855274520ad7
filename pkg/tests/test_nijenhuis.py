"""Tests for the Nijenhuis operator and the brute-force oracle."""

import itertools

from absl.testing import absltest, parameterized

from flagj import nijenhuis
from flagj.exact import I, ZERO, GaussianRational
from flagj.gacs import ComplexJ, Structure, random_rational, random_structure
from flagj.liealg import (
  GeneralizedVector,
  Kind,
  LieAlgebra,
  RegularElement,
  chevalley_constants,
)

import testing_utils

_KINDS = (Kind.A, Kind.S, Kind.A_DUAL, Kind.S_DUAL)

# Signs of the nonzero single-dual patterns on (a, b, a+b), written with the
# dual slot replaced by its u-symbol. The same four hold whichever slot is
# dual.
_PATTERN_SIGNS = {
  (Kind.A, Kind.S, Kind.A): 1,
  (Kind.A, Kind.A, Kind.S): -1,
  (Kind.S, Kind.S, Kind.S): 1,
  (Kind.S, Kind.A, Kind.A): 1,
}


def _vec(kind, root):
  return GeneralizedVector.basis(kind, root)


def _expected_values(constants, a, b, total):
  """Nonzero values of nij on basis vectors at (a, b, a+b)."""
  by_dual_slot = {
    2: I * constants.m(a, b) / 6,
    1: -I * constants.m(-total, a) / 6,
    0: -I * constants.m(b, -total) / 6,
  }
  table = {}
  for slot, value in by_dual_slot.items():
    for kinds, sign in _PATTERN_SIGNS.items():
      pattern = list(kinds)
      pattern[slot] = pattern[slot].dual
      table[tuple(pattern)] = sign * value
  return table


def _random_h(rs, generator):
  return RegularElement(
    tuple(
      abs(random_rational(generator, nonzero=True)) for _ in range(rs.rank)
    )
  )


class NijTest(parameterized.TestCase):

  @parameterized.parameters("A2", "A3", "B2", "B3", "G2")
  def test_values_on_zero_sum_triples(self, name):
    rs = testing_utils.root_system(name)
    algebra = LieAlgebra(rs)
    constants = chevalley_constants(rs)
    for t in rs.zero_sum_triples:
      for a, b in ((t.a, t.b), (t.b, t.a)):
        expected = _expected_values(constants, a, b, t.sum)
        self.assertLen(expected, 12)
        for pattern in itertools.product(_KINDS, repeat=3):
          value = nijenhuis.nij(
            *(_vec(k, r) for k, r in zip(pattern, (a, b, t.sum))), algebra
          )
          self.assertEqual(
            value,
            expected.get(pattern, ZERO),
            msg=f"{t.name} at ({a}, {b}): {[k.value for k in pattern]}",
          )

  @parameterized.parameters("A2", "A3", "B2", "B3", "G2")
  def test_first_class_matches_m(self, name):
    rs = testing_utils.root_system(name)
    algebra = LieAlgebra(rs)
    constants = chevalley_constants(rs)
    for t in rs.zero_sum_triples:
      m = constants.m(t.a, t.b)
      self.assertEqual(
        nijenhuis.nij(
          _vec(Kind.A, t.a), _vec(Kind.S, t.b), _vec(Kind.A_DUAL, t.sum),
          algebra,
        ),
        I * m / 6,
        msg=t.name,
      )
      self.assertEqual(
        nijenhuis.nij(
          _vec(Kind.A_DUAL, t.a), _vec(Kind.S, t.b), _vec(Kind.A, t.sum),
          algebra,
        ),
        -I * m / 6,
        msg=t.name,
      )

  @parameterized.parameters("A2", "B2", "G2", "B3")
  def test_vanishes_off_zero_sum_triples(self, name):
    rs = testing_utils.root_system(name)
    algebra = LieAlgebra(rs)
    checked = 0
    for roots in itertools.combinations_with_replacement(
      rs.positive_roots, 3
    ):
      if any(
        rs.root_add(x, y) == z for x, y, z in itertools.permutations(roots)
      ):
        continue
      for pattern in itertools.product(_KINDS, repeat=3):
        vectors = [_vec(k, r) for k, r in zip(pattern, roots)]
        self.assertEqual(
          nijenhuis.nij(*vectors, algebra),
          0,
          msg=f"{[str(r) for r in roots]}: {[k.value for k in pattern]}",
        )
        checked += 1
    self.assertGreater(checked, 0)

  def test_alternating(self):
    rs = testing_utils.root_system("A2")
    algebra = LieAlgebra(rs)
    a1, a2, a12 = rs.positive_roots
    a, b, c = _vec(Kind.A, a1), _vec(Kind.S, a2), _vec(Kind.A_DUAL, a12)
    value = nijenhuis.nij(a, b, c, algebra)
    self.assertEqual(nijenhuis.nij(b, c, a, algebra), value)
    self.assertEqual(nijenhuis.nij(b, a, c, algebra), -value)
    self.assertEqual(nijenhuis.nij(a, a, c, algebra), 0)

  @parameterized.parameters("A3", "B2", "G2")
  def test_independent_of_regular_element(self, name):
    rs = testing_utils.root_system(name)
    algebra = LieAlgebra(rs)
    rng = testing_utils.rng(1)
    elements = [_random_h(rs, rng) for _ in range(5)]
    for _ in range(3):
      s = random_structure(rs, rng)
      vectors = [v for _, v in nijenhuis.global_eigenbasis(s, algebra)]
      for a, b, c in itertools.combinations(vectors, 3):
        expected = nijenhuis.nij(a, b, c, algebra)
        for h in elements:
          self.assertEqual(nijenhuis.nij(a, b, c, algebra, h), expected)


class OracleTest(parameterized.TestCase):

  def test_all_j0_is_integrable(self):
    rs = testing_utils.root_system("A3")
    result = nijenhuis.is_integrable_bruteforce(
      Structure.uniform(rs, ComplexJ()), LieAlgebra(rs)
    )
    self.assertTrue(result.integrable)
    self.assertIsNone(result.witness)
    # 12 eigenvectors, every unordered triple.
    self.assertEqual(result.triples_checked, 220)

  def test_witness(self):
    rs, s = testing_utils.worked_example()
    result = nijenhuis.is_integrable_bruteforce(s, LieAlgebra(rs))
    self.assertFalse(result.integrable)
    self.assertTrue(result.witness.value)
    self.assertLen(result.witness.labels, 3)
    self.assertEqual(
      set(result.witness.to_dict()), {"vectors", "value"}
    )

  def test_scaling_eigenvectors_keeps_verdict(self):
    rs = testing_utils.root_system("A2")
    algebra = LieAlgebra(rs)
    rng = testing_utils.rng(2)
    for _ in range(10):
      s = random_structure(rs, rng)
      vectors = nijenhuis.global_eigenbasis(s, algebra)
      scaled = [
        (
          label,
          GaussianRational(
            random_rational(rng, nonzero=True), random_rational(rng)
          ) * v,
        )
        for label, v in vectors
      ]
      evaluate = lambda a, b, c: nijenhuis.nij(a, b, c, algebra)
      plain, _ = nijenhuis.first_nonvanishing(vectors, evaluate)
      rescaled, _ = nijenhuis.first_nonvanishing(scaled, evaluate)
      self.assertEqual(plain is None, rescaled is None)

  def test_rank_cap(self):
    rs = testing_utils.root_system("A5")
    s = Structure.uniform(rs, ComplexJ())
    with self.assertRaisesRegex(ValueError, "rank cap"):
      nijenhuis.is_integrable_bruteforce(s, LieAlgebra(rs))

  def test_invalid_structure(self):
    rs = testing_utils.root_system("A2")
    s = Structure({rs.simple_roots[0]: ComplexJ()})
    with self.assertRaises(ValueError):
      nijenhuis.is_integrable_bruteforce(s, LieAlgebra(rs))


if __name__ == "__main__":
  absltest.main()
