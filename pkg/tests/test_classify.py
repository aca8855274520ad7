"""Tests for the theorem-level classifier and the Θ constructions."""

import itertools
from fractions import Fraction

from absl.testing import absltest, parameterized

from flagj import classify, nijenhuis
from flagj.gacs import ComplexJ, NonComplexJ, Structure, random_structure
from flagj.liealg import LieAlgebra

import testing_utils

J = ComplexJ(1)
MINUS_J = ComplexJ(-1)
N = NonComplexJ.from_ax(1, 2)


class TripleStatusTest(parameterized.TestCase):

  @parameterized.named_parameters(
    ("all_complex_equal", J, J, J, True),
    ("all_complex_mixed", J, MINUS_J, J, True),
    ("all_complex_mixed_sum", MINUS_J, J, MINUS_J, True),
    ("all_complex_clash", J, J, MINUS_J, False),
    ("all_complex_clash_negative", MINUS_J, MINUS_J, J, False),
    ("sum_noncomplex_ok", J, MINUS_J, N, True),
    ("sum_noncomplex_clash", J, J, N, False),
    ("first_noncomplex_ok", N, MINUS_J, MINUS_J, True),
    ("first_noncomplex_clash", N, J, MINUS_J, False),
    ("second_noncomplex_ok", J, N, J, True),
    ("second_noncomplex_clash", MINUS_J, N, J, False),
    ("two_noncomplex", N, N, J, False),
    ("two_noncomplex_sum", J, N, N, False),
  )
  def test_decision_table(self, ja, jb, jab, integrable):
    self.assertEqual(classify.triple_status(ja, jb, jab).integrable, integrable)

  def test_noncomplex_system(self):
    ja = NonComplexJ.from_ax(1, 1)
    jb = NonComplexJ.from_ax(1, 2)
    ok = classify.triple_status(ja, jb, NonComplexJ.from_ax(1, Fraction(2, 3)))
    self.assertTrue(ok.integrable)
    self.assertEqual(ok.reason, classify.Reason.SYSTEM_SATISFIED)
    self.assertEqual(ok.residuals, (0, 0))

    bad = classify.triple_status(ja, jb, NonComplexJ.from_ax(1, 1))
    self.assertFalse(bad.integrable)
    self.assertEqual(bad.reason, classify.Reason.SYSTEM_VIOLATED)
    self.assertEqual(bad.residuals, (-1, -1))
    self.assertEqual(
      bad.to_dict(),
      {
        "status": "obstructed",
        "reason": "system-violated",
        "residuals": ["-1", "-1"],
      },
    )

  def test_invalid_block(self):
    with self.assertRaises(ValueError):
      classify.triple_status(J, J, NonComplexJ(1, 1, 1))


class IsIntegrableTest(parameterized.TestCase):

  def test_a2_sign_table(self):
    rs = testing_utils.root_system("A2")
    algebra = LieAlgebra(rs)
    obstructed = []
    for signs in itertools.product((1, -1), repeat=3):
      s = Structure(
        {r: ComplexJ(sign) for r, sign in zip(rs.positive_roots, signs)}
      )
      result = classify.is_integrable(s, rs)
      oracle = nijenhuis.is_integrable_bruteforce(s, algebra)
      self.assertEqual(result.integrable, oracle.integrable, msg=signs)
      if not result.integrable:
        obstructed.append(signs)
    self.assertEqual(obstructed, [(1, 1, -1), (-1, -1, 1)])

  def test_failures(self):
    rs = testing_utils.root_system("A3")
    s = Structure.uniform(rs, J).replace(rs.parse_root("a1+a2"), MINUS_J)
    result = classify.is_integrable(s, rs)
    self.assertFalse(result.integrable)
    self.assertEqual([t.name for t, _ in result.failures], ["a1|a2|a1+a2"])
    self.assertLen(result.verdicts, 4)

  def test_worked_example(self):
    rs, s = testing_utils.worked_example()
    result = classify.is_integrable(s, rs)
    self.assertFalse(result.integrable)
    (_, verdict), = result.failures
    self.assertEqual(verdict.residuals[1], -1)

  def test_invalid_structure(self):
    rs = testing_utils.root_system("A2")
    with self.assertRaises(ValueError):
      classify.is_integrable(Structure({rs.simple_roots[0]: J}), rs)


class OracleAgreementTest(parameterized.TestCase):
  """The decision table agrees with exhaustive evaluation of Nij on L."""

  @parameterized.parameters(("A2", 500), ("A3", 500), ("B2", 500), ("G2", 500))
  def test_random_structures(self, name, samples):
    rs = testing_utils.root_system(name)
    algebra = LieAlgebra(rs)
    rng = testing_utils.rng(10)
    for i in range(samples):
      if i % 5 == 0:
        s = testing_utils.random_integrable(rs, rng)
      else:
        s = random_structure(rs, rng)
      expected = classify.is_integrable(s, rs).integrable
      oracle = nijenhuis.is_integrable_bruteforce(s, algebra)
      self.assertEqual(expected, oracle.integrable, msg=repr(s))

  @parameterized.parameters("A2", "B2", "A3")
  def test_every_type_pattern(self, name):
    rs = testing_utils.root_system(name)
    algebra = LieAlgebra(rs)
    choices = (J, MINUS_J, None)
    for pattern in itertools.product(choices, repeat=len(rs.positive_roots)):
      blocks = {}
      for root, block in zip(rs.positive_roots, pattern):
        if block is None:
          block = NonComplexJ.from_ax(rs.index(root), rs.index(root) + 2)
        blocks[root] = block
      s = Structure(blocks)
      expected = classify.is_integrable(s, rs).integrable
      oracle = nijenhuis.is_integrable_bruteforce(s, algebra)
      self.assertEqual(expected, oracle.integrable, msg=repr(s))


class PositiveSystemTest(parameterized.TestCase):

  def test_uniform(self):
    rs = testing_utils.root_system("A3")
    self.assertEqual(
      classify.positive_system(Structure.uniform(rs, J), rs),
      rs.positive_roots,
    )
    self.assertEqual(
      classify.positive_system(Structure.uniform(rs, MINUS_J), rs),
      tuple(-r for r in rs.positive_roots),
    )

  def test_negative_x(self):
    rs = testing_utils.root_system("A2")
    a1, a2, a12 = rs.positive_roots
    s = classify.construct_from_theta(rs, [a1, a2], {a1: (0, -1), a2: (0, 2)})
    self.assertEqual(s[a12].x, -2)
    self.assertEqual(classify.positive_system(s, rs), (-a1, a2, -a12))
    theta = classify.extract_theta(s, rs)
    self.assertEqual(theta.simple_system, (a2, -a12))
    self.assertEqual(theta.theta, (a2, -a12))
    self.assertEqual(theta.noncomplex_set, frozenset(rs.positive_roots))

  @parameterized.parameters("A2", "A3", "B3", "G2")
  def test_closed_on_random_integrable(self, name):
    rs = testing_utils.root_system(name)
    rng = testing_utils.rng(20)
    for _ in range(200):
      s = testing_utils.random_integrable(rs, rng)
      self.assertTrue(rs.check_positive_system(classify.positive_system(s, rs)))

  def test_rejects_obstructed(self):
    rs, s = testing_utils.worked_example()
    with self.assertRaises(ValueError):
      classify.positive_system(s, rs)
    with self.assertRaises(ValueError):
      classify.extract_theta(s, rs)


class ExtractThetaTest(parameterized.TestCase):

  def test_all_complex(self):
    rs = testing_utils.root_system("A3")
    data = classify.extract_theta(Structure.uniform(rs, J), rs)
    self.assertEqual(data.theta, ())
    self.assertEqual(data.noncomplex_set, frozenset())
    self.assertEqual(data.simple_system, rs.simple_roots)

  def test_partial(self):
    rs = testing_utils.root_system("A3")
    a1, a2, a3 = rs.simple_roots
    s = classify.construct_from_theta(
      rs, [a1, a2], {a1: (0, 1), a2: (1, 3)}
    )
    data = classify.extract_theta(s, rs)
    self.assertEqual(data.theta, (a1, a2))
    self.assertEqual(
      data.to_dict(),
      {
        "theta": ["a1", "a2"],
        "noncomplex": ["a1", "a2", "a1+a2"],
        "simple_system": ["a1", "a2", "a3"],
      },
    )

  @parameterized.parameters("A3", "B3", "C3", "G2")
  def test_inverts_construction(self, name):
    rs = testing_utils.root_system(name)
    rng = testing_utils.rng(30)
    for _ in range(30):
      theta = tuple(r for r in rs.simple_roots if rng.random() < 0.5)
      seeds = testing_utils.random_seeds(theta, rng, positive=True)
      s = classify.construct_from_theta(rs, theta, seeds)
      data = classify.extract_theta(s, rs)
      self.assertEqual(data.theta, theta)
      self.assertEqual(data.noncomplex_set, rs.theta_closure(theta))


class ConstructionTest(parameterized.TestCase):

  def test_a3_closed_form(self):
    rs = testing_utils.root_system("A3")
    a1, a2, a3 = rs.simple_roots
    seeds = {a1: (1, 1), a2: (2, 2), a3: (5, 3)}
    s = classify.construct_from_theta(rs, rs.simple_roots, seeds)
    top = s[rs.highest_root]
    self.assertEqual(top.x, Fraction(6, 11))
    self.assertEqual(top.a, 2)

  def test_a3_unit_seeds(self):
    rs = testing_utils.root_system("A3")
    seeds = {r: (0, 1) for r in rs.simple_roots}
    s = classify.construct_from_theta(rs, rs.simple_roots, seeds)
    self.assertEqual(s[rs.highest_root].x, Fraction(1, 3))
    self.assertEqual(s[rs.highest_root].a, 0)
    self.assertEqual(s[rs.parse_root("a1+a2")].x, Fraction(1, 2))
    self.assertTrue(classify.is_integrable(s, rs).integrable)

  def test_empty_theta(self):
    rs = testing_utils.root_system("B2")
    s = classify.construct_from_theta(rs, [], {})
    self.assertEqual(s, Structure.uniform(rs, J))

  def test_signs(self):
    rs = testing_utils.root_system("A3")
    a1, a2, a3 = rs.simple_roots
    s = classify.construct_from_theta(
      rs, [a1], {a1: (0, 1)}, {a3: -1}
    )
    self.assertEqual(s[a3], MINUS_J)
    self.assertEqual(s[a2], J)

  def test_inadmissible_signs(self):
    rs = testing_utils.root_system("A3")
    with self.assertRaisesRegex(
      classify.InfeasibleError, r"a1\|a2\|a1\+a2"
    ):
      classify.construct_from_theta(
        rs, [], {}, {rs.parse_root("a1+a2"): -1}
      )

  def test_vanishing_denominator(self):
    rs = testing_utils.root_system("A2")
    a1, a2, _ = rs.positive_roots
    seeds = {a1: (0, 1), a2: (0, -1)}
    with self.assertRaisesRegex(classify.InfeasibleError, "a1\\+a2"):
      classify.construct_from_theta(rs, [a1, a2], seeds)
    with self.assertRaisesRegex(classify.InfeasibleError, "a1\\+a2"):
      classify.propagate(rs, seeds)

  def test_malformed_input(self):
    rs = testing_utils.root_system("A3")
    a1, a2, _ = rs.simple_roots
    cases = [
      ([a1, a2], {a1: (0, 1)}, None),
      ([a1], {a1: (0, 0)}, None),
      ([rs.parse_root("a1+a2")], {}, None),
      ([a1], {a1: (0, 1)}, {a1: -1}),
      ([a1], {a1: (0, 1)}, {a2: 2}),
    ]
    for theta, seeds, signs in cases:
      with self.assertRaises(ValueError) as cm:
        classify.construct_from_theta(rs, theta, seeds, signs)
      self.assertNotIsInstance(cm.exception, classify.InfeasibleError)

  @parameterized.parameters("A3", "B3", "C3", "G2")
  def test_propagation_matches_closed_forms(self, name):
    rs = testing_utils.root_system(name)
    rng = testing_utils.rng(40)
    for _ in range(100):
      theta = tuple(r for r in rs.simple_roots if rng.random() < 0.7)
      seeds = testing_utils.random_seeds(theta, rng)
      try:
        expected = classify.construct_from_theta(rs, theta, seeds)
      except classify.InfeasibleError:
        with self.assertRaises(classify.InfeasibleError):
          classify.propagate(rs, seeds, theta)
        continue
      self.assertEqual(classify.propagate(rs, seeds, theta), expected)

  def test_a3_positive_seeds_match_closed_forms(self):
    rs = testing_utils.root_system("A3")
    rng = testing_utils.rng(41)
    for _ in range(100):
      seeds = testing_utils.random_seeds(rs.simple_roots, rng, positive=True)
      expected = classify.construct_from_theta(rs, rs.simple_roots, seeds)
      self.assertEqual(
        classify.propagate(rs, seeds, rs.simple_roots), expected
      )

  @parameterized.parameters("A3", "B3", "G2")
  def test_positive_seeds(self, name):
    rs = testing_utils.root_system(name)
    rng = testing_utils.rng(50)
    for _ in range(30):
      seeds = testing_utils.random_seeds(rs.simple_roots, rng, True)
      s = classify.construct_from_theta(rs, rs.simple_roots, seeds)
      self.assertTrue(all(block.x > 0 for _, block in s.items()))
      self.assertTrue(classify.is_integrable(s, rs).integrable)


if __name__ == "__main__":
  absltest.main()
