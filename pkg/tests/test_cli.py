"""Tests for the commands, the survey and the JSON reports."""

import json
import pathlib
from unittest import mock

from absl import app
from absl.testing import absltest, flagsaver, parameterized

from flagj import classify, cli, nijenhuis, notes, survey
from flagj.config import RunConfig, load_config
from flagj.liealg import RegularElement
from flagj.reports import EXIT_INPUT_ERROR, EXIT_NEGATIVE, EXIT_OK

import testing_utils

CONFIGS = pathlib.Path(__file__).resolve().parent.parent / "configs"

_WORKED = {
  "algebra": "A2",
  "structure": {
    "blocks": {
      "a1": {"kind": "noncomplex", "a": "1", "x": "1"},
      "a2": {"kind": "noncomplex", "a": "1", "x": "2"},
      "a1+a2": {"kind": "noncomplex", "a": "1", "x": "1"},
    }
  },
}


def _config(name: str) -> RunConfig:
  return load_config(CONFIGS / name)


class CheckTest(absltest.TestCase):

  def test_all_j0(self):
    report = cli.cmd_check(_config("a3_all_j0.json"))
    self.assertEqual(report.exit_code, EXIT_OK)
    self.assertEqual(report.data["theta"], [])
    self.assertEqual(report.data["failures"], [])
    self.assertEqual(
      report.data["positive_system"],
      ["a1", "a2", "a3", "a1+a2", "a2+a3", "a1+a2+a3"],
    )
    self.assertEmpty(report.notes)

  def test_sign_clash(self):
    report = cli.cmd_check(_config("a2_sign_clash.toml"), oracle=True)
    self.assertEqual(report.exit_code, EXIT_NEGATIVE)
    self.assertEqual(report.data["failures"], ["a1|a2|a1+a2"])
    self.assertFalse(report.data["oracle"]["integrable"])
    self.assertIsNotNone(report.data["oracle"]["witness"])

  def test_worked_example(self):
    report = cli.cmd_check(RunConfig.from_dict(_WORKED))
    self.assertEqual(report.exit_code, EXIT_NEGATIVE)
    (triple,) = report.data["triples"]
    self.assertEqual(triple["reason"], "system-violated")
    self.assertEqual(triple["residuals"], ["-1", "-1"])

  def test_other_simple_system(self):
    config = RunConfig.from_dict(
      {
        "algebra": "A2",
        "structure": {
          "blocks": {
            "a1": {"kind": "noncomplex", "a": "0", "x": "-1"},
            "a2": {"kind": "noncomplex", "a": "0", "x": "2"},
            "a1+a2": {"kind": "noncomplex", "a": "0", "x": "-2"},
          }
        },
      }
    )
    report = cli.cmd_check(config, oracle=True)
    self.assertEqual(report.exit_code, EXIT_OK)
    self.assertEqual(report.data["theta"], ["a2", "-(a1+a2)"])
    self.assertEqual(report.data["positive_system"], ["-a1", "a2", "-(a1+a2)"])
    self.assertLen(report.notes, 2)

  def test_needs_structure(self):
    with self.assertRaises(ValueError):
      cli.cmd_check(RunConfig.from_dict({"algebra": "A2"}))


class ConstructTest(absltest.TestCase):

  def test_a3(self):
    report = cli.cmd_construct(_config("a3_construct.json"), oracle=True)
    self.assertEqual(report.exit_code, EXIT_OK)
    self.assertTrue(report.data["integrable"])
    self.assertTrue(report.data["oracle"]["integrable"])
    self.assertEqual(
      report.data["structure"]["blocks"]["a1+a2+a3"],
      {"kind": "noncomplex", "a": "0", "x": "1/3", "y": "3"},
    )

  def test_vanishing_denominator(self):
    config = RunConfig.from_dict(
      {
        "algebra": "A2",
        "theta": ["a1", "a2"],
        "seeds": {"a1": {"a": "0", "x": "1"}, "a2": {"a": "0", "x": "-1"}},
      }
    )
    report = cli.cmd_construct(config)
    self.assertEqual(report.exit_code, EXIT_NEGATIVE)
    self.assertFalse(report.data["constructed"])
    self.assertIn("a1+a2", report.data["reason"])

  def test_inadmissible_signs(self):
    config = RunConfig.from_dict(
      {"algebra": "A2", "theta": [], "signs": {"a1+a2": -1}}
    )
    report = cli.cmd_construct(config)
    self.assertEqual(report.exit_code, EXIT_NEGATIVE)

  def test_malformed_seeds(self):
    config = RunConfig.from_dict({"algebra": "A2", "theta": ["a1"]})
    with self.assertRaises(ValueError):
      cli.cmd_construct(config)


class TwistTest(absltest.TestCase):

  def test_solve_worked_example(self):
    report = cli.cmd_twist(
      _config("a2_twisted_example.json"), solve=True, oracle=True
    )
    self.assertEqual(report.exit_code, EXIT_OK)
    self.assertEqual(report.data["Omega"], {"a1|a2|a1+a2": "-1/24+1/24i"})
    self.assertEqual(
      report.data["omega"],
      {"a1": "-1/12+1/12i", "a2": "-1/24+1/24i", "a1+a2": "-1/12+1/12i"},
    )
    self.assertTrue(report.data["omega_integrable"])
    self.assertIn(notes.PREFACTOR_NOTE, report.notes)
    self.assertEqual(report.data["theta"], ["a1", "a2"])
    self.assertEqual(report.data["noncomplex"], ["a1", "a2", "a1+a2"])
    self.assertEqual(report.data["simple_system"], ["a1", "a2"])

  def test_given_omega(self):
    data = dict(
      _WORKED,
      omega={"a1": "-1/12+1/12i", "a2": "-1/24+1/24i", "a1+a2": "-1/12+1/12i"},
    )
    report = cli.cmd_twist(RunConfig.from_dict(data), oracle=True)
    self.assertEqual(report.exit_code, EXIT_OK)
    self.assertEqual(report.data["failures"], [])

  def test_wrong_omega(self):
    report = cli.cmd_twist(RunConfig.from_dict(dict(_WORKED, omega={})))
    self.assertEqual(report.exit_code, EXIT_NEGATIVE)
    (failure,) = report.data["failures"]
    self.assertEqual(failure["required"], "-1/24+1/24i")
    self.assertNotIn("theta", report.data)

  def test_infeasible(self):
    report = cli.cmd_twist(_config("a2_sign_clash.toml"), solve=True)
    self.assertEqual(report.exit_code, EXIT_NEGATIVE)
    self.assertFalse(report.data["feasible"])
    self.assertEqual(report.data["reason"], notes.INFEASIBLE_REASON)

  def test_construction(self):
    config = RunConfig.from_dict(
      {
        "algebra": "A2",
        "theta": ["a1", "a2"],
        "params": {
          "a1": {"a": "1", "x": "1"},
          "a2": {"a": "1", "x": "2"},
          "a1+a2": {"a": "1", "x": "1"},
        },
      }
    )
    report = cli.cmd_twist(config)
    self.assertTrue(report.data["feasible"])
    self.assertEqual(report.data["Omega"], {"a1|a2|a1+a2": "-1/24+1/24i"})

  def test_needs_omega_or_solve(self):
    with self.assertRaises(ValueError):
      cli.cmd_twist(RunConfig.from_dict(_WORKED))


class SurveyTest(parameterized.TestCase):

  def test_a2(self):
    report = cli.cmd_survey(RunConfig.from_dict({"algebra": "A2"}), True)
    self.assertEqual(
      report.data["thetas"],
      [
        {"theta": "{}", "noncomplex": 0, "patterns": 6, "needs_omega": False},
        {"theta": "{a1}", "noncomplex": 1, "patterns": 2, "needs_omega": False},
        {"theta": "{a2}", "noncomplex": 1, "patterns": 2, "needs_omega": False},
        {
          "theta": "{a1, a2}",
          "noncomplex": 3,
          "patterns": 1,
          "needs_omega": True,
        },
      ],
    )

  def test_oracle_uses_configured_h(self):
    config = RunConfig.from_dict({"algebra": "A2", "H": ["1", "2"]})
    with mock.patch.object(
      nijenhuis,
      "is_integrable_bruteforce",
      wraps=nijenhuis.is_integrable_bruteforce,
    ) as oracle:
      cli.cmd_survey(config, oracle=True)
    self.assertNotEmpty(oracle.call_args_list)
    expected = RegularElement.parse(["1", "2"])
    for call in oracle.call_args_list:
      self.assertEqual(call.args[2], expected)

  def test_admissible_signs_pass_the_oracle(self):
    rs = testing_utils.root_system("B2")
    rows = survey.survey_rows(rs, oracle=True)
    self.assertLen(rows, 4)
    self.assertEqual(rows[0]["theta"], "{}")

  def test_rank_cap(self):
    rs = testing_utils.root_system("A5")
    with self.assertRaisesRegex(ValueError, "rank cap"):
      survey.survey_rows(rs)

  @parameterized.parameters(("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12))
  def test_all_complex_patterns_are_weyl_chambers(self, name, count):
    rs = testing_utils.root_system(name)
    base = classify.construct_from_theta(rs, [], {})
    patterns = list(survey.admissible_signs(rs, base))
    self.assertLen(patterns, count)
    for signs in patterns:
      classify.construct_from_theta(rs, [], {}, signs)


class RootsysTest(absltest.TestCase):

  def test_g2(self):
    report = cli.cmd_rootsys(RunConfig.from_dict({"algebra": "G2"}))
    self.assertLen(report.data["positive_roots"], 6)
    self.assertLen(report.data["triples"], 5)
    self.assertEqual(report.data["positive_roots"][-1]["root"], "3a1+2a2")

  def test_a2_constants(self):
    report = cli.cmd_rootsys(RunConfig.from_dict({"algebra": "A2"}))
    self.assertEqual(
      report.data["triples"], [{"triple": "a1|a2|a1+a2", "N": 1, "m": "1"}]
    )


class MainTest(absltest.TestCase):

  def test_json_report_is_deterministic(self):
    outputs = []
    for name in ("first.json", "second.json"):
      out = self.create_tempfile(name).full_path
      with flagsaver.flagsaver(
        config=str(CONFIGS / "a2_twisted_example.json"), json=out, solve=True
      ):
        self.assertEqual(cli.main(["flagj", "twist"]), EXIT_OK)
      outputs.append(pathlib.Path(out).read_text(encoding="utf-8"))
    self.assertEqual(outputs[0], outputs[1])
    report = json.loads(outputs[0])
    self.assertEqual(list(report)[:3], ["command", "algebra", "exit_code"])
    self.assertEqual(report["Omega"], {"a1|a2|a1+a2": "-1/24+1/24i"})

  def test_exit_codes(self):
    with flagsaver.flagsaver(config=str(CONFIGS / "a2_sign_clash.toml")):
      self.assertEqual(cli.main(["flagj", "check"]), EXIT_NEGATIVE)
    with flagsaver.flagsaver(algebra="A2"):
      self.assertEqual(cli.main(["flagj", "check"]), EXIT_INPUT_ERROR)
    with flagsaver.flagsaver(algebra="Q7"):
      self.assertEqual(cli.main(["flagj", "rootsys"]), EXIT_INPUT_ERROR)
    with flagsaver.flagsaver(algebra="A5", oracle=True):
      self.assertEqual(cli.main(["flagj", "survey"]), EXIT_INPUT_ERROR)

  def test_rank_cap_flag(self):
    with flagsaver.flagsaver(**{"algebra": "A3", "max-rank": 2}):
      self.assertEqual(cli.main(["flagj", "survey"]), EXIT_INPUT_ERROR)

  def test_timing(self):
    out = self.create_tempfile("timed.json").full_path
    with flagsaver.flagsaver(algebra="A2", json=out, timing=True):
      cli.main(["flagj", "rootsys"])
    self.assertIn("timing", json.loads(pathlib.Path(out).read_text()))

  def test_internal_error_is_logged_and_raised(self):
    with (
      flagsaver.flagsaver(algebra="A2"),
      mock.patch.object(
        cli, "run_command", side_effect=RuntimeError("tables disagree")
      ),
      mock.patch.object(cli.logging, "error") as log_error,
    ):
      with self.assertRaisesRegex(RuntimeError, "tables disagree"):
        cli.main(["flagj", "rootsys"])
    log_error.assert_called_once()
    self.assertIn("tables disagree", str(log_error.call_args.args[-1]))

  def test_usage(self):
    with self.assertRaises(app.UsageError) as cm:
      cli.main(["flagj", "classify"])
    self.assertEqual(cm.exception.exitcode, EXIT_INPUT_ERROR)
    with self.assertRaises(app.UsageError):
      cli.main(["flagj"])


if __name__ == "__main__":
  absltest.main()
