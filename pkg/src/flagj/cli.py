# flagj/cli.py

"""Batch interface: flagj {check,construct,twist,survey,rootsys} [flags].

Exit codes are 0 for a positive verdict, 1 for a negative verdict or an
infeasible construction, and 2 for any input error.
"""

import sys
import time
from collections.abc import Sequence

import pandas as pd
from absl import app, flags, logging

from . import classify, nijenhuis, notes, reports, survey, twisted
from .config import RunConfig, load_config
from .exact import format_rational
from .gacs import Structure
from .liealg import LieAlgebra, chevalley_constants
from .reports import EXIT_INPUT_ERROR, EXIT_NEGATIVE, Report
from .rootsystem import RootSystem

COMMANDS = ("check", "construct", "twist", "survey", "rootsys")

_ALGEBRA = flags.DEFINE_string(
  "algebra", None, "Dynkin type such as A3; overrides the config."
)
_CONFIG = flags.DEFINE_string("config", None, "JSON or TOML run config.")
_ORACLE = flags.DEFINE_bool(
  "oracle", False, "Cross-check every verdict with the brute-force oracle."
)
_SOLVE = flags.DEFINE_bool(
  "solve", False, "twist: find a twisting form instead of checking one."
)
_JSON = flags.DEFINE_string("json", None, "Also write the report as JSON.")
_MAX_RANK = flags.DEFINE_integer(
  "max-rank",
  nijenhuis.DEFAULT_MAX_RANK,
  "Largest rank for brute-force checks and surveys.",
  lower_bound=1,
)
_TIMING = flags.DEFINE_bool(
  "timing", False, "Add elapsed seconds to the report."
)


def _names(roots) -> list[str]:
  return [str(r) for r in roots]


def _require_structure(config: RunConfig, command: str) -> Structure:
  if config.structure is None:
    raise ValueError(f"{command} needs a 'structure' in the config")
  return config.structure


def _oracle_check(
  report: Report,
  config: RunConfig,
  expected: bool,
  result: nijenhuis.OracleResult,
) -> None:
  """Records an oracle run, failing loudly if it disagrees."""
  if result.integrable != expected:
    raise RuntimeError(
      f"Brute-force oracle disagrees on {config.algebra}: classifier says "
      f"{expected}, oracle found witness {result.witness}"
    )
  report.data["oracle"] = {
    "integrable": result.integrable,
    "triples_checked": result.triples_checked,
    "witness": result.witness.to_dict() if result.witness else None,
  }
  report.notes.append(
    notes.ORACLE_AGREES.format(checked=result.triples_checked)
  )


def _report_theta(
  report: Report, rs: RootSystem, theta: classify.ThetaData
) -> None:
  report.data["theta"] = _names(theta.theta)
  report.data["noncomplex"] = theta.to_dict()["noncomplex"]
  report.data["simple_system"] = _names(theta.simple_system)
  if theta.simple_system != rs.simple_roots:
    report.notes.append(
      notes.THETA_NOTE.format(
        simple_system="{" + ", ".join(_names(theta.simple_system)) + "}"
      )
    )


def cmd_check(
  config: RunConfig,
  oracle: bool = False,
  max_rank: int | None = nijenhuis.DEFAULT_MAX_RANK,
) -> Report:
  """Classifies the configured structure, with Θ and P when integrable."""
  s = _require_structure(config, "check")
  rs = config.rs
  result = classify.is_integrable(s, rs)
  report = Report("check", str(config.algebra))
  report.data["integrable"] = result.integrable
  report.data["failures"] = [t.name for t, _ in result.failures]
  report.data["triples"] = [
    {"triple": t.name, **verdict.to_dict()} for t, verdict in result.verdicts
  ]
  report.tables.append(("Triples", reports.verdict_table(s, result)))

  if result.integrable:
    _report_theta(report, rs, classify.extract_theta(s, rs))
    report.data["positive_system"] = _names(classify.positive_system(s, rs))
  else:
    report.exit_code = EXIT_NEGATIVE

  if oracle:
    algebra = LieAlgebra(rs)
    _oracle_check(
      report,
      config,
      result.integrable,
      nijenhuis.is_integrable_bruteforce(s, algebra, config.h, max_rank),
    )
  return report


def cmd_construct(
  config: RunConfig,
  oracle: bool = False,
  max_rank: int | None = nijenhuis.DEFAULT_MAX_RANK,
) -> Report:
  """Builds the structure of Θ and seeds, by closed forms and by induction."""
  if config.theta is None:
    raise ValueError("construct needs 'theta' and 'seeds' in the config")
  rs = config.rs
  seeds = config.seeds or {}
  report = Report("construct", str(config.algebra))
  report.data["theta"] = _names(config.theta)
  try:
    s = classify.construct_from_theta(rs, config.theta, seeds, config.signs)
    propagated = classify.propagate(rs, seeds, config.theta, config.signs)
  except classify.InfeasibleError as e:
    logging.warning("Construction rejected: %s", e)
    report.exit_code = EXIT_NEGATIVE
    report.data["constructed"] = False
    report.data["reason"] = str(e)
    return report
  if propagated != s:
    raise RuntimeError("Height induction disagrees with the closed forms")

  closure = rs.theta_closure(config.theta)
  noncomplex = [r for r in rs.positive_roots if r in closure]
  report.data["constructed"] = True
  report.data["integrable"] = classify.is_integrable(s, rs).integrable
  report.data["noncomplex"] = _names(noncomplex)
  report.data["structure"] = s.to_dict()
  report.tables.append(("Parameters", reports.parameter_table(s, noncomplex)))
  report.tables.append(("Structure", reports.structure_table(s, rs)))

  if oracle:
    _oracle_check(
      report,
      config,
      True,
      nijenhuis.is_integrable_bruteforce(s, LieAlgebra(rs), config.h, max_rank),
    )
  return report


def cmd_twist(
  config: RunConfig,
  solve: bool = False,
  oracle: bool = False,
  max_rank: int | None = nijenhuis.DEFAULT_MAX_RANK,
) -> Report:
  """Checks or synthesizes a twisting form for the configured structure.

  Without a structure, theta and params drive the twisted construction.
  """
  rs = config.rs
  constants = chevalley_constants(rs)
  report = Report("twist", str(config.algebra))

  if config.structure is None:
    if config.theta is None or config.params is None:
      raise ValueError(
        "twist needs a 'structure', or 'theta' with 'params', in the config"
      )
    construction = twisted.construct_twisted(
      rs, config.theta, config.params, constants
    )
    s = construction.structure
    solution = construction.solution
    report.data["structure"] = s.to_dict()
  elif solve:
    s = config.structure
    solution = twisted.solve_omega(s, rs, constants)
  elif config.omega is not None:
    s = config.structure
    solution = None
  else:
    raise ValueError("twist needs 'omega' in the config, or --solve")

  if config.structure is None or solve:
    if solution is None:
      untwisted = classify.is_integrable(s, rs)
      report.exit_code = EXIT_NEGATIVE
      report.data["feasible"] = False
      report.data["reason"] = notes.INFEASIBLE_REASON
      report.data["failures"] = [t.name for t, _ in untwisted.failures]
      report.tables.append(("Triples", reports.verdict_table(s, untwisted)))
      return report
    three_form = solution.three_form
    report.data["feasible"] = True
    report.data["Omega"] = three_form.to_dict(rs)
    report.data["omega"] = solution.two_form.to_dict()
    report.tables.append(
      ("Twisting form", reports.omega_table(rs, three_form, solution.two_form))
    )
    if three_form:
      report.notes.append(notes.PREFACTOR_NOTE)
      report.notes.append(notes.TWO_FORM_NOTE)
    result = twisted.is_omega_integrable(s, three_form, rs, constants)
    if not result.ok:
      raise RuntimeError("Solved twisting form does not make s Ω-integrable")
  else:
    three_form = twisted.d_omega(config.omega, constants)
    result = twisted.is_omega_integrable(s, three_form, rs, constants)
    report.data["Omega"] = three_form.to_dict(rs)
    report.tables.append(("Twisting form", reports.omega_table(rs, three_form)))
    report.tables.append(("Failures", reports.omega_failure_table(result)))
    if not result.ok:
      report.exit_code = EXIT_NEGATIVE

  report.data["omega_integrable"] = result.ok
  report.data["failures"] = [f.to_dict() for f in result.failures]
  if result.ok:
    _report_theta(
      report,
      rs,
      twisted.extract_theta_twisted(s, three_form, rs, constants),
    )

  if oracle:
    algebra = LieAlgebra(rs, constants)
    _oracle_check(
      report,
      config,
      result.ok,
      twisted.is_omega_integrable_bruteforce(
        s, three_form, algebra, config.h, max_rank
      ),
    )
  return report


def cmd_survey(
  config: RunConfig,
  oracle: bool = False,
  max_rank: int | None = nijenhuis.DEFAULT_MAX_RANK,
) -> Report:
  """Counts admissible sign patterns for every Θ."""
  rs = config.rs
  rows = survey.survey_rows(
    rs, oracle=oracle, max_rank=max_rank, h=config.h
  )
  report = Report("survey", str(config.algebra))
  report.data["thetas"] = rows
  table = pd.DataFrame(rows, columns=survey.COLUMNS)
  report.tables.append(("Θ survey", table))
  report.notes.append(notes.SURVEY_NOTE)
  return report


def cmd_rootsys(config: RunConfig) -> Report:
  """Dumps the positive roots and the constants on every zero-sum triple."""
  rs = config.rs
  constants = chevalley_constants(rs)
  roots = [
    {
      "root": str(r),
      "height": r.height,
      "length2": format_rational(rs.length2(r)),
    }
    for r in rs.positive_roots
  ]
  triples = [
    {
      "triple": t.name,
      "N": constants.chevalley(t.a, t.b),
      "m": format_rational(constants.m(t.a, t.b)),
    }
    for t in rs.zero_sum_triples
  ]
  report = Report("rootsys", str(config.algebra))
  report.data["positive_roots"] = roots
  report.data["triples"] = triples
  report.tables.append(("Positive roots", pd.DataFrame(roots)))
  report.tables.append(("Structure constants", pd.DataFrame(triples)))
  return report


def run_command(
  command: str,
  config: RunConfig,
  oracle: bool = False,
  solve: bool = False,
  max_rank: int | None = nijenhuis.DEFAULT_MAX_RANK,
) -> Report:
  match command:
    case "check":
      return cmd_check(config, oracle, max_rank)
    case "construct":
      return cmd_construct(config, oracle, max_rank)
    case "twist":
      return cmd_twist(config, solve, oracle, max_rank)
    case "survey":
      return cmd_survey(config, oracle, max_rank)
    case "rootsys":
      return cmd_rootsys(config)
    case _:
      raise ValueError(f"Unknown command '{command}'")


def main(argv: Sequence[str]) -> int:
  if len(argv) != 2 or argv[1] not in COMMANDS:
    raise app.UsageError(
      f"Expected exactly one command out of {', '.join(COMMANDS)}",
      exitcode=EXIT_INPUT_ERROR,
    )
  command = argv[1]
  start = time.perf_counter()
  try:
    config = load_config(_CONFIG.value, _ALGEBRA.value)
    report = run_command(
      command,
      config,
      oracle=_ORACLE.value,
      solve=_SOLVE.value,
      max_rank=_MAX_RANK.value,
    )
  except ValueError as e:
    logging.error("%s: %s", command, e)
    return EXIT_INPUT_ERROR
  except RuntimeError as e:
    logging.error("%s: internal inconsistency: %s", command, e)
    raise

  if _TIMING.value:
    report.data["timing"] = {
      "seconds": round(time.perf_counter() - start, 3)
    }
  sys.stdout.write(report.render())
  if _JSON.value:
    report.write_json(_JSON.value)
  logging.info("%s finished with exit code %d", command, report.exit_code)
  return report.exit_code


def parse_flags(argv: list[str]) -> list[str]:
  """Parses flags, exiting with the input-error code on bad flags."""
  try:
    return flags.FLAGS(argv)
  except flags.Error as e:
    sys.stderr.write(f"FATAL Flags parsing error: {e}\n")
    sys.exit(EXIT_INPUT_ERROR)


def run() -> None:
  app.run(main, flags_parser=parse_flags)
