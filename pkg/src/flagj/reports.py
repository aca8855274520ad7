# flagj/reports.py

"""Functions for turning results into tables and JSON reports."""

import dataclasses
import json
import pathlib
from collections.abc import Iterable

import pandas as pd

from .classify import ClassificationResult
from .exact import format_gaussian, format_rational
from .gacs import Structure
from .rootsystem import Root, RootSystem
from .twisted import InvariantThreeForm, InvariantTwoForm, OmegaResult

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2


@dataclasses.dataclass
class Report:
  """The outcome of one command.

  Attributes:
      command: The command name.
      algebra: The Dynkin type, e.g. "A3".
      exit_code: 0 on a positive verdict, 1 on a negative one.
      data: JSON-ready results in canonical order.
      tables: Titled tables for the text rendering.
      notes: Free-text remarks appended to both renderings.
  """

  command: str
  algebra: str
  exit_code: int = EXIT_OK
  data: dict = dataclasses.field(default_factory=dict)
  tables: list[tuple[str, pd.DataFrame]] = dataclasses.field(
    default_factory=list
  )
  notes: list[str] = dataclasses.field(default_factory=list)

  def to_dict(self) -> dict:
    out = {
      "command": self.command,
      "algebra": self.algebra,
      "exit_code": self.exit_code,
    }
    out.update(self.data)
    if self.notes:
      out["notes"] = list(self.notes)
    return out

  def to_json(self) -> str:
    return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

  def write_json(self, path: str | pathlib.Path) -> None:
    pathlib.Path(path).write_text(self.to_json(), encoding="utf-8")

  def render(self) -> str:
    """Returns the human-readable form: summary lines, tables, notes."""
    lines = [f"{self.command} on {self.algebra}"]
    for key, value in self.data.items():
      if isinstance(value, (str, int, bool)):
        lines.append(f"  {key}: {value}")
      elif isinstance(value, list) and all(isinstance(v, str) for v in value):
        joined = ", ".join(value)
        lines.append(f"  {key}: {{{joined}}}")
    for title, table in self.tables:
      lines.append("")
      lines.append(f"{title}:")
      if table.empty:
        lines.append("  (none)")
      else:
        lines.append(table.to_string(index=False))
    for note in self.notes:
      lines.append("")
      lines.append(note)
    return "\n".join(lines) + "\n"


def verdict_table(s: Structure, result: ClassificationResult) -> pd.DataFrame:
  """One row per zero-sum triple with its blocks and verdict."""
  rows = []
  for t, verdict in result.verdicts:
    rows.append(
      {
        "triple": t.name,
        "blocks": " ".join(str(s[root]) for root in t.roots),
        "status": verdict.status.value,
        "reason": verdict.reason.value,
        "r1": "",
        "r2": "",
      }
    )
    if verdict.residuals is not None:
      rows[-1]["r1"], rows[-1]["r2"] = map(format_rational, verdict.residuals)
  return pd.DataFrame(
    rows, columns=["triple", "blocks", "status", "reason", "r1", "r2"]
  )


def parameter_table(s: Structure, roots: Iterable[Root]) -> pd.DataFrame:
  """The (a, x, y) parameters of the non-complex blocks among roots."""
  rows = []
  for root in roots:
    block = s[root]
    if block.is_complex:
      continue
    rows.append(
      {
        "root": str(root),
        "a": format_rational(block.a),
        "x": format_rational(block.x),
        "y": format_rational(block.y),
      }
    )
  return pd.DataFrame(rows, columns=["root", "a", "x", "y"])


def structure_table(s: Structure, rs: RootSystem) -> pd.DataFrame:
  return pd.DataFrame(
    [{"root": str(r), "block": str(s[r])} for r in rs.positive_roots],
    columns=["root", "block"],
  )


def omega_table(
  rs: RootSystem,
  three_form: InvariantThreeForm,
  two_form: InvariantTwoForm | None = None,
) -> pd.DataFrame:
  """Ω on every triple, and ω at the triple's roots when known."""
  rows = []
  for t in rs.zero_sum_triples:
    row = {"triple": t.name, "Omega": format_gaussian(three_form[t])}
    if two_form is not None:
      row["omega"] = ", ".join(format_gaussian(two_form[r]) for r in t.roots)
    rows.append(row)
  columns = ["triple", "Omega"] + (["omega"] if two_form is not None else [])
  return pd.DataFrame(rows, columns=columns)


def omega_failure_table(result: OmegaResult) -> pd.DataFrame:
  rows = [failure.to_dict() for failure in result.failures]
  return pd.DataFrame(
    rows, columns=["triple", "reason", "required", "actual"]
  ).fillna("")
