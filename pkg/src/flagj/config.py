# flagj/config.py

"""Loads run configurations from JSON or TOML files.

Rationals are written as strings "p/q" and Gaussian rationals as "p/q+r/si",
so no float ever enters a computation.
"""

import dataclasses
import json
import pathlib
import sys
from collections.abc import Mapping
from fractions import Fraction
from typing import Any

if sys.version_info >= (3, 11):
  import tomllib
else:
  import tomli as tomllib

from .exact import parse_rational
from .gacs import Structure
from .liealg import RegularElement
from .rootsystem import AlgebraSpec, Root, RootSystem, build_root_system
from .twisted import InvariantTwoForm

KNOWN_KEYS = (
  "algebra",
  "H",
  "structure",
  "theta",
  "seeds",
  "signs",
  "omega",
  "params",
  "options",
)


class ConfigError(ValueError):
  """A configuration file or value that cannot be used."""


@dataclasses.dataclass(frozen=True)
class RunConfig:
  """A fully resolved run configuration.

  Attributes:
      algebra: The Dynkin type.
      h: The regular element, or None for c_i = 1.
      structure: A total structure on the positive roots.
      theta: Simple roots for the constructions.
      seeds: (a, x) per root of theta.
      signs: ±1 per complex root.
      omega: Diagonal values of a twisting 2-form.
      params: (a, x) per root for the twisted construction.
      options: Free-form command options.
  """

  algebra: AlgebraSpec
  h: RegularElement | None = None
  structure: Structure | None = None
  theta: tuple[Root, ...] | None = None
  seeds: Mapping[Root, tuple[Fraction, Fraction]] | None = None
  signs: Mapping[Root, int] | None = None
  omega: InvariantTwoForm | None = None
  params: Mapping[Root, tuple[Fraction, Fraction]] | None = None
  options: Mapping[str, Any] = dataclasses.field(default_factory=dict)

  @property
  def rs(self) -> RootSystem:
    return build_root_system(self.algebra)

  @classmethod
  def from_dict(
    cls, data: Mapping, algebra: str | None = None
  ) -> "RunConfig":
    """Resolves a raw mapping against its root system.

    Args:
        data: The parsed document.
        algebra: Overrides the document's algebra, e.g. "A3".

    Raises:
        ConfigError: On unknown keys, unknown roots or malformed values.
    """
    if not isinstance(data, Mapping):
      raise ConfigError("A configuration must be a mapping")
    unknown = sorted(set(data) - set(KNOWN_KEYS))
    if unknown:
      raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")

    try:
      source = algebra if algebra is not None else data.get("algebra")
      spec = _read_algebra(source)
      rs = build_root_system(spec)
      fields = {"algebra": spec}
      if "H" in data:
        h = RegularElement.parse(data["H"])
        if len(h.c) != rs.rank:
          raise ValueError(f"H needs {rs.rank} coordinates, got {len(h.c)}")
        fields["h"] = h
      if "structure" in data:
        structure = Structure.from_dict(rs, data["structure"])
        structure.ensure_valid(rs)
        fields["structure"] = structure
      if "theta" in data:
        fields["theta"] = tuple(_read_roots(rs, data["theta"], "theta"))
      if "seeds" in data:
        fields["seeds"] = _read_parameters(rs, data["seeds"], "seeds")
      if "signs" in data:
        fields["signs"] = _read_signs(rs, data["signs"])
      if "omega" in data:
        fields["omega"] = InvariantTwoForm.from_dict(rs, data["omega"])
      if "params" in data:
        fields["params"] = _read_parameters(rs, data["params"], "params")
      if "options" in data:
        if not isinstance(data["options"], Mapping):
          raise ValueError("options must be a mapping")
        fields["options"] = dict(data["options"])
    except ConfigError:
      raise
    except (ValueError, TypeError, KeyError) as e:
      raise ConfigError(f"Invalid configuration: {e}") from e
    return cls(**fields)


def _read_algebra(value: Any) -> AlgebraSpec:
  if value is None:
    raise ConfigError("No algebra given; set 'algebra' or pass --algebra")
  if isinstance(value, str):
    return AlgebraSpec.parse(value)
  if isinstance(value, Mapping):
    return AlgebraSpec(value["family"], value["rank"])
  raise ConfigError(f"Cannot read an algebra from {value!r}")


def _read_roots(rs: RootSystem, names: Any, key: str) -> list[Root]:
  if isinstance(names, str) or not isinstance(names, list):
    raise ValueError(f"{key} must be a list of root names")
  return [rs.parse_root(name) for name in names]


def _read_parameters(
  rs: RootSystem, data: Any, key: str
) -> dict[Root, tuple[Fraction, Fraction]]:
  if not isinstance(data, Mapping):
    raise ValueError(f"{key} must map root names to {{'a': ..., 'x': ...}}")
  values = {}
  for name, entry in data.items():
    if not isinstance(entry, Mapping) or set(entry) != {"a", "x"}:
      raise ValueError(f"{key} entry '{name}' needs exactly 'a' and 'x'")
    values[rs.parse_root(name)] = (
      parse_rational(entry["a"]),
      parse_rational(entry["x"]),
    )
  return values


def _read_signs(rs: RootSystem, data: Any) -> dict[Root, int]:
  if not isinstance(data, Mapping):
    raise ValueError("signs must map root names to +1 or -1")
  signs = {}
  for name, sign in data.items():
    if isinstance(sign, bool) or sign not in (1, -1):
      raise ValueError(f"Sign at '{name}' must be 1 or -1, got {sign!r}")
    signs[rs.parse_root(name)] = int(sign)
  return signs


def read_document(path: str | pathlib.Path) -> dict:
  """Reads a JSON document, or TOML when the suffix is .toml.

  Raises:
      ConfigError: If the file is missing or unparsable.
  """
  path = pathlib.Path(path)
  try:
    if path.suffix == ".toml":
      with path.open("rb") as f:
        return tomllib.load(f)
    with path.open("r", encoding="utf-8") as f:
      return json.load(f)
  except FileNotFoundError as e:
    raise ConfigError(f"Config file not found: {path}") from e
  except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
    raise ConfigError(f"Failed to parse {path}: {e}") from e


def load_config(
  path: str | pathlib.Path | None = None, algebra: str | None = None
) -> RunConfig:
  """Loads and resolves a configuration.

  Args:
      path: JSON or TOML file; optional when `algebra` is given.
      algebra: Overrides the file's algebra.

  Returns:
      The resolved RunConfig.

  Raises:
      ConfigError: On any problem with the file or its values.
  """
  data = read_document(path) if path is not None else {}
  return RunConfig.from_dict(data, algebra=algebra)
