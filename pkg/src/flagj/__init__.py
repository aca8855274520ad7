"""Invariant generalized complex structures on maximal flag manifolds.

A structure is one 4x4 block per positive root. The library decides its
integrability and builds integrable ones from a subset Θ of simple roots.
Where untwisted integrability fails, it looks for a closed 3-form Ω that
repairs it. Every computation is exact over Q(i).

The absl command line is `flagj.cli`. It is left out of these imports so
that the library defines no flags.
"""

from . import (
  classify,
  config,
  exact,
  gacs,
  liealg,
  nijenhuis,
  notes,
  reports,
  rootsystem,
  survey,
  twisted,
)
