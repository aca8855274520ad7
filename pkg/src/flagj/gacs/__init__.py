# flagj/gacs/__init__.py

"""Exposes the block types and the Structure container."""

from .base import EigenBasis, RootJ, apply_block, b_pairing
from .complex_type import J0, ComplexJ
from .noncomplex_type import NonComplexJ
from .structure import (
  Structure,
  Violation,
  block_from_dict,
  from_matrix4,
  random_block,
  random_rational,
  random_structure,
)
