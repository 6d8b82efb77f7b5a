"""signedkron: exact signed partition calculus over super-spaces.

Core layers:

- ``partitions``: two-row even-block set partitions and their categorical
  operations (tensor, involution, vertical gluing).
- ``superspace``: the (p, q, sign) data, index involution and the signed
  permutation matrix J.
- ``intertwiners``: the signed sparse maps attached to partitions and the
  measured composition scalars.
- ``category``: bounded closure of generator sets and named-class tests.
- ``groups``: the four concrete matrix families with samplers and exact
  Lie-algebra dimensions.
- ``homspace``: exact span ranks versus sampled commutant dimensions.
- ``service`` / ``cli``: a FastAPI wrapper and its thin command-line client.
"""

from .partitions import (Partition, MiddleStats, make_partition,
                         enumerate_partitions, is_noncrossing, tensor,
                         involution, compose, membership_named,
                         named_partition, one_block)
from .superspace import SuperSpace, make_superspace, super_identity
from .intertwiners import (SignedSparseMap, CompositionScalar, delta_alt,
                           block_delta, delta, build_T,
                           measure_composition_scalar, composition_report)
from .category import PartitionCategory, closure, compare_with_class
from .groups import (GroupElement, membership_residual, sample_element,
                     sample_elements, lie_algebra_dimension,
                     gamma_conjugator, enumerate_super_symmetric)
from .homspace import (HomReport, gram_matrix, span_dimension,
                       containment_check, commutant_dimension, hom_report)

__version__ = "0.1.0"

__all__ = [
    "Partition", "MiddleStats", "make_partition", "enumerate_partitions",
    "is_noncrossing", "tensor", "involution", "compose", "membership_named",
    "named_partition", "one_block",
    "SuperSpace", "make_superspace", "super_identity",
    "SignedSparseMap", "CompositionScalar", "delta_alt", "block_delta",
    "delta", "build_T", "measure_composition_scalar", "composition_report",
    "PartitionCategory", "closure", "compare_with_class",
    "GroupElement", "membership_residual", "sample_element",
    "sample_elements", "lie_algebra_dimension", "gamma_conjugator",
    "enumerate_super_symmetric",
    "HomReport", "gram_matrix", "span_dimension", "containment_check",
    "commutant_dimension", "hom_report",
    "__version__",
]
