"""persprod: barcodes of product filtrations.

Computes persistent-homology barcodes of categorical (max-indexed) and
tensor (sum-indexed) product filtrations directly from factor barcodes,
validates every formula against a built-in matrix-reduction oracle, and
ships desk-scale sliding-window and torus demonstrations.
"""

from .intervals import (
    INF,
    GradedBarcode,
    Interval,
    IntervalModule,
    barcode_from_json_dict,
    barcode_to_json_dict,
    bar_length,
    intersect,
    shift,
    tensor_modules,
    tor_modules,
)
from .kunneth import (
    categorical_product_barcode,
    count_long_bars,
    rank_invariant,
    rank_product,
    tensor_product_barcode,
    torus_barcode,
    torus_count,
    zeroth_tensor_multi,
)
from .complexes import (
    FilteredComplex,
    categorical_product_complex,
    rips_filtration,
    tensor_product_complex,
)
from .persistence import (
    barcode_of_complex,
    boundary_matrix,
    extract_barcode,
    reduce_matrix,
    rips_barcode,
)
from .metrics import FiniteMetricSpace, covering_radius, max_product, maxmin_landmarks
from .diagrams import Matching, bottleneck, bottleneck_matching, is_delta_matching
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FilteredComplex",
    "FiniteMetricSpace",
    "GradedBarcode",
    "INF",
    "Interval",
    "IntervalModule",
    "Matching",
    "barcode_from_json_dict",
    "barcode_of_complex",
    "barcode_to_json_dict",
    "bar_length",
    "bottleneck",
    "bottleneck_matching",
    "boundary_matrix",
    "categorical_product_barcode",
    "categorical_product_complex",
    "count_long_bars",
    "covering_radius",
    "extract_barcode",
    "intersect",
    "is_delta_matching",
    "max_product",
    "maxmin_landmarks",
    "rank_invariant",
    "rank_product",
    "reduce_matrix",
    "rips_barcode",
    "rips_filtration",
    "shift",
    "tensor_modules",
    "tensor_product_barcode",
    "tensor_product_complex",
    "tor_modules",
    "torus_barcode",
    "torus_count",
    "zeroth_tensor_multi",
]
