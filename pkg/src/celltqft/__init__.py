"""Exact-arithmetic toolkit for 2D topological field theory on cell graphs.

Subpackages cover: Frobenius algebras and their cobordism tensors
(`frobenius`), stock algebras and finite groups (`zoo`, `groups`),
combinatorial cell graphs with edge contractions (`cellgraph`), the
edge-contraction counting recursion and graph evaluation (`eco`), truncated
Laurent series and the topological recursion on local spectral curves
(`series`, `spectral`), and the Catalan quantum-curve pipeline with
intersection numbers and WKB checks (`catalan`, `wkb`, `psioracle`).
"""

from .frobenius import (
    FrobeniusAlgebra,
    ValidationReport,
    CobordismTensor,
    validate,
    pairing_eta,
    eta_matrices,
    comultiply,
    euler_element,
    omega,
    surface_invariant,
    cobordism_tensor,
    sew,
    direct_sum,
    tensor_product,
)
from .zoo import (
    semisimple,
    matrix_algebra,
    group_algebra,
    center_of_group_algebra,
    preset_algebra,
)
from .groups import GroupTable, preset_group, hom_count_oracle

__version__ = "0.1.0"
