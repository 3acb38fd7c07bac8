"""Small-alpha separators, pyramids and tree decompositions for {P6, K2,t}-free graphs."""

__version__ = "0.1.0"

from tinsep.errors import BudgetExhausted, Counterexample, CounterexampleReport, PreconditionError
from tinsep.graph import (
    Graph,
    SeparatorCertificate,
    Weighting,
    components,
    independence_number,
    is_ab_separator,
    is_balanced_separator,
    minimal_separators,
    verify_certificate,
)
from tinsep.formats import from_edgelist, from_graph6, to_edgelist, to_graph6
from tinsep.patterns import (
    AttachedStructure,
    PyramidPresentation,
    StructureKind,
    basic_vertices,
    find_attached_structure,
    find_induced_path,
    find_k2t,
    find_t_pyramid,
    is_simplicial_pyramid,
)
from tinsep.pyramids import (
    SimplicialContext,
    apex_base_separator,
    pyramid_from_paths,
    pyramid_through_separator,
    simplicialize_pyramid,
)
from tinsep.engine import (
    BoundConfig,
    combined_balanced_separator,
    neighborhood_balanced_separator,
    small_alpha_ab_separator,
    tree_alpha_bound,
)
from tinsep.decomposition import (
    TreeDecomposition,
    alpha_width,
    build_from_balanced_separators,
    exact_tree_independence,
    exact_treewidth,
    validate,
)
