"""Virtual complex reflection groups of rank two: presentations,
Reidemeister-Schreier rewriting, coset enumeration and classification."""

from .words import GenId, Word, format_word, gen, invert, parse_word, pi_word, reduce_concat, substitute
from .presentations import (
    ParameterError,
    Presentation,
    TriangleParams,
    VcrgParams,
    center_word,
    delta_word,
    intermediate_presentation,
    j_group,
    render,
    toric_presentation,
    triangle_plus,
    vcrg_presentation,
)
from .cosets import (
    CosetTable,
    EnumerationLimits,
    EnumerationOverflow,
    RegularRepresentation,
    element_order,
    group_order,
    is_central,
    normal_closure_index,
    regular_rep,
    todd_coxeter,
)
from .rewriting import (
    RsSetup,
    balanced_rewrite,
    cyclic_quotient_check,
    rederive_vcrg,
    subgroup_presentation,
    tau_rewrite,
    tietze_simplify,
)
from .abelian import abelianize, smith_normal_form
from .analysis import (
    GenMap,
    canonical_phi,
    canonical_pi,
    check_hom,
    column_swap_map,
    conjugation_word,
    embedding_map,
    hom_count,
    nm_swap_images,
    verify_central_extension,
    verify_conjugacy,
)
from .classification import (
    column_multiset,
    hyperplane_classes,
    is_finite,
    orders_multiset,
    reflection_isomorphic,
    shephard_todd_name,
)

__version__ = "0.1.0"
