"""Bass-Serre trees of finite graphs of finite groups.

Finite groups as Cayley tables, graphs of groups and their fundamental groups
in a path-word normal form, the action on the Bass-Serre tree, collapse and
expansion moves with tracked markings, and the canonical equivariant map used
to certify that a strongly slide-free reduced tree is unique in its
deformation space.
"""

from .bass_serre import (
    PathWord,
    TreeVertex,
    act,
    classify_finite_subgroup,
    distance,
    finite_subgroup_classes,
    fixed_set,
    fixed_vertex,
    format_word,
    is_elliptic,
    is_elliptic_subgroup,
    lift,
    normal_form,
    parse_word,
    translation_length,
)
from .dsl import ParseError, dump_gog, load_gog, parse_gog
from .fingroup import FiniteGroup, Mono, Subgroup, cyclic, from_table, make_group, symmetric
from .gog import GraphOfGroups, is_minimal, is_reduced, is_strongly_slide_free
from .marked import Marking, MarkedGraphOfGroups, marked_iso
from .moves import Caps, collapse, enumerate_reduced, expand
from .rigidity import canonical_map, check_tripod, diagnose_fold, verify_unique_ssf
from .treegeom import FiniteTree, check_backtracking, ft_bridge, ft_center, ft_hull, ft_path, ft_projection

__all__ = [
    "Caps", "FiniteGroup", "FiniteTree", "GraphOfGroups", "MarkedGraphOfGroups", "Marking", "Mono",
    "ParseError", "PathWord", "Subgroup", "TreeVertex", "act", "canonical_map", "check_backtracking",
    "check_tripod", "classify_finite_subgroup", "collapse", "cyclic", "diagnose_fold", "distance",
    "dump_gog", "enumerate_reduced", "expand", "finite_subgroup_classes", "fixed_set", "fixed_vertex",
    "format_word", "from_table", "ft_bridge", "ft_center", "ft_hull", "ft_path", "ft_projection",
    "is_elliptic", "is_elliptic_subgroup", "is_minimal", "is_reduced", "is_strongly_slide_free", "lift",
    "load_gog", "make_group", "marked_iso", "normal_form", "parse_gog", "parse_word", "symmetric",
    "translation_length", "verify_unique_ssf",
]
