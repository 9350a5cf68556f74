"""Orbits of the automorphism group of a complete toric variety.

Given a complete fan, classify its torus orbits into Aut0(X)- and
Aut(X)-orbits, compute the orbit closure order, enumerate Demazure roots and
fan symmetries, and recognize products of projective spaces.  All arithmetic
is exact.
"""

from .class_group import ClassElement, ClassGroup, compute_class_group
from .errors import (
    ConeNotInFanError,
    FanValidationError,
    IncompleteFanError,
    NotInDeltaTildeError,
    ToricError,
    UnboundedSystemError,
)
from .fan import (
    Fan,
    b_surface,
    build_fan,
    faces_of,
    fan_properties,
    hirzebruch,
    is_complete,
    make_family,
    point_fan,
    primitive_vector,
    product_fan,
    projective_space,
    weighted_p11s,
)
from .monoid import DivisorMonoid, UpsilonCollection, contains, gamma, monoid_eq, monoid_leq, upsilon
from .orbits import (
    OrbitClass,
    OrbitPoset,
    bfs_oracle_classification,
    classify_aut0,
    closure_poset,
    cone_recognition,
    sigma_max,
)
from .roots import DemazureRoot, RootSet, demazure_roots, hm_connected_pairs, semisimple_roots
from .symmetry import (
    ClassAutomorphism,
    FanSymmetry,
    classify_aut,
    decompose_product,
    fan_symmetries,
    induced_class_map,
    is_transitive,
)

__version__ = "0.1.0"
