"""Arithmetic criteria for plane fields and closed leaves on 4-manifolds.

The hot search loop lives in a compiled extension; ``leafforge.search.BACKEND``
tells which kernel was picked at import (``"cython"`` or ``"python"``).
"""
from .bundles import (
    covering_multisection,
    diagonal_cover_sequence,
    factorial_cover_bound,
    gt_l1_convert,
    norm_bound_k,
    pure_multisection_bound,
    section_bound,
    vertical_norm,
)
from .distributions import (
    CharacteristicPair,
    EulerPair,
    ManifoldModel,
    SideConstraint,
    distribution_exists,
    euler_from_pair,
    family_cp2,
    family_product,
    solve_pairs,
    verify_pair,
)
from .documents import load_document, parse_document
from .errors import LeafforgeError, Unsupported
from .lattice import (
    IntersectionForm,
    build_form,
    characteristic_coset,
    is_characteristic,
    pair,
    signature,
    square,
    van_der_blij_check,
)
from .leaves import SurfaceClass, genus_spectrum, milnor_check, realize_leaf
from .quasimorphisms import (
    QmAssignment,
    bavard_bound,
    lantern_reduce,
    phi_closed_form,
    replay_unbound,
)
from .search import BACKEND

__version__ = "0.1.0"
