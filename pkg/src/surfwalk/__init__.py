"""Bounds on the spectral radius of simple random walks on surface groups."""

__version__ = "0.1.0"

from .ball import Ball, build_ball, check_geometric_proposition, sphere_sizes, vertex_types
from .bounds import (BoundReport, kesten_girth_lower, kesten_lower, one_form_bound, one_form_c,
                     one_relator_bound, tree_bound, verify_one_form)
from .forest import build_forest, count_components, verify_forest
from .poisson import (F, constants, kernel_b, lemma4_check, optimize_nu, poisson_bound, pocket_check,
                      quartic_check, scan_max_phi)
from .walks import closed_walk_counts, dirichlet_top_eigenvalue, return_prob_lower
from .words import (Presentation, canonical_geodesic, dehn_reduce, free_reduce, is_identity,
                    surface_presentation)
