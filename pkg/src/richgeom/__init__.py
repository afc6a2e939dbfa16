"""Exact combinatorial geometry of rich transformations of finite point sets."""

from . import arrangement, cuttings, exactgeom, extremal, lemmalab, richmaps
from .arrangement import (
    Arrangement,
    Cell,
    Line,
    ball_profile,
    build_arrangement,
    cell_distance,
    filter_low_ball_cells,
    locate,
    verify_emo,
)
from .cuttings import Cutting, greedy_cutting, grid_cutting, lattice_cutting, verify_cutting
from .errors import GuardExceeded, HypothesisViolated, RichGeomError
from .exactgeom import (
    AffineMap1,
    AffineMap2,
    Isometry2,
    Mobius1,
    RationalMap1,
    TranslationD,
    affine_from_triples,
    canonical_key,
    mobius_from_triples,
    point,
    rational_fit,
)
from .extremal import (
    gen_grid_affine_example,
    gen_noncollinear_affine_example,
    gen_shift_example,
    gen_subspace_example,
    sidon_set,
)
from .lemmalab import (
    TripleSystem,
    average_forcing,
    graph_plane_embed,
    main_theorem_experiment,
    prune_triple_system,
    select_small_triangles,
)
from .richmaps import (
    count_rich_isometries2,
    count_rich_lines,
    count_rich_translations,
    enumerate_rich_affine1,
    enumerate_rich_affine2,
    enumerate_rich_mobius1,
    enumerate_rich_rational1,
    match_set,
)

__version__ = "0.1.0"
