"""Salvetti 2-complex of the F_C arrangement, its sign-flip quotient and a presentation of pi_1."""

from .arrangement import (
    Arrangement,
    ArrangementError,
    CapacityError,
    Face,
    Flat2,
    Hyperplane,
    build_fc_arrangement,
    enumerate_chambers,
    enumerate_chambers_exhaustive,
    enumerate_codim1_faces,
    enumerate_codim2_faces,
    enumerate_flats2,
    strict_feasible,
)
from .groups import FiniteGroupTable, HomBudgetExceeded, battery, count_homs
from .presentation import (
    SPANNING_COMPLEX,
    TREE,
    computed_presentation,
    fc_epsilon_relations,
    fc_model_presentation,
    presentation_from_complex,
    spanning_cells,
)
from .quotient import QuotientComplex2, build_quotient, verify_free_action
from .salvetti import Complex2, build_salvetti_2_skeleton, galleries, opposite_chamber
from .tietze import tietze_simplify
from .verify import VerificationReport, abelianization, compare_presentations, run_invariant_suite
from .words import GroupPresentation, PresentationError

__version__ = "0.1.0"


def clear_caches() -> None:
    """Forget memoised arrangements, LP results, complexes and quotients."""
    from . import arrangement, quotient, salvetti

    for fn in (
        arrangement.build_fc_arrangement,
        arrangement._strict_feasible,
        arrangement.sweep,
        arrangement._flats2,
        quotient.hyperplane_action,
        quotient.cell_action,
        quotient._build_quotient,
        salvetti.build_salvetti_2_skeleton,
    ):
        fn.cache_clear()
