"""Exact analysis of TU cooperative games through abstract argumentation."""
__version__ = "0.1.0"

from .af import (
    Framework, argset, arg_members, attacked_by, complete_extensions, defence,
    exhaustive_semantics, grounded, is_admissible, is_conflict_free, is_self_defending,
    is_well_founded, neutrality, preferred_extensions, stable_extensions,
)
from .core import (
    balance_certificate, core_nonempty, core_vertices, in_core, is_balanced,
    is_dominated_exact, supercore_nonempty,
)
from .correspondence import (
    build_grid_af, check_convexity_not_well_founded, check_core_vs_unattacked,
    check_semantics_vs_solutions, correspondence_report, grid_acyclicity,
)
from .errors import (
    ConstructionFailed, CoopAFError, GridTooLarge, InessentialGame, InvalidGame,
    MalformedProblem, NotNormalized, ParseError, TooLarge, WrongPlayerCount,
)
from .game import (
    CanonicalThreePlayer, Game, canonical_game, canonical_is_convex, check_constant_sum,
    check_convex, check_essential, check_monotonic, check_nonnegative, check_superadditive,
    coalition, members, normalize_01, strategically_equivalent, to_canonical_three_player,
)
from .imputation import (
    GridSpec, counterexample_point, dominates, dominates_via, enumerate_grid,
    is_feasible, is_imputation, verify_descending_chain,
)
from .lp import LPProblem, LPResult, solve_lp
