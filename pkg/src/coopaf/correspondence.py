"""Finite grid samples of the abstract game ``<IMP, dominates>`` as frameworks.

A grid over the imputation simplex of a normalized game becomes a
:class:`~coopaf.af.Framework` with one argument per grid point and an attack
wherever one point dominates another. Semantics of that framework only
approximate the continuum solution concepts, so reports assert just the
relations that survive sub-sampling (core points stay unattacked, grounded
contains the unattacked points, the usual family inclusions) and label
everything else as approximate.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

import numpy as np

from . import _kernels
from .af import (
    Framework, arg_members, complete_extensions, grounded, is_well_founded,
    maximal_sets, unattacked,
)
from .config import DEFAULT_CHAIN_LENGTH, ENUM_CAP, NODE_CAP
from .core import core_nonempty, in_core, is_dominated_exact
from .errors import GridTooLarge, InvalidGame, NotNormalized, TooLarge
from .game import (
    Game, canonical_is_convex, check_convex, check_essential, check_nonnegative,
    check_superadditive, is_normalized, to_canonical_three_player,
)
from .imputation import (
    GridSpec, counterexample_point, dominates, grid_size, half_game,
    is_imputation, iter_grid_numerators, verify_descending_chain,
)
from .rational import format_vector


@dataclass(frozen=True)
class GridAF:
    game: Game
    spec: GridSpec
    points: tuple
    framework: Framework
    witnesses: np.ndarray = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.points)

    def witness(self, i: int, j: int) -> int:
        """Smallest coalition through which point ``i`` attacks point ``j`` (0 if none)."""
        return int(self.witnesses[i, j])


def _scaled_values(g: Game, d: int):
    scale = lcm(*(v.denominator for v in g.values))
    rhs = [int(v * scale) * d for v in g.values]
    return scale, rhs


def _witnesses_exact(points, g: Game) -> np.ndarray:
    P = len(points)
    out = np.zeros((P, P), np.int32)
    for i, x in enumerate(points):
        for j, y in enumerate(points):
            C = dominates(x, y, g)
            if C is not None:
                out[i, j] = C
    return out


def _masks_from_bool(rows: np.ndarray) -> tuple:
    packed = np.packbits(rows, axis=1, bitorder="little")
    return tuple(int.from_bytes(r.tobytes(), "little") for r in packed)


def build_grid_af(g: Game, spec: GridSpec, node_cap: int = NODE_CAP) -> GridAF:
    """Grid framework: attack ``(i, j)`` iff grid point ``i`` dominates grid point ``j``."""
    if not is_normalized(g):
        raise NotNormalized("grid frameworks are built over (0,1)-normalized games")
    if not (check_essential(g) and check_superadditive(g) and check_nonnegative(g)):
        raise InvalidGame("grid frameworks need an essential, super-additive, non-negative game")
    d = spec.denominator
    size = grid_size(g.m, d)
    if size > node_cap:
        raise GridTooLarge(f"grid with denominator {d} has {size} points; node cap is {node_cap}")
    nums = list(iter_grid_numerators(g.m, d))
    points = tuple(tuple(Fraction(n, d) for n in row) for row in nums)
    scale, rhs = _scaled_values(g, d)
    if _kernels.fits_int64(scale * d * g.m, *rhs):
        wit = _kernels.witness_matrix(np.array(nums, dtype=np.int64).reshape(size, g.m),
                                      np.array(rhs, dtype=np.int64), scale)
    else:
        wit = _witnesses_exact(points, g)
    fw = Framework(size, _masks_from_bool(wit != 0))
    return GridAF(g, spec, points, fw, wit)


def _members_list(S: int) -> list:
    return list(arg_members(S))


def check_core_vs_unattacked(gaf: GridAF) -> dict:
    """Core grid points must be unattacked; extra unattacked points are grid artifacts.

    Each non-core grid point also gets an explicit dominator over the whole
    simplex, re-verified, whether or not some grid point attacks it.
    """
    g = gaf.game
    core_mask = 0
    verified = True
    grid_dominated_only_off_grid = []
    U = unattacked(gaf.framework)
    for i, x in enumerate(gaf.points):
        if in_core(x, g):
            core_mask |= 1 << i
        else:
            res = is_dominated_exact(x, g)
            if res is None:
                verified = False
            elif U >> i & 1:
                grid_dominated_only_off_grid.append(i)
    return {
        "core_grid_points": _members_list(core_mask),
        "unattacked_grid_points": _members_list(U),
        "spurious_unattacked": _members_list(U & ~core_mask),
        "core_subset_unattacked": core_mask & ~U == 0,
        "continuum_dominators_verified": verified,
        "_core_mask": core_mask,
        "_unattacked_mask": U,
    }


def _internally_stable(S: int, gaf: GridAF) -> bool:
    idx = arg_members(S)
    return not any(dominates(gaf.points[i], gaf.points[j], gaf.game) is not None for i in idx for j in idx)


def _externally_stable(S: int, gaf: GridAF) -> bool:
    idx = arg_members(S)
    for j in range(gaf.size):
        if S >> j & 1:
            continue
        if not any(dominates(gaf.points[i], gaf.points[j], gaf.game) is not None for i in idx):
            return False
    return True


@dataclass
class CorrespondenceReport:
    grid_size: int
    denominator: int
    points: list
    n_attacks: int
    core_grid_points: list
    unattacked_grid_points: list
    spurious_unattacked: list
    grounded_set: list
    complete_extensions: Optional[list]
    preferred_extensions: Optional[list]
    stable_extensions: Optional[list]
    stable_extensions_count: Optional[int]
    is_acyclic: bool
    verdicts: dict
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v for v in self.verdicts.values() if v is not None)

    def to_dict(self) -> dict:
        return {
            "kind": "approximation",
            "grid_size": self.grid_size,
            "denominator": self.denominator,
            "points": self.points,
            "n_attacks": self.n_attacks,
            "core_grid_points": self.core_grid_points,
            "unattacked_grid_points": self.unattacked_grid_points,
            "spurious_unattacked": self.spurious_unattacked,
            "grounded_set": self.grounded_set,
            "complete_extensions": self.complete_extensions,
            "preferred_extensions": self.preferred_extensions,
            "stable_extensions": self.stable_extensions,
            "stable_extensions_count": self.stable_extensions_count,
            "is_acyclic": self.is_acyclic,
            "verdicts": self.verdicts,
            "notes": self.notes,
            "ok": self.ok,
        }

    def to_text(self) -> str:
        lines = [
            f"grid denominator      {self.denominator}",
            f"grid points           {self.grid_size}",
            f"attacks               {self.n_attacks}",
            f"acyclic (reported)    {self.is_acyclic}",
            f"core grid points      {_fmt_idx(self.core_grid_points, self.points)}",
            f"unattacked            {_fmt_idx(self.unattacked_grid_points, self.points)}",
            f"spurious unattacked   {_fmt_idx(self.spurious_unattacked, self.points)}",
            f"grounded              {_fmt_idx(self.grounded_set, self.points)}",
        ]
        if self.stable_extensions_count is not None:
            lines.append(f"complete extensions   {len(self.complete_extensions)}")
            lines.append(f"preferred extensions  {len(self.preferred_extensions)}")
            lines.append(f"stable extensions     {self.stable_extensions_count}")
        lines.append("")
        width = max((len(k) for k in self.verdicts), default=0)
        for name, verdict in self.verdicts.items():
            status = "skipped" if verdict is None else ("PASS" if verdict else "FAIL")
            lines.append(f"  {name:<{width}}  {status}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def _fmt_idx(idx, points) -> str:
    if not idx:
        return "{}"
    return "{" + "; ".join(f"({points[i]})" for i in idx) + "}"


def correspondence_report(gaf: GridAF, enum_cap: int = ENUM_CAP) -> CorrespondenceReport:
    """Full report; extension families are skipped when the grid exceeds ``enum_cap``."""
    fw = gaf.framework
    frag = check_core_vs_unattacked(gaf)
    core_mask, U = frag["_core_mask"], frag["_unattacked_mask"]
    G = grounded(fw)
    verdicts = {
        "no_self_attacks": all(not (fw.targets[a] >> a & 1) for a in range(fw.n_args)),
        "core_subset_unattacked": frag["core_subset_unattacked"],
        "grounded_superset_unattacked": U & ~G == 0,
        "continuum_dominators_verified": frag["continuum_dominators_verified"],
    }
    notes = ["grid semantics approximate the continuum solution concepts; only sound-direction relations are asserted"]
    complete = preferred = stable = None
    if fw.n_args <= enum_cap:
        complete = complete_extensions(fw, enum_cap)
        preferred = maximal_sets(complete)
        stable = [S for S in complete if _neutral(S, fw) == S]
        inter = fw.full
        for S in complete:
            inter &= S
        verdicts["grounded_is_intersection_of_complete"] = G == inter and G in complete
        verdicts["stable_subset_preferred_subset_complete"] = (
            set(stable) <= set(preferred) <= set(complete))
        verdicts["preferred_nonempty"] = len(preferred) > 0
        verdicts["stable_extensions_are_stable_sets"] = all(
            _internally_stable(S, gaf) and _externally_stable(S, gaf) for S in stable)
    else:
        for name in ("grounded_is_intersection_of_complete", "stable_subset_preferred_subset_complete",
                     "preferred_nonempty", "stable_extensions_are_stable_sets"):
            verdicts[name] = None
        notes.append(f"extension enumeration skipped: {fw.n_args} points exceed cap {enum_cap}")
    if check_convex(gaf.game):
        verdicts["convex_core_nonempty"] = core_nonempty(gaf.game).nonempty
        verdicts["convex_stable_contain_core"] = (
            None if stable is None else all(core_mask & ~S == 0 for S in stable))
    fam = (lambda F: None if F is None else [_members_list(S) for S in F])
    return CorrespondenceReport(
        grid_size=gaf.size,
        denominator=gaf.spec.denominator,
        points=[format_vector(p) for p in gaf.points],
        n_attacks=fw.n_attacks,
        core_grid_points=frag["core_grid_points"],
        unattacked_grid_points=frag["unattacked_grid_points"],
        spurious_unattacked=frag["spurious_unattacked"],
        grounded_set=_members_list(G),
        complete_extensions=fam(complete),
        preferred_extensions=fam(preferred),
        stable_extensions=fam(stable),
        stable_extensions_count=None if stable is None else len(stable),
        is_acyclic=is_well_founded(fw),
        verdicts=verdicts,
        notes=notes,
    )


def _neutral(S: int, fw: Framework) -> int:
    plus = 0
    for a in arg_members(S):
        plus |= fw.targets[a]
    return fw.full & ~plus


def check_semantics_vs_solutions(gaf: GridAF, enum_cap: int = ENUM_CAP) -> CorrespondenceReport:
    if gaf.size > enum_cap:
        raise TooLarge(f"grid framework has {gaf.size} arguments; enumeration cap is {enum_cap}")
    return correspondence_report(gaf, enum_cap)


def grid_acyclicity(gaf: GridAF) -> bool:
    return is_well_founded(gaf.framework)


def check_convexity_not_well_founded(n: int = DEFAULT_CHAIN_LENGTH) -> bool:
    """Convex all-pairs-1/2 game plus an ``n``-step descending domination chain."""
    g = half_game()
    convex = canonical_is_convex(to_canonical_three_player(g))
    points_ok = all(is_imputation(counterexample_point(i), g) for i in range(n + 1))
    return convex and points_ok and verify_descending_chain(n)
