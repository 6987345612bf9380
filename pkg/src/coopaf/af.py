"""Finite abstract argumentation frameworks and Dung's four semantics.

Arguments are ``0..n-1``; a set of arguments is an ``int`` bitmask. Results
that are families of sets are sorted by cardinality, then by the sorted
member tuple, so output is reproducible.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .config import ENUM_CAP
from .errors import ParseError, TooLarge

ArgSet = int


def arg_members(S: ArgSet) -> tuple:
    """Indices in ``S``, ascending."""
    if S < 0:
        raise ValueError("argument sets are non-negative bitmasks")
    return tuple(i for i, bit in enumerate(reversed(bin(S)[2:])) if bit == "1")


def argset(indices: Iterable[int]) -> ArgSet:
    S = 0
    for i in indices:
        S |= 1 << i
    return S


def _canonical_key(S: ArgSet):
    members = arg_members(S)
    return len(members), members


def sort_family(family: Iterable[ArgSet]) -> list:
    return sorted(set(family), key=_canonical_key)


@dataclass(frozen=True)
class Framework:
    """Directed attack graph.

    ``targets[i]`` is the bitmask of arguments attacked by ``i``;
    ``attackers[i]`` (derived) is the bitmask of arguments attacking ``i``.
    Self-attacks are allowed.
    """

    n_args: int
    targets: tuple
    attackers: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.n_args
        if n < 0:
            raise ValueError("argument count must be non-negative")
        targets = tuple(int(t) for t in self.targets)
        if len(targets) != n:
            raise ValueError(f"expected {n} target masks, got {len(targets)}")
        full = (1 << n) - 1
        inn = [0] * n
        for a, t in enumerate(targets):
            if t < 0 or t & ~full:
                raise ValueError(f"argument {a} attacks indices outside 0..{n - 1}")
            for b in arg_members(t):
                inn[b] |= 1 << a
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "attackers", tuple(inn))

    @classmethod
    def from_attacks(cls, n_args: int, attacks: Iterable[Tuple[int, int]]) -> "Framework":
        out = [0] * n_args
        for a, b in attacks:
            if not (0 <= a < n_args and 0 <= b < n_args):
                raise ValueError(f"attack ({a}, {b}) out of range for {n_args} arguments")
            out[a] |= 1 << b
        return cls(n_args, tuple(out))

    @property
    def full(self) -> ArgSet:
        return (1 << self.n_args) - 1

    @property
    def attacks(self) -> list:
        """Attack pairs ``(attacker, attacked)``, sorted."""
        return [(a, b) for a in range(self.n_args) for b in arg_members(self.targets[a])]

    @property
    def n_attacks(self) -> int:
        return sum(bin(t).count("1") for t in self.targets)


def attacked_by(S: ArgSet, f: Framework) -> ArgSet:
    plus = 0
    for a in arg_members(S):
        plus |= f.targets[a]
    return plus


def attackers_of(S: ArgSet, f: Framework) -> ArgSet:
    minus = 0
    for a in arg_members(S):
        minus |= f.attackers[a]
    return minus


def neutrality(S: ArgSet, f: Framework) -> ArgSet:
    """Arguments not attacked by ``S``."""
    return f.full & ~attacked_by(S, f)


def defence(S: ArgSet, f: Framework) -> ArgSet:
    """Arguments all of whose attackers are attacked by ``S``."""
    plus = attacked_by(S, f)
    return argset(a for a in range(f.n_args) if f.attackers[a] & ~plus == 0)


def unattacked(f: Framework) -> ArgSet:
    return argset(a for a in range(f.n_args) if f.attackers[a] == 0)


def is_conflict_free(S: ArgSet, f: Framework) -> bool:
    return S & attacked_by(S, f) == 0


def is_self_defending(S: ArgSet, f: Framework) -> bool:
    return S & ~defence(S, f) == 0


def is_admissible(S: ArgSet, f: Framework) -> bool:
    return is_conflict_free(S, f) and is_self_defending(S, f)


def is_complete(S: ArgSet, f: Framework) -> bool:
    return is_conflict_free(S, f) and defence(S, f) == S


def is_stable(S: ArgSet, f: Framework) -> bool:
    return neutrality(S, f) == S


def grounded(f: Framework) -> ArgSet:
    """Least fixed point of the defence function, iterated up from the empty set."""
    S = 0
    while True:
        nxt = defence(S, f)
        if nxt == S:
            return S
        S = nxt


# --- labelling search -----------------------------------------------------

def _propagate(f: Framework, IN: int, OUT: int, UND: int) -> Optional[Tuple[int, int, int]]:
    """Forced consequences of a partial complete labelling; None on contradiction."""
    att, tgt, n = f.attackers, f.targets, f.n_args
    changed = True
    while changed:
        changed = False
        labelled = IN | OUT | UND
        for a in range(n):
            bit = 1 << a
            A = att[a]
            if IN & bit:
                must_out = A | tgt[a]
                if must_out & (IN | UND):
                    return None
                if must_out & ~OUT:
                    OUT |= must_out
                    changed = True
            elif OUT & bit:
                if not A & IN:
                    open_ = A & ~labelled
                    if not open_:
                        return None
                    if open_ & (open_ - 1) == 0:
                        # The only attacker still open must carry the IN label.
                        IN |= open_
                        changed = True
                        labelled |= open_
            elif UND & bit:
                if A & IN or not A & ~OUT:
                    return None
            else:
                if A & IN:
                    OUT |= bit
                    changed = True
                elif not A & ~OUT:
                    IN |= bit
                    changed = True
    return IN, OUT, UND


def _labelling_search(f: Framework) -> list:
    results = []
    full = f.full
    stack = [(0, 0, 0)]
    while stack:
        state = _propagate(f, *stack.pop())
        if state is None:
            continue
        IN, OUT, UND = state
        rest = full & ~(IN | OUT | UND)
        if not rest:
            results.append(IN)
            continue
        a = (rest & -rest)
        # Pushed in reverse so IN is explored first.
        stack.append((IN, OUT, UND | a))
        stack.append((IN, OUT | a, UND))
        stack.append((IN | a, OUT, UND))
    return results


def _check_cap(f: Framework, cap: int) -> None:
    if f.n_args > cap:
        raise TooLarge(f"framework has {f.n_args} arguments; enumeration cap is {cap}")


def complete_extensions(f: Framework, cap: int = ENUM_CAP) -> list:
    """All complete extensions, found by three-valued labelling search."""
    _check_cap(f, cap)
    found = _labelling_search(f)
    for S in found:
        if not is_complete(S, f):
            raise AssertionError(f"labelling search produced a non-complete set {arg_members(S)}")
    return sort_family(found)


def maximal_sets(family: Sequence[ArgSet]) -> list:
    fam = set(family)
    return sort_family(S for S in fam if not any(T != S and S & ~T == 0 for T in fam))


def preferred_extensions(f: Framework, cap: int = ENUM_CAP) -> list:
    return maximal_sets(complete_extensions(f, cap))


def stable_extensions(f: Framework, cap: int = ENUM_CAP) -> list:
    return [S for S in complete_extensions(f, cap) if neutrality(S, f) == S]


def is_well_founded(f: Framework) -> bool:
    """True iff the attack graph has no directed cycle.

    On a finite graph an infinite backward attack sequence must revisit an
    argument, closing a cycle, and any cycle can be walked forever.
    """
    # Kahn's algorithm on the attack graph.
    indeg = [bin(a).count("1") for a in f.attackers]
    queue = [a for a in range(f.n_args) if indeg[a] == 0]
    seen = 0
    while queue:
        a = queue.pop()
        seen += 1
        for b in arg_members(f.targets[a]):
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    return seen == f.n_args


# --- exhaustive oracle -----------------------------------------------------

@dataclass(frozen=True)
class ExhaustiveSemantics:
    grounded: ArgSet
    complete: tuple
    preferred: tuple
    stable: tuple
    admissible: tuple


def exhaustive_semantics(f: Framework, cap: int = ENUM_CAP) -> ExhaustiveSemantics:
    """All four semantics by classifying every one of the ``2**n`` subsets."""
    _check_cap(f, cap)
    codes = _kernels.subset_codes(np.array(f.targets, dtype=np.int64), f.n_args)
    complete = [int(S) for S in np.flatnonzero(codes & _kernels.COMPLETE)]
    stable = [int(S) for S in np.flatnonzero(codes & _kernels.STABLE)]
    admissible = [int(S) for S in np.flatnonzero(codes & _kernels.ADMISSIBLE)]
    least = [S for S in complete if all(S & ~T == 0 for T in complete)]
    return ExhaustiveSemantics(
        grounded=least[0],
        complete=tuple(sort_family(complete)),
        preferred=tuple(maximal_sets(complete)),
        stable=tuple(sort_family(stable)),
        admissible=tuple(sort_family(admissible)),
    )


# --- lattice structure of the complete family ------------------------------

def _intersection_closure(family: Sequence[ArgSet]) -> set:
    closure = set(family)
    frontier = set(family)
    while frontier:
        new = set()
        for A in frontier:
            for B in family:
                I = A & B
                if I not in closure:
                    new.add(I)
        closure |= new
        frontier = new
    return closure


def _greatest_lower_bound(bound: ArgSet, family: Sequence[ArgSet]) -> Optional[ArgSet]:
    lower = [E for E in family if E & ~bound == 0]
    for E in lower:
        if all(L & ~E == 0 for L in lower):
            return E
    return None


def has_all_glbs(family: Sequence[ArgSet]) -> bool:
    """Every nonempty subfamily has a greatest lower bound inside ``family``.

    A subfamily's lower bounds depend only on its intersection, and the
    intersections of nonempty subfamilies are exactly the intersection
    closure of the family.
    """
    family = list(family)
    return all(_greatest_lower_bound(I, family) is not None for I in _intersection_closure(family))


def has_directed_lubs(family: Sequence[ArgSet]) -> bool:
    """Every directed subfamily has a least upper bound inside ``family``.

    A finite directed family contains its own maximum, which is then the lub,
    so this only fails if the input is malformed; it is checked literally.
    """
    family = list(set(family))
    for size in range(1, len(family) + 1):
        for sub in combinations(family, size):
            if not _is_directed(sub):
                continue
            union = 0
            for S in sub:
                union |= S
            upper = [E for E in family if union & ~E == 0]
            if not any(all(E & ~U == 0 for U in upper) for E in upper):
                return False
    return True


def _is_directed(sub: Sequence[ArgSet]) -> bool:
    return all(any(A & ~C == 0 and B & ~C == 0 for C in sub) for A in sub for B in sub)


# --- text formats -----------------------------------------------------------

def to_af_text(f: Framework) -> str:
    lines = [f"p af {f.n_args}"]
    lines += [f"att {a + 1} {b + 1}" for a, b in f.attacks]
    return "\n".join(lines) + "\n"


def parse_af_text(text: str) -> Framework:
    """Parse ``p af <n>`` followed by ``att <i> <j>`` lines (1-indexed).

    Blank lines and lines starting with ``#`` are ignored.
    """
    n = None
    attacks = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 3 or parts[0] != "p" or parts[1] != "af":
                raise ParseError(f"line {lineno}: expected 'p af <n_args>' header")
            try:
                n = int(parts[2])
            except ValueError:
                raise ParseError(f"line {lineno}: bad argument count {parts[2]!r}") from None
            if n < 0:
                raise ParseError(f"line {lineno}: negative argument count")
            continue
        if len(parts) != 3 or parts[0] != "att":
            raise ParseError(f"line {lineno}: expected 'att <i> <j>'")
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer argument index") from None
        if not (1 <= a <= n and 1 <= b <= n):
            raise ParseError(f"line {lineno}: argument index out of range 1..{n}")
        attacks.add((a - 1, b - 1))
    if n is None:
        raise ParseError("missing 'p af <n_args>' header")
    return Framework.from_attacks(n, attacks)


def to_dot(f: Framework, labels: Optional[Sequence[str]] = None, highlight: ArgSet = 0) -> str:
    lines = ["digraph af {"]
    for a in range(f.n_args):
        label = labels[a] if labels is not None else str(a + 1)
        style = ", style=filled, fillcolor=lightgrey" if highlight >> a & 1 else ""
        lines.append(f'  a{a + 1} [label="{label}"{style}];')
    for a, b in f.attacks:
        lines.append(f"  a{a + 1} -> a{b + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
