"""Finite matrix monoids: BFS closure over generators, the named Boolean and
weighted call families, presentation and inclusion checks, structural
reports, and a brute-force identity oracle over enumerated elements.

Closures are deterministic: elements appear in BFS discovery order with the
generator list iterated in a fixed order, so witness words are the shortest
generator words with lexicographic tie-break, and two runs with identical
inputs produce identical results.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Optional

import numpy as np

from .errors import BudgetExceededError, ClosureCapExceeded, UnsupportedStructureError
from .matrices import (
    SMatrix,
    catalan_generator,
    double_catalan_generator,
    identity_matrix,
    is_convex,
    multiply,
    one_way_call,
    two_way_call,
)
from .semirings import BOOL, SemiringDescriptor
from .words import Identity


def catalan_number(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


class ClosureResult:
    """An enumerated finite monoid of matrices.

    ``elements[0]`` is the identity matrix for generated closures.  Families
    produced by direct enumeration rather than generation carry no witness
    words and no Cayley rows.
    """

    def __init__(
        self,
        semiring: SemiringDescriptor,
        n: int,
        family: Optional[str],
        generators: tuple,
        generator_labels: tuple,
        elements: list,
        witness_words: Optional[list],
        cayley_right: Optional[list],
    ):
        self.semiring = semiring
        self.n = n
        self.family = family
        self.generators = generators
        self.generator_labels = generator_labels
        self.elements = elements
        self.witness_words = witness_words
        self.cayley_right = cayley_right
        self._index = {m: i for i, m in enumerate(elements)}
        self._table = None

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, matrix: SMatrix) -> bool:
        return matrix in self._index

    def index_of(self, matrix: SMatrix) -> int:
        return self._index[matrix]

    def witness_word(self, idx: int) -> str:
        if self.witness_words is None:
            return "-"
        word = self.witness_words[idx]
        if not word:
            return "-"
        return " ".join(self.generator_labels[g] for g in word)

    def mult_table(self) -> np.ndarray:
        """Full element-by-element multiplication table (indices)."""
        if self._table is None:
            m = len(self.elements)
            table = np.empty((m, m), dtype=np.int32)
            for i, a in enumerate(self.elements):
                for j, b in enumerate(self.elements):
                    table[i, j] = self._index[multiply(a, b)]
            self._table = table
        return self._table


def bfs_closure(
    generators,
    element_cap: int = 5_000_000,
    labels: Optional[list] = None,
    family: Optional[str] = None,
) -> ClosureResult:
    """Close a generator list under right multiplication, breadth first."""
    generators = list(generators)
    if not generators:
        raise ValueError("closure needs at least one generator")
    S = generators[0].semiring
    n = generators[0].n
    for g in generators:
        if g.semiring is not S or g.n != n:
            raise UnsupportedStructureError("generators must share dimension and instance")
    if labels is None:
        labels = [f"g{k + 1}" for k in range(len(generators))]
    if element_cap < 1:
        raise ValueError("element cap must be positive")

    start = identity_matrix(n, S)
    elements = [start]
    words = [()]
    index = {start: 0}
    cayley = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        base = elements[i]
        row = []
        for gi, g in enumerate(generators):
            result = multiply(base, g)
            found = index.get(result)
            if found is None:
                if len(elements) >= element_cap:
                    partial = ClosureResult(
                        S, n, family, tuple(generators), tuple(labels),
                        elements, words, None,
                    )
                    raise ClosureCapExceeded(
                        f"closure exceeded cap of {element_cap} elements", partial
                    )
                found = len(elements)
                index[result] = found
                elements.append(result)
                words.append(words[i] + (gi,))
                queue.append(found)
            row.append(found)
        cayley.append(row)
    return ClosureResult(
        S, n, family, tuple(generators), tuple(labels), elements, words, cayley
    )


# -- direct enumerations ---------------------------------------------------------


def _enumerate_positions(S, n, positions, family, size_cap=1 << 18):
    values = S.values()
    total = len(values) ** len(positions)
    if total > size_cap:
        raise BudgetExceededError(
            f"direct enumeration of {total} matrices exceeds the cap {size_cap}"
        )
    base = identity_matrix(n, S)
    out = []
    for combo in iproduct(values, repeat=len(positions)):
        rows = [list(r) for r in base.rows]
        for (i, j), v in zip(positions, combo):
            rows[i][j] = v
        out.append(SMatrix(S, tuple(tuple(r) for r in rows), validate=False))
    return ClosureResult(S, n, family, (), (), out, None, None)


def enumerate_reflexive(n: int, S: SemiringDescriptor = BOOL) -> ClosureResult:
    """All matrices with unit diagonal, identity first."""
    positions = [(i, j) for i in range(n) for j in range(n) if i != j]
    return _enumerate_positions(S, n, positions, "reflexiveBool" if S is BOOL else None)


def enumerate_unitriangular(n: int, S: SemiringDescriptor = BOOL) -> ClosureResult:
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return _enumerate_positions(S, n, positions, None)


def enumerate_upper_triangular(n: int, S: SemiringDescriptor = BOOL) -> ClosureResult:
    values = S.values()
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    total = len(values) ** len(positions)
    if total > 1 << 18:
        raise BudgetExceededError("upper-triangular enumeration too large")
    zero = S.zero
    out = []
    for combo in iproduct(values, repeat=len(positions)):
        rows = [[zero] * n for _ in range(n)]
        for (i, j), v in zip(positions, combo):
            rows[i][j] = v
        out.append(SMatrix(S, tuple(tuple(r) for r in rows), validate=False))
    return ClosureResult(S, n, None, (), (), out, None, None)


def enumerate_convex(n: int) -> ClosureResult:
    full = enumerate_reflexive(n, BOOL)
    kept = [m for m in full.elements if is_convex(m)]
    return ClosureResult(BOOL, n, "convexBool", (), (), kept, None, None)


# -- named families -----------------------------------------------------------------


FAMILY_NAMES = (
    "catalanU",
    "doubleCatalan",
    "gossip",
    "oneWayGossip",
    "reflexiveBool",
    "convexBool",
    "catalanU_S",
    "doubleCatalan_S",
    "gossip_S",
    "oneWayGossip_S",
)


def _weighted_generators(name, n, S, sample, index_bound):
    top = n if index_bound == "n" else n - 1
    gens, labels = [], []
    if name == "catalanU_S":
        pairs = [(i, i + 1) for i in range(1, n)]
        one_way = True
    elif name == "doubleCatalan_S":
        pairs = [(i, i + 1) for i in range(1, n)]
        one_way = False
    elif name == "gossip_S":
        pairs = [(i, j) for i in range(1, top + 1) for j in range(i + 1, top + 1)]
        one_way = False
    else:
        pairs = [(i, j) for i in range(1, top + 1) for j in range(1, top + 1) if i != j]
        one_way = True
    for (i, j) in pairs:
        for s in sample:
            if one_way:
                gens.append(one_way_call(i, j, n, S, s))
                labels.append(f"{i}>{j}:{S.format_value(S.val(s))}")
            else:
                gens.append(two_way_call(i, j, n, S, s))
                labels.append(f"{i}<>{j}:{S.format_value(S.val(s))}")
    return gens, labels


# gossip closures grow violently with n; the other families stay desk sized
_FAMILY_N_DEFAULTS = {
    "gossip": 4,
    "oneWayGossip": 4,
    "gossip_S": 4,
    "oneWayGossip_S": 4,
}


def family(
    name: str,
    n: int,
    semiring: Optional[SemiringDescriptor] = None,
    *,
    s_sample: Optional[tuple] = None,
    element_cap: int = 5_000_000,
    index_bound: str = "n",
    max_n: Optional[int] = None,
) -> ClosureResult:
    """Build one of the named monoid families.

    Boolean families: ``catalanU`` (neighbour steps), ``doubleCatalan``
    (neighbour exchanges), ``gossip`` (all two-way calls), ``oneWayGossip``
    (all one-way calls), ``reflexiveBool`` and ``convexBool`` (direct
    enumeration).  The ``*_S`` variants take an interval instance and a finite
    sample of call weights.  ``index_bound`` selects whether weighted gossip
    call indices range over 1..n (default) or only 1..n-1.
    """
    if name not in FAMILY_NAMES:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if max_n is None:
        max_n = _FAMILY_N_DEFAULTS.get(name, 6)
    if n > max_n:
        raise ValueError(
            f"n={n} above the configured family bound {max_n}; pass max_n to raise it"
        )
    if index_bound not in ("n", "n-1"):
        raise ValueError("index_bound must be 'n' or 'n-1'")

    if name == "reflexiveBool":
        return enumerate_reflexive(n, BOOL)
    if name == "convexBool":
        return enumerate_convex(n)
    if name == "catalanU":
        gens = [catalan_generator(i, n) for i in range(1, n)]
        labels = [f"e{i}" for i in range(1, n)]
    elif name == "doubleCatalan":
        gens = [double_catalan_generator(i, n) for i in range(1, n)]
        labels = [f"{i}<>{i + 1}" for i in range(1, n)]
    elif name == "gossip":
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        gens = [two_way_call(i, j, n) for i, j in pairs]
        labels = [f"{i}<>{j}" for i, j in pairs]
    elif name == "oneWayGossip":
        pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        gens = [one_way_call(i, j, n) for i, j in pairs]
        labels = [f"{i}>{j}" for i, j in pairs]
    else:
        if semiring is None or not semiring.is_interval:
            raise UnsupportedStructureError(
                f"family {name} needs an interval semiring instance"
            )
        sample = s_sample if s_sample is not None else semiring.interval_sample
        if not sample:
            raise ValueError(f"{semiring.name} declares no default weight sample")
        gens, labels = _weighted_generators(name, n, semiring, sample, index_bound)
    if not gens:
        # n too small for any generator: the trivial monoid
        S = semiring or BOOL
        return ClosureResult(S, n, name, (), (), [identity_matrix(n, S)], [()], [])
    return bfs_closure(gens, element_cap=element_cap, labels=labels, family=name)


# -- presentation and inclusion checks --------------------------------------------------


@dataclass
class PresentationCheck:
    n: int
    relations: list
    closure_size: int
    expected_size: int

    @property
    def all_relations_hold(self) -> bool:
        return all(ok for _, _, ok in self.relations)

    @property
    def size_matches(self) -> bool:
        return self.closure_size == self.expected_size

    @property
    def ok(self) -> bool:
        return self.all_relations_hold and self.size_matches


def check_catalan_presentation(n: int) -> PresentationCheck:
    """Verify the neighbour-step relations (idempotency, distant commuting,
    and the local braid-with-absorption triple) and that the generated monoid
    has Catalan-number size."""
    if n < 2:
        raise ValueError("presentation check needs n >= 2")
    gens = {i: catalan_generator(i, n) for i in range(1, n)}

    def prod(indices):
        result = identity_matrix(n, BOOL)
        for k in indices:
            result = multiply(result, gens[k])
        return result

    def label(indices):
        return " ".join(f"e{k}" for k in indices)

    relations = []

    def add_relation(lhs, rhs):
        relations.append((label(lhs), label(rhs), prod(lhs) == prod(rhs)))

    for i in range(1, n):
        add_relation((i, i), (i,))
    for i in range(1, n):
        for j in range(i + 2, n):
            add_relation((i, j), (j, i))
    for i in range(1, n - 1):
        add_relation((i, i + 1, i), (i + 1, i, i + 1))
        add_relation((i, i + 1, i), (i, i + 1))

    closure = family("catalanU", n)
    return PresentationCheck(n, relations, len(closure), catalan_number(n))


@dataclass
class InclusionReport:
    entries: list

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.entries)


def check_inclusions(
    n: int,
    weighted_semiring: Optional[SemiringDescriptor] = None,
    s_sample: Optional[tuple] = None,
    element_cap: int = 5_000_000,
) -> InclusionReport:
    """Element-wise containment of the enumerated Boolean families, and
    reflexivity of every element of the weighted families when an interval
    instance is supplied."""
    from .matrices import is_reflexive

    entries = []
    dc = family("doubleCatalan", n, element_cap=element_cap)
    go = family("gossip", n, element_cap=element_cap)
    owg = family("oneWayGossip", n, element_cap=element_cap)
    refl = family("reflexiveBool", n)

    def subset(a, b, text):
        missing = sum(1 for m in a.elements if m not in b)
        entries.append((text, missing == 0, f"|{text.split(' ')[0]}|={len(a)}, missing={missing}"))

    subset(dc, go, f"doubleCatalan({n}) subset of gossip({n})")
    subset(go, owg, f"gossip({n}) subset of oneWayGossip({n})")
    subset(owg, refl, f"oneWayGossip({n}) subset of reflexiveBool({n})")

    if weighted_semiring is not None:
        weighted = {
            fam_name: family(
                fam_name, n, weighted_semiring, s_sample=s_sample, element_cap=element_cap
            )
            for fam_name in ("catalanU_S", "doubleCatalan_S", "gossip_S", "oneWayGossip_S")
        }
        for fam_name, fam in weighted.items():
            bad = sum(1 for m in fam.elements if not is_reflexive(m))
            entries.append(
                (
                    f"every element of {fam_name}({n}) over {weighted_semiring.name} is reflexive",
                    bad == 0,
                    f"size={len(fam)}, non-reflexive={bad}",
                )
            )
        subset(
            weighted["doubleCatalan_S"], weighted["gossip_S"],
            f"doubleCatalan_S({n}) subset of gossip_S({n})",
        )
        subset(
            weighted["gossip_S"], weighted["oneWayGossip_S"],
            f"gossip_S({n}) subset of oneWayGossip_S({n})",
        )
    return InclusionReport(entries)


# -- brute-force identity oracle -----------------------------------------------------------


@dataclass(frozen=True)
class BruteForceHolds:
    assignments_checked: int


@dataclass(frozen=True)
class BruteForceFails:
    assignment: dict  # letter -> element index
    matrices: dict  # letter -> SMatrix


BruteForceResult = object


def _fold_word(table: np.ndarray, word: str, columns: dict) -> np.ndarray:
    acc = columns[word[0]]
    for ch in word[1:]:
        acc = table[acc, columns[ch]]
    return acc


def brute_force_identity(
    ident: Identity,
    M: ClosureResult,
    *,
    sample: Optional[int] = None,
    seed: int = 0,
    assignment_cap: int = 10_000_000,
    chunk: int = 1 << 18,
):
    """Evaluate both sides of the identity under every assignment of letters
    to elements of M (or ``sample`` seeded random assignments), returning the
    first counterexample in canonical order, else Holds.

    Canonical order: letters sorted, each ranging over element indices, the
    leftmost letter most significant.
    """
    letters = sorted(set(ident.lhs) | set(ident.rhs))
    m = len(M.elements)
    table = None
    if sample is None:
        total = m ** len(letters)
        if total > assignment_cap:
            raise BudgetExceededError(
                f"{total} assignments exceed the cap {assignment_cap}; "
                "pass sample=... for a randomized check"
            )
        table = M.mult_table()
        radix = [m ** (len(letters) - 1 - k) for k in range(len(letters))]
        checked = 0
        for start in range(0, total, chunk):
            stop = min(start + chunk, total)
            flat = np.arange(start, stop, dtype=np.int64)
            columns = {
                ch: ((flat // radix[k]) % m).astype(np.int32)
                for k, ch in enumerate(letters)
            }
            lhs = _fold_word(table, ident.lhs, columns)
            rhs = _fold_word(table, ident.rhs, columns)
            diff = lhs != rhs
            checked += stop - start
            if diff.any():
                first = int(np.argmax(diff))
                assignment = {
                    ch: int(columns[ch][first]) for ch in letters
                }
                matrices = {ch: M.elements[i] for ch, i in assignment.items()}
                return BruteForceFails(assignment, matrices)
        return BruteForceHolds(checked)

    # sampled mode: memoize pair products instead of materializing the full table
    rng = random.Random(seed)
    pair_cache: dict = {}

    def times(i: int, j: int) -> int:
        key = (i, j)
        found = pair_cache.get(key)
        if found is None:
            found = M.index_of(multiply(M.elements[i], M.elements[j]))
            pair_cache[key] = found
        return found

    for _ in range(sample):
        assignment = {ch: rng.randrange(m) for ch in letters}

        def image(word):
            acc = assignment[word[0]]
            for ch in word[1:]:
                acc = times(acc, assignment[ch])
            return acc

        if image(ident.lhs) != image(ident.rhs):
            matrices = {ch: M.elements[i] for ch, i in assignment.items()}
            return BruteForceFails(assignment, matrices)
    return BruteForceHolds(sample)


# -- structural reports --------------------------------------------------------------------


@dataclass
class StructuralReport:
    idempotents: list
    power_index: list  # least m with A^(m+1) = A^m, or None within the bound
    aperiodic_within_bound: bool
    j_trivial: Optional[bool]


def structural_checks(
    M: ClosureResult, *, power_bound: Optional[int] = None, j_trivial_cap: int = 512
) -> StructuralReport:
    """Idempotents, per-element power stabilization indices, and J-triviality
    via two-sided principal ideals (skipped above ``j_trivial_cap``)."""
    bound = power_bound if power_bound is not None else M.n
    idempotents = []
    power_index = []
    for idx, a in enumerate(M.elements):
        if multiply(a, a) == a:
            idempotents.append(idx)
        found = None
        prev = identity_matrix(M.n, M.semiring)
        for m in range(bound + 1):
            nxt = multiply(prev, a)
            if nxt == prev:
                found = m
                break
            prev = nxt
        power_index.append(found)
    j_trivial = None
    size = len(M.elements)
    if size <= j_trivial_cap:
        table = M.mult_table()
        ideals = []
        everything = np.arange(size, dtype=np.int32)
        for x in range(size):
            left = table[:, x]
            ideal = frozenset(np.unique(table[np.ix_(left, everything)]).tolist())
            ideals.append(ideal)
        j_trivial = len(set(ideals)) == size
    return StructuralReport(
        idempotents,
        power_index,
        all(p is not None for p in power_index),
        j_trivial,
    )
