"""Square matrices over a semiring: structural predicates, the entrywise
order, call/step constructors, walk and block-chain entry expansions, power
stabilization, and convex Boolean matrix machinery."""

from __future__ import annotations

import random
from itertools import combinations, permutations
from typing import Optional

from .errors import (
    InstanceMismatchError,
    InternalConsistencyError,
    UnsupportedStructureError,
)
from .polynomials import Variable, build_f_canonical, evaluate
from .semirings import BOOL, SemiringDescriptor, Val
from .words import subword_set


# desk scale: the identity criteria only ever need subword lengths below this
MAX_DIMENSION = 8


class SMatrix:
    """An immutable n x n matrix of tagged semiring values."""

    __slots__ = ("semiring", "rows", "_hash")

    def __init__(self, semiring: SemiringDescriptor, rows: tuple, validate: bool = True):
        if len(rows) > MAX_DIMENSION:
            raise ValueError(
                f"n={len(rows)} above the dimension cap {MAX_DIMENSION}; "
                "raise sgident.matrices.MAX_DIMENSION if you mean it"
            )
        if validate:
            n = len(rows)
            if n < 1:
                raise ValueError("matrices need n >= 1")
            for row in rows:
                if len(row) != n:
                    raise ValueError("matrix is not square")
                for v in row:
                    if not isinstance(v, Val) or v.tag != semiring.name:
                        raise InstanceMismatchError(
                            f"entry {v!r} does not belong to {semiring.name}"
                        )
        self.semiring = semiring
        self.rows = rows
        self._hash = None

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Val:
        """1-based access."""
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, SMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"SMatrix({self.semiring.name}, {format_matrix(self)!r})"


def matrix_from_payloads(S: SemiringDescriptor, rows) -> SMatrix:
    return SMatrix(S, tuple(tuple(S.val(p) for p in row) for row in rows))


def identity_matrix(n: int, S: SemiringDescriptor) -> SMatrix:
    one, zero = S.one, S.zero
    return SMatrix(
        S,
        tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
        validate=False,
    )


def all_ones(n: int, S: SemiringDescriptor) -> SMatrix:
    one = S.one
    return SMatrix(S, tuple((one,) * n for _ in range(n)), validate=False)


def _bool_multiply(a: SMatrix, b: SMatrix) -> SMatrix:
    n = a.n
    bmask = [
        sum(1 << j for j, v in enumerate(row) if v.payload) for row in b.rows
    ]
    one, zero = a.semiring.one, a.semiring.zero
    out = []
    for row in a.rows:
        acc = 0
        for k, v in enumerate(row):
            if v.payload:
                acc |= bmask[k]
        out.append(tuple(one if acc >> j & 1 else zero for j in range(n)))
    return SMatrix(a.semiring, tuple(out), validate=False)


def multiply(a: SMatrix, b: SMatrix) -> SMatrix:
    if a.semiring is not b.semiring:
        raise InstanceMismatchError(
            f"cannot multiply {a.semiring.name} by {b.semiring.name}"
        )
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    S = a.semiring
    if S is BOOL:
        return _bool_multiply(a, b)
    n = a.n
    add, mul, zero = S._add, S._mul, S._zero_payload
    bp = [[v.payload for v in row] for row in b.rows]
    out = []
    for row in a.rows:
        ap = [v.payload for v in row]
        orow = []
        for j in range(n):
            acc = zero
            for k in range(n):
                if ap[k] != zero:
                    acc = add(acc, mul(ap[k], bp[k][j]))
            orow.append(S._wrap(acc))
        out.append(tuple(orow))
    return SMatrix(S, tuple(out), validate=False)


def mat_pow(a: SMatrix, k: int) -> SMatrix:
    if k < 0:
        raise ValueError("negative matrix power")
    result = identity_matrix(a.n, a.semiring)
    for _ in range(k):
        result = multiply(result, a)
    return result


def product(factors) -> SMatrix:
    factors = list(factors)
    if not factors:
        raise ValueError("empty product; use identity_matrix")
    result = factors[0]
    for f in factors[1:]:
        result = multiply(result, f)
    return result


def transpose(a: SMatrix) -> SMatrix:
    return SMatrix(a.semiring, tuple(zip(*a.rows)), validate=False)


# -- predicates ----------------------------------------------------------------


def is_upper_triangular(a: SMatrix) -> bool:
    zero = a.semiring.zero
    return all(
        a.rows[i][j] == zero for i in range(a.n) for j in range(i)
    )


def is_unitriangular(a: SMatrix) -> bool:
    one = a.semiring.one
    return is_upper_triangular(a) and all(a.rows[i][i] == one for i in range(a.n))


def is_reflexive(a: SMatrix) -> bool:
    one = a.semiring.one
    return all(a.rows[i][i] == one for i in range(a.n))


def leq_entrywise(a: SMatrix, b: SMatrix) -> bool:
    """a <= b entrywise in the natural order; needs an idempotent instance."""
    if a.semiring is not b.semiring or a.n != b.n:
        raise InstanceMismatchError("order comparison needs matching matrices")
    S = a.semiring
    if not S.is_idempotent:
        raise UnsupportedStructureError(
            f"{S.name} is not idempotent; the entrywise order is undefined"
        )
    return all(
        S.natural_leq(a.rows[i][j], b.rows[i][j])
        for i in range(a.n)
        for j in range(a.n)
    )


# -- constructors ---------------------------------------------------------------


def one_way_call(
    i: int, j: int, n: int, S: SemiringDescriptor = BOOL, value: Optional[Val] = None
) -> SMatrix:
    """Identity plus a single off-diagonal entry at (i, j): person i tells
    person j everything they know.  A custom entry weight needs an interval
    instance so that the result stays within the reflexive monoid."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"call indices ({i},{j}) out of range 1..{n}")
    if i == j:
        raise ValueError("call indices must differ")
    if value is None:
        v = S.one
    else:
        if not S.is_interval:
            raise UnsupportedStructureError(
                f"weighted calls need an interval instance, not {S.name}"
            )
        v = S.val(value)
    rows = [[S.one if r == c else S.zero for c in range(1, n + 1)] for r in range(1, n + 1)]
    rows[i - 1][j - 1] = v
    return SMatrix(S, tuple(tuple(r) for r in rows), validate=False)


def two_way_call(
    i: int, j: int, n: int, S: SemiringDescriptor = BOOL, value: Optional[Val] = None
) -> SMatrix:
    """The two-sided exchange between i and j, i.e. the product of the two
    one-way calls; symmetric in i and j."""
    return multiply(
        one_way_call(i, j, n, S, value), one_way_call(j, i, n, S, value)
    )


def catalan_generator(i: int, n: int) -> SMatrix:
    """Boolean unitriangular matrix with its single off-diagonal 1 at (i, i+1)."""
    return one_way_call(i, i + 1, n, BOOL)


def double_catalan_generator(i: int, n: int) -> SMatrix:
    """Two-way call between neighbours i and i+1."""
    return two_way_call(i, i + 1, n, BOOL)


# -- morphisms -------------------------------------------------------------------


class MissingImageError(UnsupportedStructureError):
    """Letter without an image under the morphism."""


class MorphismTable:
    """Images of the letters of an alphabet, extended multiplicatively."""

    def __init__(self, images: dict):
        if not images:
            raise ValueError("a morphism needs at least one letter")
        items = sorted(images.items())
        first = items[0][1]
        for _, m in items:
            if m.semiring is not first.semiring or m.n != first.n:
                raise InstanceMismatchError(
                    "all letter images must share one dimension and instance"
                )
        self.images = dict(items)
        self.semiring = first.semiring
        self.n = first.n

    def image(self, letter: str) -> SMatrix:
        try:
            return self.images[letter]
        except KeyError:
            raise MissingImageError(f"no image for letter {letter!r}") from None

    def apply(self, word: str) -> SMatrix:
        result = identity_matrix(self.n, self.semiring)
        for ch in word:
            result = multiply(result, self.image(ch))
        return result

    def __eq__(self, other):
        return isinstance(other, MorphismTable) and self.images == other.images


# -- walk and block-chain entry formulas ------------------------------------------


def walk_entry(phi: MorphismTable, w: str, i: int, j: int) -> Val:
    """The (i, j) entry of the image of w computed as a sum over subwords u of
    w (of length below n) and strictly increasing vertex paths from i to j,
    weighting each path by the off-diagonal picks for u and the diagonal
    polynomial recording everything skipped in between.

    Agrees with the (i, j) entry of the plain product when every letter image
    is upper triangular.
    """
    S = phi.semiring
    n = phi.n
    for letter, m in phi.images.items():
        if not is_upper_triangular(m):
            raise UnsupportedStructureError(
                f"image of {letter!r} is not upper triangular"
            )
    if i > j:
        return S.zero
    letters = sorted(set(w))
    diag = {
        (s, v): phi.image(s).entry(v, v) for s in letters for v in range(1, n + 1)
    }
    total = S._zero_payload
    zero = S._zero_payload
    candidates = [""]
    if n > 1:
        candidates += sorted(subword_set(w, n - 1), key=lambda u: (len(u), u))
    for u in candidates:
        l = len(u)
        if l == 0:
            paths = [(i,)] if i == j else []
        elif j - i >= l:
            paths = [
                (i, *mid, j) for mid in combinations(range(i + 1, j), l - 1)
            ]
        else:
            paths = []
        if not paths:
            continue
        poly = build_f_canonical(u, w)
        for rho in paths:
            coeff = S._one_payload
            for k in range(1, l + 1):
                coeff = S._mul(
                    coeff, phi.images[u[k - 1]].entry(rho[k - 1], rho[k]).payload
                )
                if coeff == zero:
                    break
            if coeff == zero:
                continue
            assignment = {
                Variable(s, pos + 1): diag[(s, rho[pos])]
                for s in letters
                for pos in range(l + 1)
            }
            value = evaluate(poly, assignment, S)
            total = S._add(total, S._mul(coeff, value.payload))
    return S._wrap(total)


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` positive ints summing to ``total``."""
    for cuts in combinations(range(1, total), parts - 1):
        prev = 0
        out = []
        for c in cuts:
            out.append(c - prev)
            prev = c
        out.append(total - prev)
        yield tuple(out)


def block_chain_entry(factors, i: int, j: int) -> Val:
    """The (i, j) entry of the product of reflexive factors, computed as a sum
    over block chains only: vertex tuples made of constant runs of pairwise
    distinct vertices.  Equals the plain product entry over an interval
    instance because collapsing a revisit never decreases a term."""
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    S = factors[0].semiring
    n = factors[0].n
    if not S.is_interval:
        raise UnsupportedStructureError(
            f"block-chain expansion needs an interval instance, not {S.name}"
        )
    for f in factors:
        if f.semiring is not S or f.n != n:
            raise InstanceMismatchError("factors must share dimension and instance")
        if not is_reflexive(f):
            raise UnsupportedStructureError("factors must have unit diagonal")
    L = len(factors)
    total = S._zero_payload
    if i == j:
        sequences = [(i,)]
    else:
        others = [v for v in range(1, n + 1) if v != i and v != j]
        sequences = []
        for k in range(1, min(n - 1, L) + 1):
            for mid in permutations(others, k - 1):
                sequences.append((i, *mid, j))
    for seq in sequences:
        blocks = len(seq)
        for comp in _compositions(L + 1, blocks):
            rho = []
            for vertex, size in zip(seq, comp):
                rho.extend([vertex] * size)
            term = S._one_payload
            for t in range(1, L + 1):
                term = S._mul(term, factors[t - 1].entry(rho[t - 1], rho[t]).payload)
                if term == S._zero_payload:
                    break
            total = S._add(total, term)
    return S._wrap(total)


def power_stabilize(a: SMatrix) -> SMatrix:
    """Return a^(n-1) for a reflexive matrix over an interval instance, after
    verifying that the powers really have stabilized (a^(n-1) = a^N up to
    N = 2n, and a^(n-1) is idempotent).  Failure of either check is reported
    as an internal inconsistency rather than returned silently."""
    S = a.semiring
    if not S.is_interval:
        raise UnsupportedStructureError(
            f"power stabilization needs an interval instance, not {S.name}"
        )
    if not is_reflexive(a):
        raise UnsupportedStructureError("power stabilization needs a unit diagonal")
    n = a.n
    powers = [identity_matrix(n, S)]
    for _ in range(2 * n):
        powers.append(multiply(powers[-1], a))
    stable = powers[n - 1]
    for exp in range(n - 1, 2 * n + 1):
        if powers[exp] != stable:
            raise InternalConsistencyError(
                f"power {exp} differs from power {n - 1} for a reflexive matrix"
            )
    if multiply(stable, stable) != stable:
        raise InternalConsistencyError("stabilized power is not idempotent")
    return stable


# -- convex Boolean matrices -------------------------------------------------------


def _require_bool(a: SMatrix, what: str):
    if a.semiring is not BOOL:
        raise UnsupportedStructureError(f"{what} is defined for Boolean matrices")


def is_convex(a: SMatrix) -> bool:
    """Unit diagonal and contiguous runs of ones in every row and column."""
    _require_bool(a, "convexity")
    n = a.n
    if any(not a.rows[i][i].payload for i in range(n)):
        return False
    for i in range(n):
        ones = [j for j in range(n) if a.rows[i][j].payload]
        if ones != list(range(ones[0], ones[-1] + 1)):
            return False
    for j in range(n):
        ones = [i for i in range(n) if a.rows[i][j].payload]
        if ones != list(range(ones[0], ones[-1] + 1)):
            return False
    return True


def upper_profile(a: SMatrix) -> SMatrix:
    """Keep entries on or above the diagonal; zero the rest."""
    _require_bool(a, "the upper profile")
    zero = a.semiring.zero
    return SMatrix(
        a.semiring,
        tuple(
            tuple(v if i <= j else zero for j, v in enumerate(row))
            for i, row in enumerate(a.rows)
        ),
        validate=False,
    )


def decompose_convex(a: SMatrix) -> list:
    """Factor a convex upper unitriangular Boolean matrix into neighbour-step
    generators; returns the generator indices in product order.  The factors
    for row i are steps i, i+1, ..., (last one in row i) - 1, emitted for rows
    n-1 down to 1; multiplying them back reproduces the input exactly."""
    _require_bool(a, "convex decomposition")
    if not (is_convex(a) and is_upper_triangular(a)):
        raise ValueError("decomposition needs a convex upper unitriangular matrix")
    n = a.n
    reach = [max(j for j in range(n) if a.rows[i][j].payload) + 1 for i in range(n)]
    word = []
    for i in range(n - 1, 0, -1):
        word.extend(range(i, reach[i - 1]))
    rebuilt = identity_matrix(n, BOOL)
    for idx in word:
        rebuilt = multiply(rebuilt, catalan_generator(idx, n))
    if rebuilt != a:
        raise InternalConsistencyError("convex decomposition failed to multiply back")
    return word


# -- text format --------------------------------------------------------------------


def format_matrix(a: SMatrix) -> str:
    """Row-major text: entries space separated, rows joined by '; '."""
    S = a.semiring
    return "; ".join(" ".join(S.format_value(v) for v in row) for row in a.rows)


def parse_matrix(S: SemiringDescriptor, text: str) -> SMatrix:
    rows = []
    for chunk in text.split(";"):
        entries = chunk.split()
        if not entries:
            raise ValueError("empty matrix row")
        rows.append(tuple(S.parse_value(e) for e in entries))
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix text is not square")
    return SMatrix(S, tuple(rows))


# -- randomized constructions ----------------------------------------------------------


def random_matrix(S: SemiringDescriptor, n: int, rng: random.Random) -> SMatrix:
    return SMatrix(
        S,
        tuple(
            tuple(S.sample_value(rng) for _ in range(n)) for _ in range(n)
        ),
        validate=False,
    )


def random_upper_triangular(S: SemiringDescriptor, n: int, rng: random.Random) -> SMatrix:
    return SMatrix(
        S,
        tuple(
            tuple(
                S.sample_value(rng) if j >= i else S.zero for j in range(n)
            )
            for i in range(n)
        ),
        validate=False,
    )


def random_reflexive(S: SemiringDescriptor, n: int, rng: random.Random) -> SMatrix:
    return SMatrix(
        S,
        tuple(
            tuple(
                S.one if i == j else S.sample_value(rng) for j in range(n)
            )
            for i in range(n)
        ),
        validate=False,
    )
