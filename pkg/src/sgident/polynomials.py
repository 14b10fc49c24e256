"""Formal polynomials in doubled variables x(letter, vertex), built from
subword embeddings, plus functional-equivalence testing over a semiring.

A polynomial is a canonical merged sum of monomials with natural-number
coefficients and exponents, so one object can be interpreted over any
instance: a coefficient c evaluates as the c-fold sum of 1, an exponent e as
the e-fold product.  Idempotent interpretation caps coefficients at one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from .errors import AlgebraError
from .semirings import FiniteCarrier, SemiringDescriptor, Val, _normalize


class Variable(NamedTuple):
    letter: str
    vertex: int

    def render(self) -> str:
        return f"x({self.letter},{self.vertex})"


# A monomial is a sorted tuple of (variable, exponent >= 1) pairs.
Monomial = tuple


@dataclass(frozen=True)
class FormalPolynomial:
    """Canonical form: terms sorted by monomial, coefficients positive."""

    terms: tuple

    @classmethod
    def from_dict(cls, coefficients: dict) -> "FormalPolynomial":
        items = [(m, c) for m, c in coefficients.items() if c]
        items.sort(key=lambda item: item[0])
        return cls(tuple(items))

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> list:
        seen = set()
        for mono, _ in self.terms:
            for var, _ in mono:
                seen.add(var)
        return sorted(seen)

    def cap(self) -> "FormalPolynomial":
        """Coefficients clamped to 1 (summation up to idempotency)."""
        return FormalPolynomial(tuple((m, 1) for m, _ in self.terms))

    def max_exponent(self) -> int:
        return max((e for mono, _ in self.terms for _, e in mono), default=0)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.terms:
            factors = [
                var.render() if e == 1 else f"{var.render()}^{e}" for var, e in mono
            ]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(coeff)] + factors))
        return " + ".join(parts)


ZERO_POLYNOMIAL = FormalPolynomial(())


def _embeddings(u: str, w: str):
    """Yield index tuples (0, a_1, ..., a_l, |w|+1) with w[a_k] == u[k],
    strictly increasing; positions are 1-based."""
    l, m = len(u), len(w)
    if l == 0:
        yield (0, m + 1)
        return
    alpha = [0] * (l + 2)
    alpha[l + 1] = m + 1

    def extend(k: int, start: int):
        if k > l:
            yield tuple(alpha)
            return
        for pos in range(start, m - (l - k) + 1):
            if w[pos - 1] == u[k - 1]:
                alpha[k] = pos
                yield from extend(k + 1, pos + 1)

    yield from extend(1, 1)


def build_f(u: str, rho: tuple, w: str, n: int) -> FormalPolynomial:
    """The sum over all embeddings of u into w of the monomial recording, for
    each path vertex rho[k], how many occurrences of each letter fall strictly
    between the k-th and (k+1)-st embedded positions.

    Zero exactly when u does not embed into w.
    """
    l = len(u)
    rho = tuple(rho)
    if l > n - 1:
        raise ValueError(f"|u|={l} exceeds n-1={n - 1}")
    if len(rho) != l + 1:
        raise ValueError(f"path has {len(rho)} vertices; need |u|+1={l + 1}")
    if any(not (1 <= v <= n) for v in rho):
        raise ValueError(f"path {rho} leaves the vertex range 1..{n}")
    if any(rho[k] >= rho[k + 1] for k in range(l)):
        raise ValueError(f"path {rho} is not strictly increasing")

    letters = sorted(set(w))
    prefix = {s: [0] * (len(w) + 1) for s in letters}
    for i, ch in enumerate(w, start=1):
        for s in letters:
            prefix[s][i] = prefix[s][i - 1] + (1 if ch == s else 0)

    coefficients: dict = {}
    for alpha in _embeddings(u, w):
        expo = {}
        for k in range(l + 1):
            lo, hi = alpha[k], alpha[k + 1]
            for s in letters:
                count = prefix[s][hi - 1] - prefix[s][lo]
                if count:
                    expo[Variable(s, rho[k])] = count
        mono = tuple(sorted(expo.items()))
        coefficients[mono] = coefficients.get(mono, 0) + 1
    return FormalPolynomial.from_dict(coefficients)


@lru_cache(maxsize=8192)
def build_f_canonical(u: str, w: str) -> FormalPolynomial:
    """build_f along the initial-segment path (1, 2, ..., |u|+1)."""
    return build_f(u, tuple(range(1, len(u) + 2)), w, len(u) + 1)


def _payload_pow(S: SemiringDescriptor, payload, exponent: int):
    acc = payload
    for _ in range(exponent - 1):
        acc = S._mul(acc, payload)
    return acc


def evaluate(p: FormalPolynomial, assignment: dict, S: SemiringDescriptor) -> Val:
    """Interpret p in S under a total assignment of its variables."""
    total = S._zero_payload
    for mono, coeff in p.terms:
        acc = S.payload_of(S.nat_embed(coeff))
        for var, exponent in mono:
            bound = assignment.get(var)
            if bound is None:
                raise AlgebraError(f"no binding for variable {var.render()}")
            acc = S._mul(acc, _payload_pow(S, S.payload_of(bound), exponent))
        total = S._add(total, acc)
    return S._wrap(total)


# -- functional equivalence ----------------------------------------------------


@dataclass(frozen=True)
class Equivalent:
    method: str


@dataclass(frozen=True)
class NotEquivalent:
    witness: dict
    lhs_value: Val
    rhs_value: Val


@dataclass(frozen=True)
class NotFalsified:
    samples: int


_FINITE_TABLES: dict = {}


class _FiniteTables:
    """Carrier coded as 0..c-1 with numpy add/mul tables for bulk evaluation."""

    def __init__(self, S: SemiringDescriptor):
        payloads = list(S.carrier.values)
        if len(payloads) > 255:
            raise AlgebraError("finite carrier too large for coded evaluation")
        self.payloads = payloads
        self.code = {p: i for i, p in enumerate(payloads)}
        c = len(payloads)
        self.add = np.zeros((c, c), dtype=np.uint8)
        self.mul = np.zeros((c, c), dtype=np.uint8)
        for i, a in enumerate(payloads):
            for j, b in enumerate(payloads):
                self.add[i, j] = self.code[_normalize(S._add(a, b))]
                self.mul[i, j] = self.code[_normalize(S._mul(a, b))]
        self.zero_code = self.code[S._zero_payload]


def _finite_tables(S: SemiringDescriptor) -> _FiniteTables:
    tables = _FINITE_TABLES.get(S.name)
    if tables is None:
        tables = _FiniteTables(S)
        _FINITE_TABLES[S.name] = tables
    return tables


def _eval_codes(p: FormalPolynomial, grid, var_pos: dict, S, tables) -> np.ndarray:
    total = np.full(grid.shape[1], tables.zero_code, dtype=np.uint8)
    for mono, coeff in p.terms:
        coeff_code = tables.code[S.payload_of(S.nat_embed(coeff))]
        acc = np.full(grid.shape[1], coeff_code, dtype=np.uint8)
        for var, exponent in mono:
            col = grid[var_pos[var]]
            powered = col
            for _ in range(exponent - 1):
                powered = tables.mul[powered, col]
            acc = tables.mul[acc, powered]
        total = tables.add[total, acc]
    return total


def _exhaustive(p, q, S, variables, cap):
    tables = _finite_tables(S)
    c = len(tables.payloads)
    count = len(variables)
    if count == 0:
        a = evaluate(p, {}, S)
        b = evaluate(q, {}, S)
        if a == b:
            return Equivalent("exhaustive")
        return NotEquivalent({}, a, b)
    total = c**count
    if total > cap:
        return None
    grid = np.indices((c,) * count, dtype=np.uint8).reshape(count, total)
    var_pos = {v: i for i, v in enumerate(variables)}
    pv = _eval_codes(p, grid, var_pos, S, tables)
    qv = _eval_codes(q, grid, var_pos, S, tables)
    diff = pv != qv
    if not diff.any():
        return Equivalent("exhaustive")
    first = int(np.argmax(diff))
    witness = {
        v: S._wrap(tables.payloads[int(grid[i, first])]) for i, v in enumerate(variables)
    }
    return NotEquivalent(witness, evaluate(p, witness, S), evaluate(q, witness, S))


def _sampled(p, q, S, variables, budget, seed):
    rng = random.Random(seed)
    for _ in range(budget):
        assignment = {v: S.sample_value(rng) for v in variables}
        a = evaluate(p, assignment, S)
        b = evaluate(q, assignment, S)
        if a != b:
            return NotEquivalent(assignment, a, b)
    return NotFalsified(budget)


def functionally_equivalent(
    p: FormalPolynomial,
    q: FormalPolynomial,
    S: SemiringDescriptor,
    *,
    variables: Optional[list] = None,
    budget: int = 4096,
    seed: int = 0,
    exhaustive_cap: int = 1 << 20,
):
    """Decide whether p and q define the same function on assignments over S.

    Identical canonical forms (coefficients capped when S is idempotent) are
    equivalent over any instance.  Finite carriers are settled by exhaustive
    evaluation up to ``exhaustive_cap`` total assignments; otherwise seeded
    sampling either produces a falsifying witness or reports NotFalsified.
    The witness is always the first falsifying assignment in the canonical
    enumeration (or sampling) order, so verdicts are reproducible.
    """
    occurring = sorted(set(p.variables()) | set(q.variables()))
    if variables is None:
        universe = occurring
    else:
        universe = sorted(set(variables))
        missing = [v for v in occurring if v not in set(universe)]
        if missing:
            raise AlgebraError(
                f"variable universe misses {[v.render() for v in missing]}"
            )
    cp = p.cap() if S.is_idempotent else p
    cq = q.cap() if S.is_idempotent else q
    if cp.terms == cq.terms:
        return Equivalent("identical-form")
    if isinstance(S.carrier, FiniteCarrier):
        result = _exhaustive(p, q, S, universe, exhaustive_cap)
        if result is not None:
            return result
    return _sampled(p, q, S, universe, budget, seed)
