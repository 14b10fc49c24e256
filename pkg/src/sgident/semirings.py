"""Exact commutative semirings and their arithmetic.

Every value is a tagged exact scalar: a bool, an arbitrary-precision int, a
Fraction, or an IEEE infinity used as a formal +/-inf element.  Finite floats
are never produced, so equality of values is always exact and verdicts built
on top of them are bit-reproducible.

Shipped instances (see :func:`semiring_from_spec` for the CLI spellings):

* ``bool``            -- the Boolean semiring {0, 1} with 1+1=1;
* ``nat``             -- the natural numbers with ordinary + and *;
* ``nat:<i>,<p>``     -- naturals truncated so that m and m+p coincide once
                         m >= i; a finite quotient realizing every eventually
                         periodic arithmetic of repeated sums of 1;
* ``maxplus``         -- rationals with -inf, addition = max, product = +;
* ``minplus01inf``    -- rationals in [0, inf], addition = min, product = +;
* ``interval01``      -- rationals in [0, 1], addition = max, ordinary *;
* ``lattice:diamond`` -- the four-element distributive lattice 2x2 with
                         join as addition and meet as product.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import (
    InstanceMismatchError,
    InternalConsistencyError,
    UnsupportedStructureError,
)

INF = math.inf
NEG_INF = -math.inf

Payload = Union[bool, int, Fraction, float]


def _normalize(payload: Payload) -> Payload:
    # bool first: bool is a subclass of int
    if isinstance(payload, bool):
        return payload
    if isinstance(payload, Fraction) and payload.denominator == 1:
        return int(payload)
    return payload


@dataclass(frozen=True, slots=True)
class Val:
    """A semiring element: instance tag plus exact scalar payload."""

    tag: str
    payload: Payload

    def __repr__(self) -> str:
        return f"<{self.tag}:{self.payload}>"


@dataclass(frozen=True)
class Free:
    """Repeated sums of 1 are pairwise distinct."""


@dataclass(frozen=True)
class Cyclic:
    """Repeated sums of 1 repeat: the m-fold and (m+period)-fold sums coincide
    once m >= index, and the first index+period sums are pairwise distinct."""

    index: int
    period: int


Monogenic = Union[Free, Cyclic]

FREE = Free()


@dataclass(frozen=True)
class FiniteCarrier:
    values: tuple


@dataclass(frozen=True)
class InfiniteCarrier:
    """A seeded sampler over a fixed countable subset of the carrier."""

    sample: Callable[[random.Random], Payload]


class SemiringDescriptor:
    """A commutative semiring instance with exact, total operations.

    ``add``/``mul`` work on raw payloads; the public methods wrap results in
    tagged values and reject operands from other instances.  Descriptors are
    immutable after construction and may be shared freely across workers.
    """

    def __init__(
        self,
        name: str,
        add: Callable[[Payload, Payload], Payload],
        mul: Callable[[Payload, Payload], Payload],
        zero: Payload,
        one: Payload,
        *,
        idempotent: bool,
        interval: bool,
        carrier: Union[FiniteCarrier, InfiniteCarrier],
        monogenic: Optional[Monogenic] = None,
        free_rank1: Optional[Payload] = None,
        partial_sums_distinct: bool = False,
        contains: Optional[Callable[[Payload], bool]] = None,
        format_payload: Optional[Callable[[Payload], str]] = None,
        parse_payload: Optional[Callable[[str], Payload]] = None,
        interval_sample: Optional[tuple] = None,
    ):
        self.name = name
        self._add = add
        self._mul = mul
        self._zero_payload = _normalize(zero)
        self._one_payload = _normalize(one)
        self.is_idempotent = idempotent
        self.is_interval = interval
        self.carrier = carrier
        self._contains = contains
        self._format = format_payload or str
        self._parse = parse_payload
        self.free_rank1_payload = (
            _normalize(free_rank1) if free_rank1 is not None else None
        )
        self.partial_sums_distinct = partial_sums_distinct
        self._interval_sample = interval_sample
        self._embed_cache: dict = {}
        self.monogenic = self._establish_monogenic(monogenic)

    # -- construction helpers -------------------------------------------------

    def _establish_monogenic(self, declared: Optional[Monogenic]) -> Monogenic:
        if isinstance(self.carrier, FiniteCarrier):
            computed = self._classify_by_iteration(len(self.carrier.values) + 2)
            if declared is not None and declared != computed:
                raise InternalConsistencyError(
                    f"{self.name}: declared monogenic class {declared} but "
                    f"iteration of repeated sums of 1 gives {computed}"
                )
            return computed
        if declared is None:
            raise ValueError(f"{self.name}: infinite carriers must declare a monogenic class")
        if isinstance(declared, Free):
            self._verify_distinct_embeds(64)
        else:
            self._verify_distinct_embeds(declared.index + declared.period)
            lo = self._embed_by_addition(declared.index)
            hi = self._embed_by_addition(declared.index + declared.period)
            if lo != hi:
                raise InternalConsistencyError(
                    f"{self.name}: declared collision at index {declared.index}, "
                    f"period {declared.period} does not hold"
                )
        return declared

    def _classify_by_iteration(self, limit: int) -> Monogenic:
        seen: dict = {}
        current = self._zero_payload
        m = 0
        while m <= limit:
            if current in seen:
                first = seen[current]
                return Cyclic(index=first, period=m - first)
            seen[current] = m
            current = _normalize(self._add(current, self._one_payload))
            m += 1
        raise InternalConsistencyError(
            f"{self.name}: no repetition among the first {limit} sums of 1 in a finite carrier"
        )

    def _embed_by_addition(self, m: int) -> Payload:
        current = self._zero_payload
        for _ in range(m):
            current = _normalize(self._add(current, self._one_payload))
        return current

    def _verify_distinct_embeds(self, count: int) -> None:
        seen = set()
        current = self._zero_payload
        for m in range(count):
            if current in seen:
                raise InternalConsistencyError(
                    f"{self.name}: sums of 1 repeat before index {m}, "
                    "contradicting the declared monogenic class"
                )
            seen.add(current)
            current = _normalize(self._add(current, self._one_payload))

    # -- values ---------------------------------------------------------------

    @property
    def zero(self) -> Val:
        return Val(self.name, self._zero_payload)

    @property
    def one(self) -> Val:
        return Val(self.name, self._one_payload)

    def val(self, payload: Payload) -> Val:
        """Wrap a payload, normalizing and checking carrier membership."""
        if isinstance(payload, Val):
            if payload.tag != self.name:
                raise InstanceMismatchError(
                    f"value tagged {payload.tag!r} used with instance {self.name!r}"
                )
            return payload
        payload = _normalize(payload)
        if self._contains is not None and not self._contains(payload):
            raise ValueError(f"{payload!r} is not in the carrier of {self.name}")
        return Val(self.name, payload)

    def _wrap(self, payload: Payload) -> Val:
        return Val(self.name, _normalize(payload))

    def payload_of(self, v: Val) -> Payload:
        if v.tag != self.name:
            raise InstanceMismatchError(
                f"value tagged {v.tag!r} used with instance {self.name!r}"
            )
        return v.payload

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: Val, b: Val) -> Val:
        return self._wrap(self._add(self.payload_of(a), self.payload_of(b)))

    def mul(self, a: Val, b: Val) -> Val:
        return self._wrap(self._mul(self.payload_of(a), self.payload_of(b)))

    def natural_leq(self, a: Val, b: Val) -> bool:
        """a <= b in the natural partial order, i.e. a + b equals b."""
        if not self.is_idempotent:
            raise UnsupportedStructureError(
                f"{self.name} is not idempotent; the natural order is undefined"
            )
        return self.add(a, b) == b

    def nat_embed(self, m: int) -> Val:
        """The m-fold sum of 1 (the empty sum for m = 0)."""
        if m < 0:
            raise ValueError("nat_embed needs a nonnegative argument")
        cls = self.monogenic
        if isinstance(cls, Cyclic) and m >= cls.index + cls.period:
            m = cls.index + (m - cls.index) % cls.period
        cached = self._embed_cache.get(m)
        if cached is not None:
            return cached
        result = self._zero_payload
        addend = self._one_payload
        k = m
        while k:
            if k & 1:
                result = self._add(result, addend)
            k >>= 1
            if k:
                addend = self._add(addend, addend)
        wrapped = self._wrap(result)
        if m <= 128:
            self._embed_cache[m] = wrapped
        return wrapped

    def classify_monogenic(self) -> Monogenic:
        return self.monogenic

    # -- carrier access -------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return isinstance(self.carrier, FiniteCarrier)

    def values(self) -> list:
        if not self.is_finite:
            raise UnsupportedStructureError(f"{self.name} has an infinite carrier")
        return [self._wrap(p) for p in self.carrier.values]

    def carrier_size(self) -> Optional[int]:
        return len(self.carrier.values) if self.is_finite else None

    def sample_value(self, rng: random.Random) -> Val:
        if self.is_finite:
            return self._wrap(rng.choice(self.carrier.values))
        return self._wrap(self.carrier.sample(rng))

    @property
    def free_rank1(self) -> Optional[Val]:
        if self.free_rank1_payload is None:
            return None
        return self._wrap(self.free_rank1_payload)

    @property
    def interval_sample(self) -> Optional[tuple]:
        if self._interval_sample is None:
            return None
        return tuple(self._wrap(p) for p in self._interval_sample)

    # -- text -----------------------------------------------------------------

    def format_value(self, v: Val) -> str:
        return self._format(self.payload_of(v))

    def parse_value(self, text: str) -> Val:
        if self._parse is None:
            raise UnsupportedStructureError(f"{self.name} has no value parser")
        return self.val(self._parse(text.strip()))

    def __repr__(self) -> str:
        return f"SemiringDescriptor({self.name!r})"


# -- concrete instances -------------------------------------------------------


def _parse_bool(text: str) -> Payload:
    if text == "0":
        return False
    if text == "1":
        return True
    raise ValueError(f"bad boolean entry {text!r}")


def _parse_nonneg_int(text: str) -> Payload:
    value = int(text)
    if value < 0:
        raise ValueError(f"negative entry {text!r}")
    return value


def _format_extended(p: Payload) -> str:
    if p == INF:
        return "inf"
    if p == NEG_INF:
        return "-inf"
    return str(p)


def _nat_sampler(rng: random.Random) -> Payload:
    r = rng.random()
    if r < 0.75:
        return rng.randrange(0, 10)
    if r < 0.95:
        return rng.randrange(10, 100)
    return rng.randrange(100, 1 << 16)


def _maxplus_sampler(rng: random.Random) -> Payload:
    if rng.random() < 0.125:
        return NEG_INF
    return Fraction(rng.randrange(-16, 17), rng.choice((1, 1, 2, 3, 4)))


def _minplus_sampler(rng: random.Random) -> Payload:
    if rng.random() < 0.125:
        return INF
    return Fraction(rng.randrange(0, 25), rng.choice((1, 1, 2, 3, 4)))


def _interval01_sampler(rng: random.Random) -> Payload:
    den = rng.choice((1, 2, 3, 4, 5, 8))
    return Fraction(rng.randrange(0, den + 1), den)


def _mp_mul(a: Payload, b: Payload) -> Payload:
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


def _tp_mul(a: Payload, b: Payload) -> Payload:
    if a == INF or b == INF:
        return INF
    return a + b


def _is_rational(p: Payload) -> bool:
    return (isinstance(p, int) and not isinstance(p, bool)) or isinstance(p, Fraction)


BOOL = SemiringDescriptor(
    "bool",
    lambda a, b: a or b,
    lambda a, b: a and b,
    False,
    True,
    idempotent=True,
    interval=True,
    carrier=FiniteCarrier((False, True)),
    contains=lambda p: isinstance(p, bool),
    format_payload=lambda p: "1" if p else "0",
    parse_payload=_parse_bool,
    interval_sample=(True,),
)

NAT = SemiringDescriptor(
    "nat",
    lambda a, b: a + b,
    lambda a, b: a * b,
    0,
    1,
    idempotent=False,
    interval=False,
    carrier=InfiniteCarrier(_nat_sampler),
    monogenic=FREE,
    free_rank1=2,
    partial_sums_distinct=True,
    contains=lambda p: isinstance(p, int) and not isinstance(p, bool) and p >= 0,
    parse_payload=_parse_nonneg_int,
)

MAXPLUS = SemiringDescriptor(
    "maxplus",
    max,
    _mp_mul,
    NEG_INF,
    0,
    idempotent=True,
    interval=False,
    carrier=InfiniteCarrier(_maxplus_sampler),
    monogenic=Cyclic(1, 1),
    free_rank1=1,
    partial_sums_distinct=True,
    contains=lambda p: p == NEG_INF or _is_rational(p),
    format_payload=_format_extended,
    parse_payload=lambda t: NEG_INF if t == "-inf" else Fraction(t),
)

MINPLUS01INF = SemiringDescriptor(
    "minplus01inf",
    min,
    _tp_mul,
    INF,
    0,
    idempotent=True,
    interval=True,
    carrier=InfiniteCarrier(_minplus_sampler),
    monogenic=Cyclic(1, 1),
    free_rank1=1,
    contains=lambda p: p == INF or (_is_rational(p) and p >= 0),
    format_payload=_format_extended,
    parse_payload=lambda t: INF if t == "inf" else Fraction(t),
    interval_sample=(0, 1, 8),
)

INTERVAL01 = SemiringDescriptor(
    "interval01",
    max,
    lambda a, b: a * b,
    0,
    1,
    idempotent=True,
    interval=True,
    carrier=InfiniteCarrier(_interval01_sampler),
    monogenic=Cyclic(1, 1),
    free_rank1=Fraction(1, 2),
    contains=lambda p: _is_rational(p) and 0 <= p <= 1,
    parse_payload=Fraction,
    interval_sample=(1, Fraction(1, 2), Fraction(1, 16)),
)

_DIAMOND_NAMES = {0: "0", 1: "a", 2: "b", 3: "1"}
_DIAMOND_CODES = {v: k for k, v in _DIAMOND_NAMES.items()}


def _parse_diamond(text: str) -> Payload:
    if text not in _DIAMOND_CODES:
        raise ValueError(f"bad lattice entry {text!r}")
    return _DIAMOND_CODES[text]


DIAMOND = SemiringDescriptor(
    "lattice:diamond",
    lambda a, b: a | b,
    lambda a, b: a & b,
    0,
    3,
    idempotent=True,
    interval=True,
    carrier=FiniteCarrier((0, 1, 2, 3)),
    contains=lambda p: isinstance(p, int) and not isinstance(p, bool) and 0 <= p <= 3,
    format_payload=lambda p: _DIAMOND_NAMES[p],
    parse_payload=_parse_diamond,
    interval_sample=(3, 1),
)


def truncated_nat(index: int, period: int) -> SemiringDescriptor:
    """The quotient of the naturals identifying m with m+period once m >= index."""
    if index < 0 or period < 1:
        raise ValueError("truncated naturals need index >= 0 and period >= 1")
    size = index + period

    def norm(m: int) -> int:
        return m if m < size else index + (m - index) % period

    add = lambda a, b: norm(a + b)
    mul = lambda a, b: norm(a * b)
    one = norm(1)
    idempotent = all(add(a, a) == a for a in range(size))
    interval = idempotent and all(add(a, one) == one for a in range(size))
    return SemiringDescriptor(
        f"nat:{index},{period}",
        add,
        mul,
        0,
        one,
        idempotent=idempotent,
        interval=interval,
        carrier=FiniteCarrier(tuple(range(size))),
        contains=lambda p: isinstance(p, int) and not isinstance(p, bool) and 0 <= p < size,
        parse_payload=_parse_nonneg_int,
    )


_BUILTINS = {
    "bool": BOOL,
    "nat": NAT,
    "maxplus": MAXPLUS,
    "minplus01inf": MINPLUS01INF,
    "interval01": INTERVAL01,
    "lattice:diamond": DIAMOND,
}

_SPEC_CACHE: dict = dict(_BUILTINS)


def semiring_from_spec(spec: str) -> SemiringDescriptor:
    """Resolve a CLI semiring spec string to a (shared) descriptor instance."""
    spec = spec.strip()
    cached = _SPEC_CACHE.get(spec)
    if cached is not None:
        return cached
    if spec.startswith("nat:"):
        body = spec[len("nat:") :]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad truncated-naturals spec {spec!r}; expected nat:<index>,<period>")
        try:
            index, period = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"bad truncated-naturals spec {spec!r}") from None
        descriptor = truncated_nat(index, period)
        _SPEC_CACHE[spec] = descriptor
        return descriptor
    raise ValueError(
        f"unknown semiring spec {spec!r}; known: bool, nat, nat:<index>,<period>, "
        "maxplus, minplus01inf, interval01, lattice:diamond"
    )
