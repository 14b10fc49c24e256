import pytest

from sgident.checker import corpus
from sgident.semirings import (
    BOOL,
    DIAMOND,
    INTERVAL01,
    MAXPLUS,
    MINPLUS01INF,
    NAT,
    semiring_from_spec,
)

ALL_INSTANCES = {
    "bool": BOOL,
    "nat": NAT,
    "nat:2,3": semiring_from_spec("nat:2,3"),
    "maxplus": MAXPLUS,
    "minplus01inf": MINPLUS01INF,
    "interval01": INTERVAL01,
    "lattice:diamond": DIAMOND,
}

IDEMPOTENT_INSTANCES = {
    name: S for name, S in ALL_INSTANCES.items() if S.is_idempotent
}

INTERVAL_INSTANCES = {
    name: S for name, S in ALL_INSTANCES.items() if S.is_interval
}


@pytest.fixture(scope="session")
def identity_corpus():
    return corpus()
