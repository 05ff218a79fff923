import random

import pytest

from hpq.geometry import Mode
from hpq.testkit import gen_convex

QUAD = [(0, 0), (4, 0), (5, 3), (1, 4)]

MODES = (Mode.FARTHEST, Mode.NEAREST)


@pytest.fixture(params=MODES, ids=lambda m: m.value)
def mode(request):
    return request.param


_cache = {}


def instance(n, seed=0, shape="circle"):
    """Memoized gen_convex; instances are reused heavily across tests."""
    key = (n, seed, shape)
    if key not in _cache:
        _cache[key] = gen_convex(n, seed, shape)
    return _cache[key]


def rng_for(name):
    return random.Random(f"hpq-tests-{name}")
