import random

import pytest
from hypothesis import settings

from quiverhom import fixture
from quiverhom import repmod as rm

settings.register_profile("default", max_examples=200, deadline=None, derandomize=True)
settings.load_profile("default")

NAKAYAMA_FIXTURES = ["kupisch-3334", "kupisch-23333221", "kupisch-5555576", "kupisch-221",
                     "zero-relation-A2", "zero-relation-A3", "zero-relation-A4", "zero-relation-A5"]
OTHER_FIXTURES = ["semisimple", "gorenstein", "auslander-six-vertex", "auslander-A3-linear", "auslander-kx2",
                  "gf3-12vertex"]
ALL_FIXTURES = NAKAYAMA_FIXTURES + OTHER_FIXTURES
HA_FIXTURES = ["kupisch-3334", "kupisch-23333221", "kupisch-5555576", "kupisch-221", "zero-relation-A3",
               "zero-relation-A4", "zero-relation-A5", "auslander-six-vertex", "auslander-A3-linear", "auslander-kx2",
               "gf3-12vertex"]

_cache = {}


def load(name):
    if name not in _cache:
        _cache[name] = fixture(name)
    return _cache[name]


@pytest.fixture(params=ALL_FIXTURES)
def any_algebra(request):
    return load(request.param)


def random_quotient(a, rng: random.Random):
    """P(i) modulo the submodule generated by one random element."""
    i = rng.randrange(a.n)
    p = rm.projective(a, i)
    f = a.field
    v = rng.randrange(a.n)
    if p.dims[v] == 0:
        return p
    vec = f.array([[f.random_element(rng) for _ in range(p.dims[v])]])[0]
    return rm.quotient(p, rm.generated_bases(p, [(v, vec)]))[0]


def small_modules(a):
    """Simples, indecomposable projectives and injectives, DA and A."""
    mods = [rm.simple(a, i) for i in range(a.n)]
    mods += [rm.projective(a, i) for i in range(a.n)]
    mods += [rm.injective(a, i) for i in range(a.n)]
    return mods


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
