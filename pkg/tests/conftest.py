import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cbg.graphs import SimpleGraph
from cbg.linalg import PrimeFieldMatrix, is_invertible

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# filled by test_acceptance, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph(n, {e for e, keep in zip(pairs, chosen) if keep})


@st.composite
def invertible_matrices(draw, n, p):
    # rejection through a seeded generator keeps shrinking cheap
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    while True:
        A = PrimeFieldMatrix([[rng.randrange(p) for _ in range(n)] for _ in range(n)], p)
        if is_invertible(A):
            return A


@st.composite
def graph_and_basis(draw, min_n=1, max_n=6, primes=(2, 3, 5)):
    G = draw(graphs(min_n, max_n))
    p = draw(st.sampled_from(primes))
    A = draw(invertible_matrices(G.n, p))
    return G, A


@pytest.fixture
def rng():
    return random.Random(20240611)
