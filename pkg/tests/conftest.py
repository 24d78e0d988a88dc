import random

import pytest
from hypothesis import strategies as st

from kernelhunt import make_digraph


@st.composite
def digraphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if not pairs:
        return make_digraph(n, [])
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return make_digraph(n, arcs)


def random_digraph(rng: random.Random, n: int, p_sym=0.4, p_one=0.3):
    """One labeled digraph; each pair independently digon / single arc / absent."""
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            r = rng.random()
            if r < p_sym:
                arcs.append((u, v))
                arcs.append((v, u))
            elif r < p_sym + p_one:
                arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return make_digraph(n, arcs)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
