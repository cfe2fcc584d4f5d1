from __future__ import annotations

from hypothesis import settings
from hypothesis import strategies as st

from kecs.multigraph import Multigraph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def multigraphs(draw, max_n: int = 6, max_m: int = 10, min_m: int = 0) -> Multigraph:
    n = draw(st.integers(2, max_n))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(pair, min_size=min_m, max_size=max_m))
    return Multigraph(n, tuple(edges))
