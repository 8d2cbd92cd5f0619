from hypothesis import settings, strategies as st

from smalehom.abelian import FgAbGroup, GroupHom
from smalehom.intmat import IntMatrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5, bound=20, square=False):
    r = draw(st.integers(1, max_rows))
    c = r if square else draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return IntMatrix.from_rows(rows)


@st.composite
def unimodular(draw, n, steps=6):
    """Product of random elementary matrices."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, steps))):
        if n == 1:
            M = [[-x for x in row] for row in M]
            continue
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            continue
        c = draw(st.integers(-3, 3))
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    return IntMatrix.from_rows(M)


@st.composite
def groups(draw, max_rank=3, max_tors=2):
    r = draw(st.integers(0, max_rank))
    tors = []
    t = 1
    for _ in range(draw(st.integers(0, max_tors))):
        t *= draw(st.sampled_from([2, 2, 3, 4, 5]))
        tors.append(t)
    return FgAbGroup(r, tuple(tors))


@st.composite
def endomorphisms(draw, G=None, bound=6):
    """A random well-defined endomorphism of G (built from per-column choices)."""
    G = draw(groups()) if G is None else G
    orders = G.orders
    n = G.ngens
    cols = []
    for j, tau in enumerate(orders):
        col = []
        for i, t in enumerate(orders):
            if t == 0:
                col.append(0 if tau else draw(st.integers(-bound, bound)))
            elif tau == 0:
                col.append(draw(st.integers(0, t - 1)))
            else:
                # image of an element of order tau: multiples of t/gcd(t, tau)
                from math import gcd
                step = t // gcd(t, tau)
                col.append(step * draw(st.integers(0, t // step - 1)))
        cols.append(col)
    M = IntMatrix.from_columns(cols, n) if n else IntMatrix.zeros(0, 0)
    return GroupHom(G, G, M)
