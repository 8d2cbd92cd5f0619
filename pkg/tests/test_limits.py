from hypothesis import assume, given, strategies as st
import pytest

from smalehom.abelian import FgAbGroup, GroupHom, Z, torsion_subgroup
from smalehom.intmat import IntMatrix
from smalehom.limits import CanonicalScalars, LimitGroup, Opaque, StationarySystem, \
    eventual_torsion, induced_trace, limit_rank, limits_isomorphic, mod_p_rank, parse_limit, \
    primes_of, render_limit, stationary_limit
from smalehom.oracle import check_canonical_against_fingerprint, fingerprint_for

from conftest import endomorphisms, groups

G = FgAbGroup.parse
L = parse_limit


def lim(group, rows):
    return stationary_limit(StationarySystem.from_matrix(G(group), rows))


class TestEventualTorsion:
    def test_identity(self):
        assert eventual_torsion(StationarySystem.scalar(G("Z/2"), 1)) == G("Z/2")

    def test_zero(self):
        assert eventual_torsion(StationarySystem.scalar(G("Z/2"), 0)) == FgAbGroup()

    def test_hantzsche_wendt_torsion(self):
        assert eventual_torsion(StationarySystem.scalar(G("(Z/4)^2"), 1)) == G("(Z/4)^2")

    def test_multiplication_by_two_on_z8(self):
        assert eventual_torsion(StationarySystem.scalar(G("Z/8 (+) Z/3"), 2)) == G("Z/3")

    def test_nilpotent_shift(self):
        # e1 -> e2 -> 0 on (Z/2)^2 dies after two steps
        sys = StationarySystem.from_matrix(G("(Z/2)^2"), [[0, 0], [1, 0]])
        assert eventual_torsion(sys) == FgAbGroup()


class TestStationaryLimit:
    def test_identity_on_z(self):
        assert lim("Z", [[1]]) == L("Z")

    def test_nine(self):
        out = lim("Z", [[9]])
        assert str(out) == "Z[1/3]"
        assert out.raw_form() == "Z[1/9]"
        assert out.free_part.prime_sets == ((3,),)

    def test_klein_degree_one(self):
        assert lim("Z (+) Z/2", [[3, 0], [0, 1]]) == L("Z[1/3] (+) Z/2")

    def test_diagonal_two_three(self):
        assert lim("Z^2", [[2, 0], [0, 3]]) == L("Z[1/2] (+) Z[1/3]")

    def test_singular(self):
        assert lim("Z^2", [[0, 0], [0, 5]]) == L("Z[1/5]")

    def test_triangular(self):
        assert lim("Z^2", [[2, 1], [0, 3]]) == L("Z[1/2] (+) Z[1/3]")
        assert lim("Z^2", [[2, 1], [0, 2]]) == L("Z[1/2]^2")

    def test_unimodular(self):
        assert lim("Z^2", [[2, 1], [1, 1]]) == L("Z^2")

    def test_negative_scalar(self):
        assert lim("Z", [[-4]]) == L("Z[1/2]")

    def test_zero_map(self):
        assert lim("Z^2 (+) Z/3", [[0, 0, 0], [0, 0, 0], [0, 0, 0]]).is_trivial

    def test_not_diagonalizable_is_opaque(self):
        out = lim("Z^2", [[1, 1], [5, 0]])
        assert isinstance(out.free_part, Opaque)
        assert out.free_part.rank == 2 and out.free_part.inverted_primes == (5,)
        assert mod_p_rank(out, 5) == 1
        assert str(out) == "Opaque(rank=2, primes={5})"
        assert limits_isomorphic(out, L("Z (+) Z[1/5]")) is None
        assert limits_isomorphic(out, L("Z[1/5]^2")) is False
        assert limits_isomorphic(out, L("Z[1/2] (+) Z[1/5]")) is False

    def test_presentation_kept(self):
        sys = StationarySystem.scalar(Z, 4)
        assert stationary_limit(sys).presentation == sys


class TestRankAndTrace:
    def test_limit_rank(self):
        assert limit_rank(StationarySystem.scalar(FgAbGroup(2), 1)) == 2
        assert limit_rank(StationarySystem.from_matrix(FgAbGroup(2), [[0, 0], [0, 5]])) == 1

    @given(endomorphisms(G=G("Z (+) Z/2")))
    def test_torsion_adds_no_rank(self, f):
        assert limit_rank(StationarySystem(f.domain, f)) <= 1

    def test_trace(self):
        assert induced_trace(StationarySystem.scalar(Z, 5), 3) == 125
        assert induced_trace(StationarySystem.scalar(Z, -1), 3) == -1
        assert induced_trace(StationarySystem.from_matrix(FgAbGroup(2), [[2, 1], [0, 3]]), 2) == 13
        with pytest.raises(ValueError):
            induced_trace(StationarySystem.scalar(Z, 2), 0)

    @given(st.lists(st.integers(-6, 6), min_size=1, max_size=4), st.integers(1, 6))
    def test_diagonal_trace(self, diag, k):
        A = FgAbGroup(len(diag))
        sys = StationarySystem(A, GroupHom(A, A, IntMatrix.diagonal(diag)))
        assert induced_trace(sys, k) == sum(m ** k for m in diag)


class TestIsomorphism:
    def test_examples(self):
        assert limits_isomorphic(L("Z[1/9]"), L("Z[1/3]")) is True
        assert limits_isomorphic(L("Z[1/5]"), L("Z[1/125]")) is True
        assert limits_isomorphic(L("Z[1/2]"), L("Z[1/3]")) is False
        assert limits_isomorphic(L("Z"), L("Z/2")) is False
        assert limits_isomorphic(L("Z[1/6] (+) Z"), L("Z[1/2] (+) Z[1/3]")) is False


class TestRendering:
    @pytest.mark.parametrize("text", [
        "0", "Z", "Z^2", "Z[1/3]", "Z[1/6]^2 (+) Z/2", "Z (+) Z[1/2] (+) Z/4 (+) Z/4",
        "Opaque(rank=2, primes={2,3}) (+) Z/2",
    ])
    def test_round_trip(self, text):
        assert render_limit(parse_limit(text)) == text

    def test_canonical_rendering(self):
        assert str(L("Z[1/9] (+) Z[1/4]")) == "Z[1/2] (+) Z[1/3]"
        assert str(L("Z[1/12]")) == "Z[1/6]"

    def test_primes_of(self):
        assert primes_of(-12) == (2, 3)
        assert primes_of(1) == () and primes_of(0) == ()


class TestProperties:
    @given(groups())
    def test_identity_limit(self, A):
        out = stationary_limit(StationarySystem.scalar(A, 1))
        assert out.torsion == torsion_subgroup(A)
        assert out.free_part == CanonicalScalars(((),) * A.free_rank)

    @given(endomorphisms())
    def test_torsion_is_eventual_torsion(self, f):
        sys = StationarySystem(f.domain, f)
        assert stationary_limit(sys).torsion == eventual_torsion(sys)

    @given(endomorphisms())
    def test_rank_is_full_when_invertible(self, f):
        A = f.free_block()
        assume(A.det() != 0)
        assert limit_rank(StationarySystem(f.domain, f)) == f.domain.free_rank

    @given(endomorphisms())
    def test_square_gives_same_limit(self, f):
        L1 = stationary_limit(StationarySystem(f.domain, f))
        L2 = stationary_limit(StationarySystem(f.domain, f @ f))
        assert limits_isomorphic(L1, L2) is not False
        if L1.is_canonical and L2.is_canonical:
            assert limits_isomorphic(L1, L2) is True

    @given(endomorphisms())
    def test_agrees_with_oracle(self, f):
        out = stationary_limit(StationarySystem(f.domain, f))
        assume(out.is_canonical)
        assert check_canonical_against_fingerprint(out, fingerprint_for(out, depth=6))

    @given(endomorphisms())
    def test_render_parse_round_trip(self, f):
        out = stationary_limit(StationarySystem(f.domain, f))
        assert parse_limit(str(out)) == out
