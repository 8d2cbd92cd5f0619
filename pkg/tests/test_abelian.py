from hypothesis import given, strategies as st
import pytest

from smalehom.abelian import FgAbGroup, GroupHom, TRIVIAL, Z, canonical_coordinates, \
    cohomology_from_homology, compose, direct_sum, direct_sum_hom, free_part, \
    group_from_presentation, image, is_isomorphic, is_multiplication_by, k_groups_low_dim, \
    torsion_subgroup
from smalehom.intmat import IntMatrix

from conftest import endomorphisms, groups, int_matrices, unimodular

G = FgAbGroup.parse


def rel(rows, n):
    return IntMatrix.from_rows(rows, cols=n)


class TestGroups:
    def test_render(self):
        assert str(FgAbGroup(2, (2, 4))) == "Z^2 (+) Z/2 (+) Z/4"
        assert str(TRIVIAL) == "0"
        assert str(Z) == "Z"

    @given(groups())
    def test_parse_round_trip(self, A):
        assert G(str(A)) == A

    def test_parse_variants(self):
        assert G("(Z/4)^2") == FgAbGroup(0, (4, 4))
        assert G("Z/6") == G("Z/2 (+) Z/3")
        assert G("Z/1 (+) Z") == Z
        with pytest.raises(ValueError):
            G("Q")

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            FgAbGroup(0, (4, 2))
        with pytest.raises(ValueError):
            FgAbGroup(0, (1,))

    def test_from_orders_canonical(self):
        assert FgAbGroup.from_orders([4, 6, 0]) == FgAbGroup(1, (2, 12))


class TestPresentations:
    def test_one_relation(self):
        assert group_from_presentation(2, rel([[2, 0]], 2)) == G("Z (+) Z/2")

    def test_trivial(self):
        assert group_from_presentation(2, rel([[1, 0], [0, 1]], 2)) == TRIVIAL

    def test_klein_abelianization(self):
        # <a, b | a b a^-1 b> abelianizes to the single relation 2b = 0
        assert group_from_presentation(2, rel([[0, 2]], 2)) == G("Z (+) Z/2")

    def test_no_relations(self):
        assert group_from_presentation(3, IntMatrix.zeros(0, 3)) == FgAbGroup(3)

    @given(st.data())
    def test_invariant_under_row_operations(self, data):
        R = data.draw(int_matrices(max_rows=4, max_cols=4, bound=8))
        P = data.draw(unimodular(R.rows))
        assert group_from_presentation(R.cols, P @ R) == group_from_presentation(R.cols, R)


class TestOperations:
    def test_torsion_subgroup(self):
        assert torsion_subgroup(FgAbGroup(3)) == TRIVIAL
        assert torsion_subgroup(G("Z (+) Z/2")) == G("Z/2")
        assert torsion_subgroup(G("(Z/4)^2")) == G("(Z/4)^2")
        assert free_part(G("Z^2 (+) Z/3")) == FgAbGroup(2)

    def test_direct_sum(self):
        assert direct_sum(Z, G("Z/2")) == G("Z (+) Z/2")
        assert direct_sum(G("Z/2"), G("Z/3")) == G("Z/6")
        assert is_isomorphic(G("Z/6"), G("Z/3 (+) Z/2"))

    def test_multiplication_by_reduces(self):
        assert is_multiplication_by(GroupHom.scalar(G("Z/2"), 3), 1)
        assert not is_multiplication_by(GroupHom.scalar(Z, 3), 1)

    def test_klein_cohomology_transfer_relation(self):
        t = GroupHom.scalar(Z, 3)
        g = GroupHom.scalar(Z, 3)
        assert is_multiplication_by(compose(t, g), 9)

    def test_compose_mismatch(self):
        with pytest.raises(ValueError):
            compose(GroupHom.identity(Z), GroupHom.identity(G("Z/2")))

    def test_hom_stores_reduced_rows(self):
        f = GroupHom(G("Z/4"), G("Z/4"), IntMatrix.from_rows([[7]]))
        assert f.matrix.tolist() == [[3]]
        assert f == GroupHom.scalar(G("Z/4"), -1)

    def test_hom_well_definedness(self):
        with pytest.raises(ValueError):          # Z/2 -> Z/4, 1 -> 1 is not defined
            GroupHom(G("Z/2"), G("Z/4"), IntMatrix.from_rows([[1]]))
        with pytest.raises(ValueError):          # torsion cannot hit Z
            GroupHom(G("Z/2"), Z, IntMatrix.from_rows([[1]]))
        GroupHom(G("Z/2"), G("Z/4"), IntMatrix.from_rows([[2]]))

    def test_image(self):
        f = GroupHom(G("Z (+) Z/4"), G("Z (+) Z/4"), IntMatrix.from_rows([[2, 0], [0, 2]]))
        assert image(f) == G("Z (+) Z/2")

    def test_direct_sum_hom_crt(self):
        h = direct_sum_hom(GroupHom.scalar(G("Z/2"), 1), GroupHom.scalar(G("Z/3"), 2))
        assert h.domain == G("Z/6")
        assert is_multiplication_by(h, 5)

    @given(endomorphisms(), endomorphisms())
    def test_direct_sum_hom_is_functorial(self, f, g):
        lhs = direct_sum_hom(f @ f, g @ g)
        rhs = direct_sum_hom(f, g) @ direct_sum_hom(f, g)
        assert lhs == rhs

    @given(st.lists(st.sampled_from([0, 2, 3, 4, 6, 12]), max_size=4))
    def test_canonical_coordinates_inverse(self, orders):
        Gc, P, Q = canonical_coordinates(orders)
        PQ = P @ Q
        for i, t in enumerate(Gc.orders):
            for j in range(Gc.ngens):
                want = int(i == j)
                assert (PQ[i, j] - want) % t == 0 if t else PQ[i, j] == want


class TestCohomology:
    def test_klein(self):
        assert cohomology_from_homology([Z, G("Z (+) Z/2"), TRIVIAL], False, 2) == \
            [Z, Z, G("Z/2")]

    def test_torus_self_dual(self):
        H = [Z, FgAbGroup(2), Z]
        assert cohomology_from_homology(H, True, 2) == H

    def test_o36(self):
        H = [Z, G("(Z/4)^2"), TRIVIAL, Z]
        assert cohomology_from_homology(H, True, 3) == [Z, TRIVIAL, G("(Z/4)^2"), Z]

    def test_rejects_disconnected(self):
        with pytest.raises(ValueError):
            cohomology_from_homology([FgAbGroup(2), Z], True, 1)

    @given(st.lists(groups(), min_size=1, max_size=4))
    def test_orientable_twice_is_identity(self, middle):
        H = [Z] + middle + [Z]
        d = len(H) - 1
        once = cohomology_from_homology(H, True, d)
        assert cohomology_from_homology(once, True, d) == H

    @given(st.lists(groups(), min_size=1, max_size=4))
    def test_uct_torsion_shifts(self, rest):
        H = [Z] + rest
        d = len(H) - 1
        C = cohomology_from_homology(H, False, d)
        for k in range(1, d + 1):
            assert torsion_subgroup(C[k]) == torsion_subgroup(H[k - 1])
            assert C[k].free_rank == H[k].free_rank


class TestKGroups:
    def test_klein(self):
        assert k_groups_low_dim([Z, Z, G("Z/2")], 2) == (G("Z (+) Z/2"), Z)

    def test_circle(self):
        assert k_groups_low_dim([Z, Z], 1) == (Z, Z)

    def test_o36(self):
        assert k_groups_low_dim([Z, TRIVIAL, G("(Z/4)^2"), Z], 3) == (G("Z (+) (Z/4)^2"), Z)

    def test_rejects_high_dimension(self):
        with pytest.raises(ValueError):
            k_groups_low_dim([Z] * 5, 4)
