"""Semi-simplicial sets, groupoids, nerves, diagonals."""

import pytest

from stackcoh.errors import (
    InvariantViolation, SimplicialIdentityFailure, TruncationMismatch,
)
from stackcoh.exactalg import GF, QQ
from stackcoh.homalg import cohomology, total_complex
from stackcoh.simplicial import (
    BiSemiSimplicialSet, SemiSimplicialSet, cochains, cycle_space, diagonal,
    nerve, pair_groupoid, product_bisimplicial, total_cochains,
    trivial_groupoid,
)

F2 = GF(2)


class TestGroupoids:
    def test_trivial(self):
        g = trivial_groupoid(3)
        assert g.n_objects == 3 and g.n_morphisms == 3

    def test_pair(self):
        g = pair_groupoid(2)
        assert g.n_objects == 2 and g.n_morphisms == 4

    def test_validation_catches_bad_comp(self):
        g = pair_groupoid(2)
        bad = dict(g.comp)
        # corrupt one composite
        key = next(k for k in bad if bad[k] != g.ids[0])
        bad[key] = (bad[key] + 1) % g.n_morphisms
        broken = type(g)(g.objects, g.mor_src, g.mor_tgt, bad, g.ids, g.inv)
        with pytest.raises(InvariantViolation):
            broken.validate()


class TestNerve:
    def test_point_groupoid_levels(self):
        s = nerve(trivial_groupoid(1), 3)
        assert [s.size(n) for n in range(4)] == [1, 1, 1, 1]

    def test_pair_groupoid_levels(self):
        s = nerve(pair_groupoid(2), 2)
        assert [s.size(n) for n in range(3)] == [2, 4, 8]

    def test_face_identities_exhaustive(self):
        nerve(pair_groupoid(3), 4).validate()

    def test_one_object_group_levels(self):
        # Z/2 as a one-object groupoid
        from stackcoh.stackact import cyclic_group, one_object_groupoid
        g = one_object_groupoid(cyclic_group(2))
        s = nerve(g, 2)
        assert [s.size(n) for n in range(3)] == [1, 2, 4]


class TestCochains:
    def test_point(self):
        c = cochains(nerve(trivial_groupoid(1), 4), QQ)
        assert cohomology(c, 0) == 1
        assert [cohomology(c, n) for n in range(1, 4)] == [0, 0, 0]

    def test_pair_groupoid_is_morita_trivial(self):
        for k in (2, 3):
            c = cochains(nerve(pair_groupoid(k), 4), QQ)
            assert cohomology(c, 0) == 1
            assert [cohomology(c, n) for n in range(1, 4)] == [0, 0, 0]

    def test_z2_nerve_rational_vanishing(self):
        from stackcoh.stackact import cyclic_group, one_object_groupoid
        s = nerve(one_object_groupoid(cyclic_group(2)), 5)
        c = cochains(s, QQ)
        assert cohomology(c, 0) == 1
        assert [cohomology(c, n) for n in range(1, 5)] == [0, 0, 0, 0]

    def test_z2_nerve_mod2_tower(self):
        # cross-checked against the bar-resolution oracle in test_groupcoh
        from stackcoh.stackact import cyclic_group, one_object_groupoid
        s = nerve(one_object_groupoid(cyclic_group(2)), 6)
        c = cochains(s, F2)
        assert [cohomology(c, n) for n in range(6)] == [1] * 6

    def test_cycle_space_is_a_circle(self):
        for k in (2, 3, 4):
            s = cycle_space(k, 5)
            c = cochains(s, QQ)
            assert [cohomology(c, n) for n in range(5)] == [1, 1, 0, 0, 0]
            c2 = cochains(s, F2)
            assert [cohomology(c2, n) for n in range(5)] == [1, 1, 0, 0, 0]

    def test_cycle_space_levels(self):
        s = cycle_space(4, 3)
        assert [s.size(n) for n in range(4)] == [4, 8, 12, 16]


def point_space(n_top):
    return nerve(trivial_groupoid(1), n_top)


class TestBisimplicial:
    def test_product_point_point(self):
        b = product_bisimplicial(point_space(2), point_space(2))
        d = diagonal(b)
        assert [d.size(n) for n in range(3)] == [1, 1, 1]

    def test_diagonal_requires_equal_truncations(self):
        b = product_bisimplicial(point_space(2), point_space(3))
        with pytest.raises(TruncationMismatch):
            diagonal(b)

    def test_diagonal_of_nerve_times_point(self):
        from stackcoh.stackact import cyclic_group, one_object_groupoid
        s = nerve(one_object_groupoid(cyclic_group(2)), 3)
        b = product_bisimplicial(s, point_space(3))
        d = diagonal(b)
        assert [d.size(n) for n in range(4)] == [s.size(n) for n in range(4)]

    def test_columns_reproduce_nerve_cochains(self):
        from stackcoh.stackact import cyclic_group, one_object_groupoid
        s = nerve(one_object_groupoid(cyclic_group(2)), 3)
        b = product_bisimplicial(s, point_space(3))
        dc = total_cochains(b, F2)
        nerve_c = cochains(s, F2)
        for p in range(4):
            assert dc.dim(p, 0) == nerve_c.dims[p]

    def test_eilenberg_zilber_product_of_circles(self):
        # torus: diagonal of S^1 x S^1 must match the totalization
        s = cycle_space(2, 4)
        b = product_bisimplicial(s, s)
        d = cochains(diagonal(b), QQ)
        tot = total_complex(total_cochains(b, QQ))
        for n in range(4):
            assert cohomology(d, n) == cohomology(tot, n)
        # the torus answer itself
        assert [cohomology(d, n) for n in range(4)] == [1, 2, 1, 0]

    def test_validation_catches_broken_commutation(self):
        s = cycle_space(2, 2)
        b = product_bisimplicial(s, s)
        # corrupt one horizontal face entry
        fh = {k: [list(fm) for fm in v] for k, v in b.faces_h.items()}
        key = (1, 1)
        fh[key][0][0] = (fh[key][0][0] + 1) % b.size(0, 1)
        broken = BiSemiSimplicialSet(b.trunc_h, b.trunc_v, b.cells, fh, b.faces_v)
        with pytest.raises(SimplicialIdentityFailure):
            broken.validate()


def test_semisimplicial_rejects_bad_identity():
    # two vertices, one edge with both faces equal -- fine; then break level 2
    cells = (("a",), ("e",), ("t",))
    faces = ((), ((0,), (0,)), ((0,), (0,), (0,)))
    SemiSimplicialSet(cells, faces).validate()
    bad_faces = ((), ((0,), (0,)), ((0,), (0,)))
    with pytest.raises(SimplicialIdentityFailure):
        SemiSimplicialSet(cells, bad_faces)
