"""First extension spaces: dimensions, middle terms, class transport,
the paired block maps and their dimension identity."""

import itertools

import pytest

from extsym.counting import iter_submodules
from extsym.ext import (ExtError, beta_map, beta_prime_map, beta_flag_maps,
                        ext1_space, ext_dim, ext_symmetry_audit, Flag,
                        flag_symmetry_identity, image_first_block_dim,
                        kernel_projection_dim, middle_term, transport_class,
                        trivial_flag_step)
from extsym.fields import GF
from extsym.linalg import Mat, mat_mul
from extsym.modules import (direct_sum, hom_dim, is_isomorphic, reduce_module,
                            sub_quotient, witness_from_rows)


class TestDimensions:
    def test_a2_matrix(self, a2):
        _, mods = a2
        order = ["S1", "S2", "P1", "P2"]
        want = {("S1", "S2"): 1, ("S2", "S1"): 1}
        for la, lb in itertools.product(order, repeat=2):
            assert ext_dim(mods[la], mods[lb]) == want.get((la, lb), 0)

    def test_three_vertex(self, three_vertex):
        _, s = three_vertex
        assert ext_dim(s["S1"], s["S2"]) == 1
        assert ext_dim(s["S2"], s["S1"]) == 0
        assert ext_dim(s["S2"], s["S3"]) == 1
        assert ext_dim(s["S3"], s["S2"]) == 1

    def test_two_loop_self_extensions(self, two_loop):
        _, mods = two_loop
        assert ext_dim(mods["S"], mods["S"]) == 2

    def test_additive_in_both_arguments(self, a2):
        _, mods = a2
        s12 = direct_sum(mods["S1"], mods["S2"])
        for probe in mods.values():
            assert ext_dim(s12, probe) == \
                ext_dim(mods["S1"], probe) + ext_dim(mods["S2"], probe)
            assert ext_dim(probe, s12) == \
                ext_dim(probe, mods["S1"]) + ext_dim(probe, mods["S2"])

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_dims_stable_under_reduction(self, a2, p):
        _, mods = a2
        for la, lb in itertools.product(mods, repeat=2):
            assert ext_dim(reduce_module(mods[la], p),
                           reduce_module(mods[lb], p)) == \
                ext_dim(mods[la], mods[lb])


class TestMiddleTerm:
    def test_nonzero_class_is_a_nonsplit_extension(self, a2):
        _, mods = a2
        space = ext1_space(mods["S1"], mods["S2"])
        assert space.dim == 1
        coords = (space.field.one,)
        L, incl, proj = middle_term(space, coords)
        assert is_isomorphic(L, mods["P1"])[0]
        # inclusion then projection is zero (exactness at the middle)
        for i in range(len(L.dims)):
            comp = mat_mul(space.field, proj[i], incl[i])
            assert all(space.field.is_zero(x)
                       for row in comp.rows for x in row)

    def test_zero_class_splits(self, a2):
        _, mods = a2
        space = ext1_space(mods["S1"], mods["S2"])
        L, _, _ = middle_term(space, space.zero_class())
        assert is_isomorphic(L, direct_sum(mods["S2"], mods["S1"]))[0]

    def test_reduce_roundtrip(self, a2):
        _, mods = a2
        space = ext1_space(mods["S1"], mods["S2"])
        coords = (space.field.one,)
        assert space.reduce(space.class_tuple(coords)) == coords
        assert space.reduce(space.class_tuple(space.zero_class())) == \
            space.zero_class()


class TestTransport:
    def test_identity_maps_fix_classes(self, a2):
        _, mods = a2
        space = ext1_space(mods["S1"], mods["S2"])
        field = space.field
        ident = tuple(Mat(((field.one,),) if d else (), d, d)
                      for d in mods["S2"].dims)
        coords = (field.one,)
        assert transport_class(coords, space, space, ident, "pushout") == \
            coords

    def test_zero_map_kills_classes(self, a2):
        _, mods = a2
        space = ext1_space(mods["S1"], mods["S2"])
        field = space.field
        zero_maps = tuple(Mat(tuple((field.zero,) * d for _ in range(d)),
                              d, d) for d in mods["S2"].dims)
        coords = (field.one,)
        assert transport_class(coords, space, space, zero_maps, "pushout") \
            == space.zero_class()

    def test_side_mismatch_rejected(self, a2):
        _, mods = a2
        s12 = ext1_space(mods["S1"], mods["S2"])
        s21 = ext1_space(mods["S2"], mods["S1"])
        with pytest.raises(ExtError):
            transport_class((s12.field.one,), s12, s21, (), "pushout")


def _submodule_with_incl(m, rows_by_vertex):
    wit = witness_from_rows(m, rows_by_vertex)
    sub, _, incl, _ = sub_quotient(m, wit)
    return sub, incl


class TestBlockMapIdentity:
    """For every pair of submodules M1 <= M, N1 <= N the two block maps
    satisfy: dim(first-block projection of ker beta') +
    dim{v : (v, 0) in im beta} = dim Ext^1(M, N)."""

    @pytest.mark.parametrize("la,lb", [("S1", "S2"), ("S2", "S1"),
                                       ("P1", "P2"), ("S1", "P1")])
    def test_grassmannian_form(self, a2, la, lb):
        _, mods = a2
        p = 5
        m = reduce_module(mods[la], p)
        n = reduce_module(mods[lb], p)
        field = m.field
        target = ext_dim(m, n)
        e_ranges = [range(d + 1) for d in m.dims]
        f_ranges = [range(d + 1) for d in n.dims]
        checked = 0
        for e1 in itertools.product(*e_ranges):
            for rows_m in iter_submodules(m, e1):
                m1, m1_incl = _submodule_with_incl(m, rows_m)
                for e2 in itertools.product(*f_ranges):
                    for rows_n in iter_submodules(n, e2):
                        n1, n1_incl = _submodule_with_incl(n, rows_n)
                        bp = beta_map(n, m, n1, n1_incl, m1, m1_incl)
                        bq = beta_prime_map(m, n, m1, m1_incl, n1, n1_incl)
                        a = kernel_projection_dim(field, bq.matrix,
                                                  bq.src_mn.dim)
                        b = image_first_block_dim(field, bp.matrix,
                                                  bp.dst_nm.dim)
                        assert a + b == target
                        checked += 1
        assert checked >= 4

    def test_flag_form(self, a2):
        _, mods = a2
        p = 3
        m = reduce_module(direct_sum(mods["S1"], mods["S2"]), p)
        n = reduce_module(mods["P1"], p)
        target = ext_dim(m, n)
        # length-2 flags: pick any codimension-(1,0) or (0,1) submodule step
        for e1 in [(1, 0), (0, 1)]:
            for rows_m in iter_submodules(m, e1):
                m1, m1_incl = _submodule_with_incl(m, rows_m)
                zm, zincl = _submodule_with_incl(
                    m1, tuple(() for _ in m1.dims))
                flag_m = Flag(m, ((m1, m1_incl), (zm, zincl)), (None, None))
                for e2 in [(1, 1), (1, 0), (0, 1)]:
                    for rows_n in iter_submodules(n, e2):
                        n1, n1_incl = _submodule_with_incl(n, rows_n)
                        zn, zincl_n = _submodule_with_incl(
                            n1, tuple(() for _ in n1.dims))
                        flag_n = Flag(n, ((n1, n1_incl), (zn, zincl_n)),
                                      (None, None))
                        pair = beta_flag_maps(flag_m, flag_n)
                        a, b, d = flag_symmetry_identity(pair, m.field)
                        assert d == target
                        assert a + b == target


class TestSymmetryAudit:
    def test_a2_all_pairs_symmetric(self, a2):
        _, mods = a2
        labels = sorted(mods)
        pairs = [(mods[a], mods[b])
                 for a, b in itertools.product(labels, repeat=2)]
        rep = ext_symmetry_audit(
            pairs, labels=[(a, b)
                           for a, b in itertools.product(labels, repeat=2)])
        assert rep.passed
        assert len(rep.rows) == 16

    def test_asymmetric_pair_detected(self, three_vertex):
        _, s = three_vertex
        rep = ext_symmetry_audit([(s["S1"], s["S2"])],
                                 labels=[("S1", "S2")])
        assert not rep.passed
        assert rep.failures()[0].dim_mn == 1
        assert rep.failures()[0].dim_nm == 0
