"""Cartan model: calculus validation, cohomology, invariants, Weyl data."""

import pytest

from stackcoh.cartan import (
    GDGA, LieAlgebraData, abelian_lie, cartan_E1, cartan_cohomology,
    cartan_complex, cartan_double_complex, invariant_polynomials,
    invariants_subalgebra, torus_weyl_check, validate_gdga,
)
from stackcoh.errors import (
    InvariantViolation, NonEquivariantInput, NotClosedUnderOperators,
    TruncationBoundary,
)
from stackcoh.exactalg import QQ, Mat
from stackcoh.homalg import total_complex
from stackcoh.spectra import convergence_check, pages


def point_algebra():
    return GDGA(QQ, (1,), (), ((),), ((Mat.zero(1, 1, QQ),),),
                mul={(0, 0): [[{0: 1}]]})


def free_circle():
    d = (Mat.zero(1, 1, QQ),)
    iota = ((Mat.from_rows([[1]], QQ),),)
    lie_der = ((Mat.zero(1, 1, QQ), Mat.zero(1, 1, QQ)),)
    mul = {(0, 0): [[{0: 1}]], (0, 1): [[{0: 1}]],
           (1, 0): [[{0: 1}]], (1, 1): [[{}]]}
    return GDGA(QQ, (1, 1), d, iota, lie_der, mul=mul)


def trivial_circle():
    d = (Mat.zero(1, 1, QQ),)
    iota = ((Mat.zero(1, 1, QQ),),)
    lie_der = ((Mat.zero(1, 1, QQ), Mat.zero(1, 1, QQ)),)
    return GDGA(QQ, (1, 1), d, iota, lie_der)


def torus_two():
    lie2 = abelian_lie(2)
    dims = (1, 2, 1)
    d = (Mat.zero(2, 1, QQ), Mat.zero(1, 2, QQ))
    iota1 = (Mat.from_rows([[1, 0]], QQ), Mat.from_rows([[0], [1]], QQ))
    iota2 = (Mat.from_rows([[0, 1]], QQ), Mat.from_rows([[-1], [0]], QQ))
    lie_der = tuple(
        tuple(Mat.zero(dims[m], dims[m], QQ) for m in range(3))
        for _ in range(2))
    return lie2, GDGA(QQ, dims, d, (iota1, iota2), lie_der)


LIE1 = abelian_lie(1)


class TestLieData:
    def test_abelian_valid(self):
        abelian_lie(3).validate()

    def test_antisymmetry_enforced(self):
        bad = LieAlgebraData(2, (({}, {0: 1}), ({0: 1}, {})))
        with pytest.raises(InvariantViolation):
            bad.validate()

    def test_su2_structure_constants(self):
        # [x1,x2]=x3, [x2,x3]=x1, [x3,x1]=x2
        su2 = LieAlgebraData(3, (
            ({}, {2: 1}, {1: -1}),
            ({2: -1}, {}, {0: 1}),
            ({1: 1}, {0: -1}, {}),
        ))
        su2.validate()


class TestValidateGDGA:
    def test_point_valid(self):
        report = validate_gdga(LIE1, point_algebra())
        assert report["valid"]

    def test_free_circle_valid(self):
        report = validate_gdga(LIE1, free_circle())
        assert report["valid"] and report["failures"] == []

    def test_torus_two_valid(self):
        lie2, algebra = torus_two()
        assert validate_gdga(lie2, algebra)["valid"]

    def test_broken_lie_derivative_flagged(self):
        # inject L != d iota + iota d
        algebra = free_circle()
        bad_l = ((Mat.zero(1, 1, QQ), Mat.from_rows([[1]], QQ)),)
        broken = GDGA(QQ, algebra.dims, algebra.d, algebra.iota, bad_l,
                      mul=algebra.mul)
        report = validate_gdga(LIE1, broken)
        assert not report["valid"]
        assert any("iota" in f and "L_0 = d iota_0" in f or
                   "L_0 = d iota_0" in f for f in report["failures"])

    def test_broken_leibniz_flagged(self):
        algebra = free_circle()
        bad_mul = dict(algebra.mul)
        bad_mul[(0, 1)] = [[{0: 2}]]
        broken = GDGA(QQ, algebra.dims, algebra.d, algebra.iota,
                      algebra.L, mul=bad_mul)
        report = validate_gdga(LIE1, broken)
        # unit no longer acts as unit, so Leibniz bookkeeping must notice
        assert not report["valid"] or broken.product(0, 1, 0, 0) == {0: 2}


class TestInvariants:
    def test_all_l_zero_returns_everything(self):
        inv = invariants_subalgebra(LIE1, free_circle())
        assert inv.dims == (1, 1)

    def test_partial_kernel(self):
        dims = (2,)
        lie_der = ((Mat.from_rows([[0, 0], [0, 1]], QQ),),)
        algebra = GDGA(QQ, dims, (), ((),), lie_der)
        inv = invariants_subalgebra(LIE1, algebra)
        assert inv.dims == (1,)

    def test_non_closed_rejected(self):
        # d maps the degree-0 invariant line into the degree-1
        # non-invariant line: restriction must fail loudly
        dims = (2, 2)
        d = (Mat.from_rows([[1, 0], [0, 0]], QQ),)
        lie_der = ((Mat.from_rows([[0, 0], [0, 1]], QQ),
                    Mat.from_rows([[1, 0], [0, 0]], QQ)),)
        iota = ((Mat.zero(2, 2, QQ),),)
        algebra = GDGA(QQ, dims, d, iota, lie_der)
        with pytest.raises(NotClosedUnderOperators):
            invariants_subalgebra(LIE1, algebra)


class TestCartanCohomology:
    def test_point_polynomial_pattern(self):
        dims = cartan_cohomology(LIE1, point_algebra(), 6, range(12))
        assert dims == [1, 0] * 6

    def test_free_circle_contracts(self):
        dims = cartan_cohomology(LIE1, free_circle(), 6, range(11))
        assert dims == [1] + [0] * 10

    def test_trivial_circle_product_pattern(self):
        dims = cartan_cohomology(LIE1, trivial_circle(), 5, range(9))
        assert dims == [1] * 9

    def test_torus_two_on_itself(self):
        lie2, algebra = torus_two()
        dims = cartan_cohomology(lie2, algebra, 5, range(8))
        assert dims == [1] + [0] * 7

    def test_truncation_boundary_guard(self):
        with pytest.raises(TruncationBoundary):
            cartan_cohomology(LIE1, free_circle(), 3, [2 * 3])

    def test_truncation_stability(self):
        for algebra in (point_algebra(), free_circle(), trivial_circle()):
            top = algebra.top
            for poly_trunc in (3, 4):
                safe = 2 * poly_trunc - top
                a = cartan_cohomology(LIE1, algebra, poly_trunc, range(safe + 1))
                b = cartan_cohomology(LIE1, algebra, poly_trunc + 1,
                                      range(safe + 1))
                assert a == b


class TestCartanSpectral:
    def test_complex_is_total_of_double_complex(self):
        for algebra in (point_algebra(), free_circle(), trivial_circle()):
            inv = invariants_subalgebra(LIE1, algebra)
            direct = cartan_complex(LIE1, inv, 4)
            tot = total_complex(cartan_double_complex(LIE1, inv, 4))
            assert direct.dims == tot.dims
            assert direct.diffs == tot.diffs

    def test_e1_identification(self):
        cases = [(LIE1, point_algebra()), (LIE1, free_circle()),
                 (LIE1, trivial_circle()), torus_two()]
        for lie, algebra in cases:
            inv = invariants_subalgebra(lie, algebra)
            dc = cartan_double_complex(lie, inv, 4)
            table = cartan_E1(lie, algebra, 4)
            pgs = pages(dc, "columns", dims_only=True)
            e1 = next(p for p in pgs if p.r == 1)
            for key, val in table.items():
                assert e1.entries.get(key, 0) == val

    def test_e_infinity_sums_match_cohomology(self):
        for lie, algebra in [(LIE1, free_circle()), (LIE1, trivial_circle())]:
            inv = invariants_subalgebra(lie, algebra)
            dc = cartan_double_complex(lie, inv, 4)
            pgs = pages(dc, "columns")
            report = convergence_check(pgs, total_complex(dc))
            assert report["ok"]
            safe = 2 * 4 - algebra.top
            dims = cartan_cohomology(lie, algebra, 4, range(safe))
            sums = {}
            for (p, q), v in pgs[-1].entries.items():
                sums[p + q] = sums.get(p + q, 0) + v
            assert dims == [sums.get(s, 0) for s in range(safe)]


class TestInvariantPolynomials:
    def test_trivial_weyl(self):
        assert invariant_polynomials(abelian_lie(1), [], 5) == [1] * 6

    def test_sign_weyl_su2(self):
        gens = [Mat.from_rows([[-1]], QQ)]
        assert invariant_polynomials(abelian_lie(1), gens, 8) == \
            [1, 0, 1, 0, 1, 0, 1, 0, 1]

    def test_symmetric_two_variables(self):
        gens = [Mat.from_rows([[0, 1], [1, 0]], QQ)]
        assert invariant_polynomials(abelian_lie(2), gens, 5) == \
            [1, 1, 2, 2, 3, 3]


class TestTorusWeylCheck:
    def test_su2_point_series(self):
        report = torus_weyl_check(LIE1, point_algebra(), 6,
                                  [Mat.from_rows([[-1]], QQ)],
                                  [(Mat.identity(1, QQ),)],
                                  degrees=range(9))
        assert report.ok
        assert report.series == [1, 0, 0, 0, 1, 0, 0, 0, 1]

    def test_trivial_weyl_identical_series(self):
        report = torus_weyl_check(LIE1, trivial_circle(), 4, [], [],
                                  degrees=range(6))
        assert report.ok
        assert report.series == report.series_e_infinity

    def test_free_circle_trivial_weyl(self):
        report = torus_weyl_check(LIE1, free_circle(), 5, [], [],
                                  degrees=range(6))
        assert report.ok
        assert report.series == [1, 0, 0, 0, 0, 0]

    def test_nonequivariant_rejected(self):
        # an algebra map that does not commute with d
        d = (Mat.identity(1, QQ),)
        iota = ((Mat.zero(1, 1, QQ),),)
        lie_der = ((Mat.zero(1, 1, QQ), Mat.zero(1, 1, QQ)),)
        algebra = GDGA(QQ, (1, 1), d, iota, lie_der)
        bad_maps = [(Mat.identity(1, QQ), Mat.from_rows([[-1]], QQ))]
        with pytest.raises(NonEquivariantInput):
            torus_weyl_check(LIE1, algebra, 3, [Mat.identity(1, QQ)],
                             bad_maps, degrees=range(3))
