"""Algebraic Cartan model for compact connected groups given by Lie data.

The acting group enters through its Lie algebra (structure constants),
a finite-dimensional graded algebra with the Cartan calculus operators,
and optionally a finite matrix group W for the non-connected part.  The
symmetric algebra on the dual is truncated at polynomial degree P with
explicit safe-range bookkeeping: cohomology is certified for total
degrees <= 2P - (top degree of A).

Conventions: dual generators u_a have cohomological degree 2; the Cartan
differential is d - sum_a u_a (x) iota_a, built on the joint kernel of
the Lie derivatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvariantViolation, NonEquivariantInput, NonInvertibleOrder,
    NotClosedUnderOperators,
)
from .exactalg import Field, Mat, QQ, mat_from_columns, kernel_basis, \
    solve_multi
from .errors import NoSolution
from .homalg import CochainComplex, DoubleComplex, cohomology, total_complex


@dataclass
class LieAlgebraData:
    """Structure constants c[a][b] = [xi_a, xi_b] as sparse maps index -> scalar."""

    dim: int
    structure: tuple
    labels: tuple | None = None

    def __post_init__(self):
        self.structure = tuple(tuple(dict(cell) for cell in row)
                               for row in self.structure)
        if self.labels is None:
            self.labels = tuple(f"xi_{a + 1}" for a in range(self.dim))

    def bracket(self, a: int, b: int) -> dict:
        return self.structure[a][b]

    def validate(self):
        k = self.dim
        if len(self.structure) != k or any(len(r) != k for r in self.structure):
            raise InvariantViolation("structure constant table is not k x k")
        for a in range(k):
            for b in range(k):
                lhs = self.structure[a][b]
                rhs = self.structure[b][a]
                for c in set(lhs) | set(rhs):
                    if lhs.get(c, 0) != -rhs.get(c, 0):
                        raise InvariantViolation(
                            f"antisymmetry fails at [{a},{b}]")
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    acc = {}
                    for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                        for d, coef in self.structure[x][y].items():
                            for e, coef2 in self.structure[d][z].items():
                                acc[e] = acc.get(e, 0) + coef * coef2
                    if any(v != 0 for v in acc.values()):
                        raise InvariantViolation(
                            f"Jacobi identity fails at ({a},{b},{c})")
        return self


def abelian_lie(dim: int) -> LieAlgebraData:
    empty = tuple(tuple({} for _ in range(dim)) for _ in range(dim))
    return LieAlgebraData(dim, empty).validate()


@dataclass
class GDGA:
    """Graded algebra with differential, contractions and Lie derivatives.

    dims[m] is the dimension of the degree-m piece; d[m]: A^m -> A^{m+1};
    iota[a][m]: A^m -> A^{m-1}; L[a][m]: A^m -> A^m.  mul, when given, maps
    (i, j) to the tensor mul[(i, j)][x][y] = sparse vector of x*y in A^{i+j}.
    """

    field: Field
    dims: tuple
    d: tuple
    iota: tuple
    L: tuple
    mul: dict | None = None

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def dmat(self, m: int) -> Mat:
        if 0 <= m < self.top:
            return self.d[m]
        src = self.dims[m] if 0 <= m <= self.top else 0
        return Mat.zero(self.dims[m + 1] if m + 1 <= self.top else 0, src,
                        self.field)

    def iota_mat(self, a: int, m: int) -> Mat:
        if 1 <= m <= self.top:
            return self.iota[a][m - 1]
        return Mat.zero(self.dims[m - 1] if m - 1 >= 0 else 0,
                        self.dims[m] if 0 <= m <= self.top else 0, self.field)

    def l_mat(self, a: int, m: int) -> Mat:
        if 0 <= m <= self.top:
            return self.L[a][m]
        return Mat.zero(0, 0, self.field)

    def product(self, i: int, j: int, x: int, y: int) -> dict:
        if self.mul is None or (i, j) not in self.mul:
            return {}
        return self.mul[(i, j)][x][y]


def validate_gdga(lie: LieAlgebraData, algebra: GDGA) -> dict:
    """Check every Cartan calculus identity; returns an itemised report."""
    lie.validate()
    failures = []
    a_count = lie.dim
    top = algebra.top

    def check(name, cond):
        if not cond:
            failures.append(name)

    for m in range(top + 1):
        if m + 2 <= top:
            check(f"d.d=0 at degree {m}",
                  (algebra.dmat(m + 1) * algebra.dmat(m)).is_zero())
    for a in range(a_count):
        for b in range(a_count):
            for m in range(top + 1):
                lhs = algebra.iota_mat(a, m - 1) * algebra.iota_mat(b, m) + \
                    algebra.iota_mat(b, m - 1) * algebra.iota_mat(a, m)
                check(f"iota_{a} iota_{b} anticommute at degree {m}",
                      lhs.is_zero())
    for a in range(a_count):
        for m in range(top + 1):
            cartan_magic = algebra.dmat(m - 1) * algebra.iota_mat(a, m) + \
                algebra.iota_mat(a, m + 1) * algebra.dmat(m)
            check(f"L_{a} = d iota_{a} + iota_{a} d at degree {m}",
                  cartan_magic == algebra.l_mat(a, m))
    for a in range(a_count):
        for b in range(a_count):
            for m in range(top + 1):
                comm = algebra.l_mat(a, m - 1) * algebra.iota_mat(b, m) + \
                    -(algebra.iota_mat(b, m) * algebra.l_mat(a, m))
                expected = Mat.zero(comm.rows, comm.cols, algebra.field)
                for c, coef in lie.bracket(a, b).items():
                    expected = expected + algebra.iota_mat(c, m).scale(coef)
                check(f"[L_{a}, iota_{b}] at degree {m}", comm == expected)
                comm2 = algebra.l_mat(a, m) * algebra.l_mat(b, m) + \
                    -(algebra.l_mat(b, m) * algebra.l_mat(a, m))
                expected2 = Mat.zero(comm2.rows, comm2.cols, algebra.field)
                for c, coef in lie.bracket(a, b).items():
                    expected2 = expected2 + algebra.l_mat(c, m).scale(coef)
                check(f"[L_{a}, L_{b}] at degree {m}", comm2 == expected2)
    for a in range(a_count):
        for m in range(top + 1):
            comm = algebra.dmat(m) * algebra.l_mat(a, m) + \
                -(algebra.l_mat(a, m + 1) * algebra.dmat(m))
            check(f"[L_{a}, d] = 0 at degree {m}", comm.is_zero())
    if algebra.mul is not None:
        f = algebra.field
        for i in range(top + 1):
            for j in range(top + 1):
                for x in range(algebra.dims[i]):
                    for y in range(algebra.dims[j]):
                        prod = algebra.product(i, j, x, y)
                        lhs = algebra.dmat(i + j).mul_vec(prod) \
                            if i + j <= top else {}
                        rhs = {}
                        dx = algebra.dmat(i).col(x) if algebra.dims[i] else {}
                        for z, coef in dx.items():
                            for w, coef2 in algebra.product(i + 1, j, z, y).items():
                                rhs[w] = f.add(rhs.get(w, 0),
                                               f.mul(coef, coef2))
                        dy = algebra.dmat(j).col(y) if algebra.dims[j] else {}
                        sign = -1 if i % 2 else 1
                        for z, coef in dy.items():
                            for w, coef2 in algebra.product(i, j + 1, x, z).items():
                                rhs[w] = f.add(rhs.get(w, 0),
                                               f.mul(f.mul(f.coerce(sign),
                                                           coef), coef2))
                        keys = set(lhs) | set(rhs)
                        if any(lhs.get(k, 0) != rhs.get(k, 0) for k in keys):
                            failures.append(
                                f"Leibniz fails on basis ({i},{x})*({j},{y})")
    return {"valid": not failures, "failures": failures}


def invariants_subalgebra(lie: LieAlgebraData, algebra: GDGA) -> GDGA:
    """Joint kernel of the Lie derivatives, with the induced operators."""
    f = algebra.field
    top = algebra.top
    bases = []
    for m in range(top + 1):
        if lie.dim == 0 or algebra.dims[m] == 0:
            bases.append([{i: 1} for i in range(algebra.dims[m])])
            continue
        stacked = {}
        offset = 0
        for a in range(lie.dim):
            for (i, j), v in algebra.l_mat(a, m).entries.items():
                stacked[(offset + i, j)] = v
            offset += algebra.dims[m]
        bases.append(kernel_basis(Mat(offset, algebra.dims[m], stacked, f)))
    dims = tuple(len(b) for b in bases)
    basis_mats = [mat_from_columns(b, algebra.dims[m], f)
                  for m, b in enumerate(bases)]

    def restrict(op: Mat, src_m: int, dst_m: int, name: str) -> Mat:
        if dims[src_m] == 0 or op.rows == 0:
            return Mat.zero(dims[dst_m] if 0 <= dst_m <= top else 0,
                            dims[src_m], f)
        images = [op.mul_vec(v) for v in bases[src_m]]
        try:
            coords = solve_multi(basis_mats[dst_m], images)
        except NoSolution as exc:
            raise NotClosedUnderOperators(
                f"{name} does not preserve the invariant subspace "
                f"at degree {src_m}") from exc
        return mat_from_columns(coords, dims[dst_m], f)

    new_d = tuple(restrict(algebra.dmat(m), m, m + 1, "d")
                  for m in range(top))
    new_iota = tuple(
        tuple(restrict(algebra.iota_mat(a, m), m, m - 1, f"iota_{a}")
              for m in range(1, top + 1))
        for a in range(lie.dim))
    new_l = tuple(
        tuple(Mat.zero(dims[m], dims[m], f) for m in range(top + 1))
        for _ in range(lie.dim))
    return GDGA(f, dims, new_d, new_iota, new_l, mul=None)


def monomials(k: int, p: int) -> list:
    """Degree-p monomials in k dual generators, as sorted index tuples."""
    return list(itertools.combinations_with_replacement(range(k), p))


@dataclass
class CartanLayout:
    """Basis bookkeeping for the truncated Cartan complex."""

    lie: LieAlgebraData
    algebra: GDGA
    poly_trunc: int

    def __post_init__(self):
        k = self.lie.dim
        self.monos = [monomials(k, p) for p in range(self.poly_trunc + 1)]
        self.mono_index = [{m: i for i, m in enumerate(level)}
                           for level in self.monos]
        top = self.algebra.top
        self.top_degree = 2 * self.poly_trunc + top
        self.blocks = {}
        self.offsets = {}
        self.dims = []
        for s in range(self.top_degree + 1):
            offset = 0
            blocks = []
            for p in range(self.poly_trunc + 1):
                m = s - 2 * p
                if not 0 <= m <= top:
                    continue
                blocks.append((p, m))
                self.offsets[(s, p)] = offset
                offset += len(self.monos[p]) * self.algebra.dims[m]
            self.blocks[s] = blocks
            self.dims.append(offset)

    def index(self, s: int, p: int, mono: tuple, a: int) -> int:
        m = s - 2 * p
        return self.offsets[(s, p)] + \
            self.mono_index[p][mono] * self.algebra.dims[m] + a


def cartan_complex(lie: LieAlgebraData, algebra: GDGA,
                   poly_trunc: int) -> CochainComplex:
    """Total Cartan complex with differential d - sum_a u_a (x) iota_a.

    The input algebra must already have vanishing Lie derivatives (use
    invariants_subalgebra); otherwise the square-zero check fails.
    """
    lay = CartanLayout(lie, algebra, poly_trunc)
    f = algebra.field
    top = algebra.top
    diffs = []
    for s in range(lay.top_degree):
        entries = {}
        for (p, m) in lay.blocks[s]:
            dmat = algebra.dmat(m)
            for mono_i, mono in enumerate(lay.monos[p]):
                col_base = lay.offsets[(s, p)] + mono_i * algebra.dims[m]
                if m + 1 <= top and (s + 1, p) in lay.offsets:
                    for (r, c), v in dmat.entries.items():
                        row = lay.index(s + 1, p, mono, r)
                        entries[(row, col_base + c)] = v
                if p + 1 <= poly_trunc and m - 1 >= 0:
                    for a in range(lie.dim):
                        imat = algebra.iota_mat(a, m)
                        if imat.is_zero():
                            continue
                        new_mono = tuple(sorted(mono + (a,)))
                        for (r, c), v in imat.entries.items():
                            row = lay.index(s + 1, p + 1, new_mono, r)
                            key = (row, col_base + c)
                            cur = f.add(entries.get(key, 0), f.neg(v))
                            if cur:
                                entries[key] = cur
                            else:
                                entries.pop(key, None)
        diffs.append(Mat(lay.dims[s + 1], lay.dims[s], entries, f))
    boundary = 2 * poly_trunc - top + 1
    return CochainComplex(f, tuple(lay.dims), tuple(diffs),
                          boundary_degree=max(boundary, 0))


def cartan_double_complex(lie: LieAlgebraData, algebra: GDGA,
                          poly_trunc: int) -> DoubleComplex:
    """Blocks (p, q) = S^p (x) A^{q-p}; the (-1)^q totalization sign
    reproduces d - sum u_a iota_a exactly."""
    f = algebra.field
    top = algebra.top
    monos = [monomials(lie.dim, p) for p in range(poly_trunc + 1)]
    mono_index = [{m: i for i, m in enumerate(level)} for level in monos]
    dims = {}
    for p in range(poly_trunc + 1):
        for q in range(poly_trunc + top + 1):
            m = q - p
            dims[(p, q)] = len(monos[p]) * algebra.dims[m] \
                if 0 <= m <= top else 0
    d_h = {}
    d_v = {}
    for p in range(poly_trunc + 1):
        for q in range(poly_trunc + top):
            m = q - p
            if 0 <= m < top:
                entries = {}
                dmat = algebra.dmat(m)
                for mono_i in range(len(monos[p])):
                    col_base = mono_i * algebra.dims[m]
                    row_base = mono_i * algebra.dims[m + 1]
                    for (r, c), v in dmat.entries.items():
                        entries[(row_base + r, col_base + c)] = v
                d_v[(p, q)] = Mat(dims[(p, q + 1)], dims[(p, q)], entries, f)
            else:
                d_v[(p, q)] = Mat.zero(dims[(p, q + 1)], dims[(p, q)], f)
    for p in range(poly_trunc):
        for q in range(poly_trunc + top + 1):
            m = q - p
            entries = {}
            if 1 <= m <= top:
                sign = 1 if (q + 1) % 2 == 0 else -1
                for mono_i, mono in enumerate(monos[p]):
                    col_base = mono_i * algebra.dims[m]
                    for a in range(lie.dim):
                        imat = algebra.iota_mat(a, m)
                        new_mono = tuple(sorted(mono + (a,)))
                        row_base = mono_index[p + 1][new_mono] * \
                            algebra.dims[m - 1]
                        for (r, c), v in imat.entries.items():
                            key = (row_base + r, col_base + c)
                            cur = f.add(entries.get(key, 0),
                                        f.mul(f.coerce(sign), v))
                            if cur:
                                entries[key] = cur
                            else:
                                entries.pop(key, None)
            d_h[(p, q)] = Mat(dims.get((p + 1, q), 0), dims[(p, q)], entries, f)
    return DoubleComplex(f, (0, poly_trunc), (0, poly_trunc + top),
                         dims, d_h, d_v,
                         boundary_total_degree=2 * poly_trunc - top)


def cartan_cohomology(lie: LieAlgebraData, algebra: GDGA, poly_trunc: int,
                      degrees) -> list:
    """Equivariant Betti numbers on the truncation-safe range."""
    inv = invariants_subalgebra(lie, algebra)
    complex_ = cartan_complex(lie, inv, poly_trunc)
    return [cohomology(complex_, s) for s in degrees]


def cartan_E1(lie: LieAlgebraData, algebra: GDGA, poly_trunc: int) -> dict:
    """(p, q) -> dim S^p (x) H^{q-p}(A) for the connected-group convention."""
    inv = invariants_subalgebra(lie, algebra)
    base = CochainComplex(inv.field, inv.dims,
                          tuple(inv.dmat(m) for m in range(inv.top)),
                          boundary_degree=None)
    h_dims = [cohomology(base, m, override=True) for m in range(inv.top + 1)]
    table = {}
    for p in range(poly_trunc + 1):
        s_dim = len(monomials(lie.dim, p))
        for q in range(p, p + inv.top + 1):
            table[(p, q)] = s_dim * h_dims[q - p]
    return table


def _mat_key(m: Mat):
    return (m.rows, m.cols, tuple(sorted(m.entries.items())))


def mulclose_mats(gens: list, limit: int = 4096) -> list:
    """Multiplicative closure of invertible matrices, in BFS order."""
    if not gens:
        return []
    n = gens[0].rows
    f = gens[0].field
    ident = Mat.identity(n, f)
    seen = {_mat_key(ident): ident}
    frontier = [ident]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                prod = w * g
                key = _mat_key(prod)
                if key not in seen:
                    seen[key] = prod
                    new.append(prod)
                    if len(seen) > limit:
                        raise InvariantViolation(
                            "matrix group closure exceeds limit")
        frontier = new
    return list(seen.values())


def sym_power_matrix(w: Mat, p: int, monos: list, mono_index: dict) -> Mat:
    """Action of w on S^p via multiplicative extension of w.u_a = sum w[b,a] u_b."""
    f = w.field
    k = w.rows
    cols = {}
    for mono in monos:
        poly = {(): f.one()}
        for var in mono:
            image = {b: v for (b, a), v in w.entries.items() if a == var}
            new = {}
            for term, coef in poly.items():
                for b, v in image.items():
                    key = tuple(sorted(term + (b,)))
                    cur = f.add(new.get(key, 0), f.mul(coef, v))
                    if cur:
                        new[key] = cur
                    else:
                        new.pop(key, None)
            poly = new
        cols[mono] = poly
    entries = {}
    for mono, poly in cols.items():
        j = mono_index[mono]
        for term, coef in poly.items():
            entries[(mono_index[term], j)] = coef
    return Mat(len(monos), len(monos), entries, f)


def invariant_polynomials(lie: LieAlgebraData, weyl_gens: list,
                          poly_trunc: int, field: Field = QQ) -> list:
    """Per-degree dimensions of the W-invariant polynomials, by exact
    averaging; an empty generator list means trivial W."""
    group = mulclose_mats(weyl_gens) if weyl_gens else \
        [Mat.identity(lie.dim, field)]
    if field.p and len(group) % field.p == 0:
        raise NonInvertibleOrder(
            f"|W| = {len(group)} not invertible in characteristic {field.p}")
    out = []
    inv_order = Fraction(1, len(group))
    for p in range(poly_trunc + 1):
        monos = monomials(lie.dim, p)
        mono_index = {m: i for i, m in enumerate(monos)}
        total = Mat.zero(len(monos), len(monos), field)
        for w in group:
            total = total + sym_power_matrix(w, p, monos, mono_index)
        reynolds = total.scale(field.coerce(inv_order) if field.p == 0
                               else field.inv(field.coerce(len(group))))
        from .exactalg import rank
        out.append(rank(reynolds))
    return out


def _invariant_basis(mats: list, dim: int, field: Field) -> list:
    """Basis of the joint fixed space of the given operators."""
    if not mats:
        return [{i: 1} for i in range(dim)]
    stacked = {}
    offset = 0
    ident = Mat.identity(dim, field)
    for m in mats:
        diff = m + (-ident)
        for (i, j), v in diff.entries.items():
            stacked[(offset + i, j)] = v
        offset += dim
    return kernel_basis(Mat(offset, dim, stacked, field))


@dataclass
class TorusWeylReport:
    degrees: list
    series_invariant_cohomology: list
    series_e_infinity: list
    e1_matches: list
    per_degree_ok: list

    @property
    def ok(self) -> bool:
        return all(self.per_degree_ok) and \
            all(row["ok"] for row in self.e1_matches)

    @property
    def series(self) -> list:
        return self.series_invariant_cohomology


def torus_weyl_check(lie: LieAlgebraData, algebra: GDGA, poly_trunc: int,
                     weyl_dual_gens: list, weyl_algebra_gens: list,
                     degrees=None) -> TorusWeylReport:
    """Invariant-series comparison for a torus with Weyl symmetry.

    weyl_dual_gens: generators acting on the dual of the Lie algebra;
    weyl_algebra_gens: matching generators acting degree-wise on the
    algebra (list of per-degree matrix tuples, aligned with the dual
    generators).  The combined action must commute with the Cartan
    differential; the W-invariant subcomplex is computed and its
    cohomology compared against the E_infinity of the invariant double
    complex, with the E_1 entries checked against the averaged
    (S^p (x) H^{q-p})^W dimensions.
    """
    from .spectra import pages
    f = algebra.field
    inv = invariants_subalgebra(lie, algebra)
    if degrees is None:
        degrees = list(range(max(2 * poly_trunc - inv.top, 0) + 1))
    dc = cartan_double_complex(lie, inv, poly_trunc)

    # close the W action on pairs (dual matrix, per-degree algebra maps)
    if weyl_dual_gens:
        pairs = {}
        ident_pair = (Mat.identity(lie.dim, f),
                      tuple(Mat.identity(inv.dims[m], f)
                            for m in range(inv.top + 1)))
        key0 = (_mat_key(ident_pair[0]),
                tuple(_mat_key(m) for m in ident_pair[1]))
        pairs[key0] = ident_pair
        gens = list(zip(weyl_dual_gens, weyl_algebra_gens))
        frontier = [ident_pair]
        while frontier:
            new = []
            for (wd, wa) in frontier:
                for (gd, ga) in gens:
                    nd = wd * gd
                    na = tuple(wa[m] * ga[m] for m in range(inv.top + 1))
                    key = (_mat_key(nd), tuple(_mat_key(m) for m in na))
                    if key not in pairs:
                        pairs[key] = (nd, na)
                        new.append((nd, na))
                        if len(pairs) > 4096:
                            raise InvariantViolation("W closure exceeds limit")
            frontier = new
        group = list(pairs.values())
    else:
        group = [(Mat.identity(lie.dim, f),
                  tuple(Mat.identity(inv.dims[m], f)
                        for m in range(inv.top + 1)))]
    if f.p and len(group) % f.p == 0:
        raise NonInvertibleOrder("|W| not invertible in the coefficient field")

    # equivariance check: each algebra map must commute with d degree-wise
    for (wd, wa) in group:
        for m in range(inv.top):
            if wa[m + 1] * inv.dmat(m) != inv.dmat(m) * wa[m]:
                raise NonEquivariantInput(
                    "W generator does not commute with the differential")

    # block action of W on the double complex, plus commutation with the
    # Cartan differential (checked mechanically on the truncated data)
    monos = {p: monomials(lie.dim, p) for p in range(poly_trunc + 1)}
    mono_index = {p: {m: i for i, m in enumerate(monos[p])}
                  for p in range(poly_trunc + 1)}

    def block_action(pair, p, q):
        wd, wa = pair
        m = q - p
        if not 0 <= m <= inv.top or dc.dim(p, q) == 0:
            return Mat.zero(dc.dim(p, q), dc.dim(p, q), f)
        from .groupcoh import kron
        sp = sym_power_matrix(wd, p, monos[p], mono_index[p])
        return kron(sp, wa[m])

    inv_bases = {}
    for p in range(dc.p_range[0], dc.p_range[1] + 1):
        for q in range(dc.q_range[0], dc.q_range[1] + 1):
            if dc.dim(p, q) == 0:
                inv_bases[(p, q)] = []
                continue
            gens_here = [block_action(pair, p, q) for pair in group]
            inv_bases[(p, q)] = _invariant_basis(gens_here, dc.dim(p, q), f)

    def restrict(op: Mat, src_key, dst_key, name):
        basis = inv_bases[src_key]
        target = inv_bases[dst_key]
        if not basis:
            return Mat.zero(len(target), 0, f)
        images = [op.mul_vec(v) for v in basis]
        if not target:
            if any(images):
                raise NonEquivariantInput(
                    f"{name} leaves the invariant subcomplex at {src_key}")
            return Mat.zero(0, len(basis), f)
        try:
            coords = solve_multi(
                mat_from_columns(target, op.rows, f), images)
        except NoSolution as exc:
            raise NonEquivariantInput(
                f"{name} leaves the invariant subcomplex at {src_key}") from exc
        return mat_from_columns(coords, len(target), f)

    dims_w = {k: len(v) for k, v in inv_bases.items()}
    d_h_w = {}
    d_v_w = {}
    for (p, q) in list(dc.dims.keys()):
        if p < dc.p_range[1]:
            d_h_w[(p, q)] = restrict(dc.dh(p, q), (p, q), (p + 1, q), "u.iota")
        if q < dc.q_range[1]:
            d_v_w[(p, q)] = restrict(dc.dv(p, q), (p, q), (p, q + 1), "d")
    dc_w = DoubleComplex(f, dc.p_range, dc.q_range, dims_w, d_h_w, d_v_w,
                         boundary_total_degree=dc.boundary_total_degree)

    total_w = total_complex(dc_w)
    series_inv = [cohomology(total_w, s) for s in degrees]

    page_list = pages(dc_w, "columns")
    e1 = next(p for p in page_list if p.r == 1)
    e_inf = page_list[-1]
    sums = {}
    for (p, q), v in e_inf.entries.items():
        sums[p + q] = sums.get(p + q, 0) + v
    series_einf = [sums.get(s, 0) for s in degrees]

    # E_1 identification: averaged dims of (S^p (x) H^{q-p})^W
    base = CochainComplex(f, inv.dims,
                          tuple(inv.dmat(m) for m in range(inv.top)),
                          boundary_degree=None)
    from .homalg import induced_cohomology_matrix
    h_data = {}
    for m in range(inv.top + 1):
        h_data[m] = [induced_cohomology_matrix(base, m, pair[1][m])
                     for pair in group]
    e1_matches = []
    flag = dc_w.boundary_total_degree
    for (p, q), dim in sorted(e1.entries.items()):
        if flag is not None and p + q >= flag:
            continue
        m = q - p
        if not 0 <= m <= inv.top:
            continue
        acc = Fraction(0)
        for idx, pair in enumerate(group):
            sp = sym_power_matrix(pair[0], p, monos[p], mono_index[p])
            tr_sp = sum((v for (i, j), v in sp.entries.items() if i == j),
                        start=f.zero())
            hm = h_data[m][idx]
            tr_h = sum((v for (i, j), v in hm.entries.items() if i == j),
                       start=f.zero())
            acc += Fraction(tr_sp) * Fraction(tr_h)
        expected = acc / len(group)
        assert expected.denominator == 1
        e1_matches.append({"p": p, "q": q, "page": dim,
                           "expected": int(expected),
                           "ok": dim == int(expected)})

    per_degree_ok = [a == b for a, b in zip(series_inv, series_einf)]
    return TorusWeylReport(list(degrees), series_inv, series_einf,
                           e1_matches, per_degree_ok)
