"""Bounded cochain complexes, double and triple complexes, totalization.

Double complexes are stored with commuting differentials; the sign
(-1)^q on the horizontal differential is inserted at totalization, so
D^2 = 0 is a checkable postcondition rather than an input convention.
Complexes built from truncated simplicial data carry a boundary degree:
cohomology at or beyond it is refused unless explicitly overridden.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation, TruncationBoundary
from .exactalg import Field, Mat, cohomology_dim


@dataclass
class CochainComplex:
    """Nonnegatively graded complex with degrees 0..N.

    diffs[n] maps degree n to degree n+1 and has shape dims[n+1] x dims[n];
    boundary_degree is the first degree whose cohomology the truncation no
    longer certifies (None when every degree is certified).
    """

    field: Field
    dims: tuple
    diffs: tuple
    labels: tuple | None = None
    boundary_degree: int | None = None

    def __post_init__(self):
        self.dims = tuple(self.dims)
        self.diffs = tuple(self.diffs)
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise InvariantViolation(
                f"expected {len(self.dims) - 1} differentials, got {len(self.diffs)}")
        for n, d in enumerate(self.diffs):
            if d.shape != (self.dims[n + 1], self.dims[n]):
                raise InvariantViolation(
                    f"diff[{n}] has shape {d.shape}, expected "
                    f"({self.dims[n + 1]}, {self.dims[n]})")
            if d.field != self.field:
                raise InvariantViolation("field mismatch in differential")
        for n in range(len(self.diffs) - 1):
            if not (self.diffs[n + 1] * self.diffs[n]).is_zero():
                raise InvariantViolation(f"d.d != 0 at degree {n}")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def diff(self, n: int) -> Mat:
        """Outgoing differential at degree n (zero map at the top)."""
        if 0 <= n < len(self.diffs):
            return self.diffs[n]
        return Mat.zero(0, self.dims[n], self.field)

    def diff_into(self, n: int) -> Mat:
        """Incoming differential at degree n (zero map at the bottom)."""
        if n == 0:
            return Mat.zero(self.dims[0], 0, self.field)
        return self.diffs[n - 1]


def cohomology(c: CochainComplex, n: int, override: bool = False,
               reps: bool = False):
    """Degree-n cohomology dimension (optionally with representative cocycles).

    Raises TruncationBoundary at degrees the truncation does not certify,
    unless override is set.
    """
    if not 0 <= n <= c.top_degree:
        raise TruncationBoundary(
            f"degree {n} outside complex range 0..{c.top_degree}")
    bound = c.boundary_degree if c.boundary_degree is not None else c.top_degree
    if n >= bound and not override:
        raise TruncationBoundary(
            f"degree {n} is beyond the certified range (< {bound}); "
            "pass override=True to force")
    return cohomology_dim(c.diff(n), c.diff_into(n), reps=reps)


def betti_table(c: CochainComplex, degrees) -> list[int]:
    return [cohomology(c, n) for n in degrees]


def induced_cohomology_matrix(c: CochainComplex, n: int, f_mat: Mat) -> Mat:
    """Matrix on H^n induced by a degree-n operator commuting with d.

    Representatives are the deterministic cocycle complement; coordinates
    are solved against an independent image basis extended by the
    representatives, so the output is reproducible.
    """
    from .exactalg import Sieve, mat_from_columns, solve_multi
    field = c.field
    dim, reps = cohomology(c, n, override=True, reps=True)
    sieve = Sieve(field)
    image_cols = []
    for col in c.diff_into(n).columns():
        residual, _ = sieve.insert(col)
        if residual:
            image_cols.append(col)
    basis = mat_from_columns(image_cols + reps, c.dims[n], field)
    images = [f_mat.mul_vec(v) for v in reps]
    coords = solve_multi(basis, images)
    entries = {}
    for col_idx, x in enumerate(coords):
        for row_idx, v in x.items():
            if row_idx >= len(image_cols):
                entries[(row_idx - len(image_cols), col_idx)] = v
    return Mat(dim, dim, entries, field)


def euler_characteristic(c: CochainComplex) -> int:
    return sum((-1) ** n * d for n, d in enumerate(c.dims))


@dataclass
class DoubleComplex:
    """Rectangle of blocks with commuting stored differentials.

    d_h[(p, q)]: block (p, q) -> (p+1, q);  d_v[(p, q)]: (p, q) -> (p, q+1).
    Missing maps at the rectangle edge are zero.  boundary_total_degree is
    the first total degree p+q flagged as truncation-unreliable.
    """

    field: Field
    p_range: tuple
    q_range: tuple
    dims: dict
    d_h: dict
    d_v: dict
    boundary_total_degree: int | None = None

    def __post_init__(self):
        pmin, pmax = self.p_range
        qmin, qmax = self.q_range
        for p in range(pmin, pmax + 1):
            for q in range(qmin, qmax + 1):
                if (p, q) not in self.dims:
                    self.dims[(p, q)] = 0
        for (p, q), m in self.d_h.items():
            if m.shape != (self.dim(p + 1, q), self.dim(p, q)):
                raise InvariantViolation(f"d_h shape wrong at {(p, q)}")
        for (p, q), m in self.d_v.items():
            if m.shape != (self.dim(p, q + 1), self.dim(p, q)):
                raise InvariantViolation(f"d_v shape wrong at {(p, q)}")
        for p in range(pmin, pmax):
            for q in range(qmin, qmax + 1):
                if p + 1 < pmax:
                    comp = self.dh(p + 1, q) * self.dh(p, q)
                    if not comp.is_zero():
                        raise InvariantViolation(f"d_h^2 != 0 at {(p, q)}")
        for p in range(pmin, pmax + 1):
            for q in range(qmin, qmax):
                if q + 1 < qmax:
                    comp = self.dv(p, q + 1) * self.dv(p, q)
                    if not comp.is_zero():
                        raise InvariantViolation(f"d_v^2 != 0 at {(p, q)}")
        for p in range(pmin, pmax):
            for q in range(qmin, qmax):
                left = self.dv(p + 1, q) * self.dh(p, q)
                right = self.dh(p, q + 1) * self.dv(p, q)
                if left != right:
                    raise InvariantViolation(
                        f"stored differentials do not commute at {(p, q)}")

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def dh(self, p: int, q: int) -> Mat:
        m = self.d_h.get((p, q))
        if m is None:
            return Mat.zero(self.dim(p + 1, q), self.dim(p, q), self.field)
        return m

    def dv(self, p: int, q: int) -> Mat:
        m = self.d_v.get((p, q))
        if m is None:
            return Mat.zero(self.dim(p, q + 1), self.dim(p, q), self.field)
        return m

    def transpose(self) -> "DoubleComplex":
        return DoubleComplex(
            self.field, self.q_range, self.p_range,
            {(q, p): d for (p, q), d in self.dims.items()},
            {(q, p): m for (p, q), m in self.d_v.items()},
            {(q, p): m for (p, q), m in self.d_h.items()},
            self.boundary_total_degree)


class TotalLayout:
    """Block bookkeeping for the total complex of a double complex.

    Within total degree n the blocks (p, q), p+q = n, are laid out in
    ascending p, so the column filtration F_p is a contiguous tail.
    """

    def __init__(self, dc: DoubleComplex):
        self.dc = dc
        pmin, pmax = dc.p_range
        qmin, qmax = dc.q_range
        self.n_min = pmin + qmin
        self.n_max = pmax + qmax
        self.blocks = {}
        self.offsets = {}
        self.total_dims = {}
        for n in range(self.n_min, self.n_max + 1):
            blocks = []
            offset = 0
            for p in range(pmin, pmax + 1):
                q = n - p
                if qmin <= q <= qmax:
                    blocks.append((p, q))
                    self.offsets[(p, q)] = offset
                    offset += dc.dim(p, q)
            self.blocks[n] = blocks
            self.total_dims[n] = offset

    def total_matrix(self, n: int) -> Mat:
        """D = d_v + (-1)^q d_h from total degree n to n+1."""
        dc = self.dc
        entries = {}
        targets = set(self.blocks.get(n + 1, []))
        for (p, q) in self.blocks.get(n, []):
            src_off = self.offsets[(p, q)]
            if (p, q + 1) in targets:
                dst = self.offsets[(p, q + 1)]
                for (i, j), v in dc.dv(p, q).entries.items():
                    entries[(dst + i, src_off + j)] = v
            if (p + 1, q) in targets:
                dst = self.offsets[(p + 1, q)]
                sign = -1 if q % 2 else 1
                for (i, j), v in dc.dh(p, q).entries.items():
                    val = v if sign == 1 else dc.field.neg(v)
                    key = (dst + i, src_off + j)
                    if key in entries:
                        s = dc.field.add(entries[key], val)
                        if s:
                            entries[key] = s
                        else:
                            del entries[key]
                    else:
                        entries[key] = val
        return Mat(self.total_dims.get(n + 1, 0), self.total_dims.get(n, 0),
                   entries, dc.field)


def total_complex(dc: DoubleComplex) -> CochainComplex:
    """Totalize with the (-1)^q convention; asserts D^2 = 0.

    Degrees are shifted so the result starts at 0 even if the rectangle
    does not contain the origin.
    """
    layout = TotalLayout(dc)
    dims = [layout.total_dims[n] for n in range(layout.n_min, layout.n_max + 1)]
    diffs = [layout.total_matrix(n) for n in range(layout.n_min, layout.n_max)]
    for n in range(len(diffs) - 1):
        if not (diffs[n + 1] * diffs[n]).is_zero():
            raise InvariantViolation(f"totalization failed: D^2 != 0 at {n}")
    # page reports flag total degree N-1 conservatively, but the total
    # complex itself is complete through degree N, so cohomology is
    # certified strictly below N = boundary_total_degree + 1
    bound = dc.boundary_total_degree
    if bound is not None:
        bound = bound + 1 - layout.n_min
    return CochainComplex(dc.field, tuple(dims), tuple(diffs),
                          boundary_degree=bound)


@dataclass
class TripleComplex:
    """Box of blocks with three pairwise commuting differentials.

    d[axis][(a, b, c)] raises the chosen axis by one.
    """

    field: Field
    ranges: tuple          # ((amin, amax), (bmin, bmax), (cmin, cmax))
    dims: dict
    d: tuple               # (d0, d1, d2), each dict keyed by (a, b, c)

    def dim(self, key) -> int:
        return self.dims.get(key, 0)

    def dmat(self, axis: int, key) -> Mat:
        m = self.d[axis].get(key)
        if m is None:
            target = list(key)
            target[axis] += 1
            return Mat.zero(self.dim(tuple(target)), self.dim(key), self.field)
        return m

    def validate(self):
        axes = range(3)
        keys = [key for key in self.dims if self.dim(key)]
        for key in keys:
            for ax in axes:
                step1 = self.dmat(ax, key)
                target = list(key)
                target[ax] += 1
                step2 = self.dmat(ax, tuple(target))
                if not (step2 * step1).is_zero():
                    raise InvariantViolation(f"d{ax}^2 != 0 at {key}")
            for ax1 in axes:
                for ax2 in axes:
                    if ax1 >= ax2:
                        continue
                    t1 = list(key)
                    t1[ax1] += 1
                    t2 = list(key)
                    t2[ax2] += 1
                    left = self.dmat(ax2, tuple(t1)) * self.dmat(ax1, key)
                    right = self.dmat(ax1, tuple(t2)) * self.dmat(ax2, key)
                    if left != right:
                        raise InvariantViolation(
                            f"d{ax1} and d{ax2} do not commute at {key}")


def collapse_triple(tc: TripleComplex, pair=(0, 1),
                    boundary_total_degree: int | None = None) -> DoubleComplex:
    """Totalize two axes of a triple complex into the horizontal index.

    pair = (i, j): axis i acts as the inner horizontal and carries the sign
    (-1)^(degree along axis j); the remaining axis becomes the vertical of
    the returned DoubleComplex.  Blocks inside a collapsed degree are laid
    out by ascending axis-i degree.
    """
    i, j = pair
    if i == j or not (0 <= i < 3 and 0 <= j < 3):
        raise ValueError("pair must name two distinct axes")
    k = ({0, 1, 2} - {i, j}).pop()
    tc.validate()
    (imin, imax) = tc.ranges[i]
    (jmin, jmax) = tc.ranges[j]
    (kmin, kmax) = tc.ranges[k]

    # layout of each collapsed block (s, t): sub-blocks by ascending axis-i
    offsets = {}
    dims = {}
    for s in range(imin + jmin, imax + jmax + 1):
        for t in range(kmin, kmax + 1):
            offset = 0
            for a in range(imin, imax + 1):
                b = s - a
                if not jmin <= b <= jmax:
                    continue
                key = _make_key(i, j, k, a, b, t)
                offsets[(s, t, a)] = offset
                offset += tc.dim(key)
            dims[(s, t)] = offset

    d_h = {}
    d_v = {}
    f = tc.field
    for s in range(imin + jmin, imax + jmax + 1):
        for t in range(kmin, kmax + 1):
            h_entries = {}
            v_entries = {}
            for a in range(imin, imax + 1):
                b = s - a
                if not jmin <= b <= jmax:
                    continue
                key = _make_key(i, j, k, a, b, t)
                src = offsets[(s, t, a)]
                # axis j step: (s, t) -> (s+1, t), lands in sub-block a
                if b + 1 <= jmax:
                    dst = offsets.get((s + 1, t, a))
                    if dst is not None:
                        for (r, c), v in tc.dmat(j, key).entries.items():
                            h_entries[(dst + r, src + c)] = v
                # axis i step with sign (-1)^b: lands in sub-block a+1
                if a + 1 <= imax:
                    dst = offsets.get((s + 1, t, a + 1))
                    if dst is not None:
                        sign = -1 if b % 2 else 1
                        for (r, c), v in tc.dmat(i, key).entries.items():
                            val = v if sign == 1 else f.neg(v)
                            kk = (dst + r, src + c)
                            if kk in h_entries:
                                sm = f.add(h_entries[kk], val)
                                if sm:
                                    h_entries[kk] = sm
                                else:
                                    del h_entries[kk]
                            else:
                                h_entries[kk] = val
                # axis k step: (s, t) -> (s, t+1)
                if t + 1 <= kmax:
                    dst = offsets.get((s, t + 1, a))
                    if dst is not None:
                        for (r, c), v in tc.dmat(k, key).entries.items():
                            v_entries[(dst + r, src + c)] = v
            if s + 1 <= imax + jmax:
                d_h[(s, t)] = Mat(dims.get((s + 1, t), 0), dims[(s, t)],
                                  h_entries, f)
            if t + 1 <= kmax:
                d_v[(s, t)] = Mat(dims.get((s, t + 1), 0), dims[(s, t)],
                                  v_entries, f)

    return DoubleComplex(f, (imin + jmin, imax + jmax), (kmin, kmax),
                         dims, d_h, d_v,
                         boundary_total_degree=boundary_total_degree)


def _make_key(i, j, k, a, b, t):
    key = [0, 0, 0]
    key[i] = a
    key[j] = b
    key[k] = t
    return tuple(key)


@dataclass
class CoefficientComplex:
    """Bounded complex of G-modules with equivariant differentials.

    modules[r] must expose .dim and .rho (element index -> Mat); the
    differential diffs[r] maps module r to module r+1.
    """

    modules: tuple
    diffs: tuple

    def __post_init__(self):
        self.modules = tuple(self.modules)
        self.diffs = tuple(self.diffs)
        if len(self.diffs) != max(len(self.modules) - 1, 0):
            raise InvariantViolation("coefficient complex: differential count")
        group = self.modules[0].group
        for mod in self.modules:
            if mod.group is not group and mod.group != group:
                raise InvariantViolation("coefficient complex: group mismatch")
        for r, d in enumerate(self.diffs):
            src, dst = self.modules[r], self.modules[r + 1]
            if d.shape != (dst.dim, src.dim):
                raise InvariantViolation(f"coefficient differential {r} shape")
            for gi in range(len(group.elements)):
                left = d * src.rho_mat(gi)
                right = dst.rho_mat(gi) * d
                if left != right:
                    from .errors import NonEquivariantCoefficients
                    raise NonEquivariantCoefficients(
                        f"coefficient differential {r} is not equivariant "
                        f"for element {group.elements[gi]}")
        for r in range(len(self.diffs) - 1):
            if not (self.diffs[r + 1] * self.diffs[r]).is_zero():
                raise InvariantViolation("coefficient complex: d.d != 0")

    @property
    def length(self) -> int:
        return len(self.modules)
