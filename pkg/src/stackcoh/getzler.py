"""Group-cochain model in the discrete regime.

Cochains are maps G^p -> (total simplicial cochain space with module
values).  The group coboundary drops the first argument, multiplies
adjacent arguments with alternating signs, and twists the last slot
through the action on both the base point and the module; the companion
contraction operator differentiates along one-parameter subgroups and is
identically zero here because the Lie algebra is zero.  The total
differential follows the displayed sign pattern (group coboundary plus
(-1)^p times the simplicial one) and is validated by squaring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    DegreeMismatch, InvariantViolation, UnsupportedRegime,
)
from .exactalg import Mat
from .homalg import CochainComplex, cohomology
from .spectra import borel_double_complex


@dataclass
class GetzlerContext:
    """Ambient data: action, coefficient module, truncation."""

    sa: object            # SimplicialGAction
    module: object        # GModule over the same group
    n_top: int

    def __post_init__(self):
        if self.module.group != self.sa.group:
            raise InvariantViolation("module group does not match the action")
        s = self.sa.space
        self.sizes = [s.size(n) for n in range(self.n_top + 1)]
        self.offsets = []
        off = 0
        for n in range(self.n_top + 1):
            self.offsets.append(off)
            off += self.sizes[n] * self.module.dim
        self.value_dim = off
        self._dc = None

    @property
    def group(self):
        return self.sa.group

    def value_index(self, n: int, cell: int, coord: int = 0) -> int:
        return self.offsets[n] + cell * self.module.dim + coord

    def value_component(self, index: int):
        for n in range(self.n_top, -1, -1):
            if index >= self.offsets[n]:
                rest = index - self.offsets[n]
                return n, rest // self.module.dim, rest % self.module.dim
        raise IndexError(index)

    def double_complex(self):
        if self._dc is None:
            self._dc = borel_double_complex(self.sa, self.module, self.n_top)
        return self._dc

    def twist(self, gi: int, vec: dict) -> dict:
        """Left action of gi^-1 on module-valued cochains: pull the base
        point through gi and the value through rho(gi^-1)."""
        g = self.group
        rho = self.module.rho[g.inverse(gi)]
        out = {}
        f = self.module.field
        for idx, v in vec.items():
            n, cell, coord = self.value_component(idx)
            moved = self.sa.act(gi, n, cell)
            for (r, c), u in rho.entries.items():
                if c != coord:
                    continue
                key = self.value_index(n, moved, r)
                cur = f.add(out.get(key, 0), f.mul(u, v))
                if cur:
                    out[key] = cur
                else:
                    out.pop(key, None)
        return out

    def cochain(self, p: int, table: dict) -> "GetzlerCochain":
        return GetzlerCochain(self, p, table)

    def basis_cochains(self, p: int):
        for t in itertools.product(range(self.group.order), repeat=p):
            for idx in range(self.value_dim):
                yield GetzlerCochain(self, p, {t: {idx: 1}})


@dataclass
class GetzlerCochain:
    """Table of value vectors indexed by p-tuples of group elements.

    The total-degree bookkeeping is s = p + m + n with m = 0 in this
    set-level model (no positive form degree) and no polynomial part.
    """

    ctx: GetzlerContext
    p: int
    table: dict

    def __post_init__(self):
        clean = {}
        for t, vec in self.table.items():
            if len(t) != self.p:
                raise DegreeMismatch(
                    f"table key {t} does not have length {self.p}")
            vec = {i: v for i, v in vec.items() if v}
            if vec:
                clean[t] = vec
        self.table = clean

    def value(self, t: tuple) -> dict:
        return dict(self.table.get(tuple(t), {}))

    def is_zero(self) -> bool:
        return not self.table

    def total_degrees(self) -> set:
        """Total degrees s = p + n of the nonzero components."""
        out = set()
        for vec in self.table.values():
            for idx in vec:
                n, _, _ = self.ctx.value_component(idx)
                out.add(self.p + n)
        return out

    def __eq__(self, other):
        return (isinstance(other, GetzlerCochain) and self.p == other.p
                and self.ctx is other.ctx and self.table == other.table)


def dbar(f_cochain: GetzlerCochain) -> GetzlerCochain:
    """Group coboundary: raise the group degree by one.

    (dbar f)(g_1..g_{p+1}) = f(g_2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
    + (-1)^{p+1} (g_{p+1}^{-1} . f(g_1..g_p)).
    """
    ctx = f_cochain.ctx
    g = ctx.group
    p = f_cochain.p
    field = ctx.module.field
    out = {}

    def add_into(t, vec, sign):
        if not vec:
            return
        acc = out.setdefault(t, {})
        for i, v in vec.items():
            cur = field.add(acc.get(i, 0),
                            field.mul(field.coerce(sign), v))
            if cur:
                acc[i] = cur
            else:
                acc.pop(i, None)

    for t in itertools.product(range(g.order), repeat=p + 1):
        add_into(t, f_cochain.value(t[1:]), 1)
        for i in range(1, p + 1):
            merged = t[:i - 1] + (g.mul[t[i - 1]][t[i]],) + t[i + 1:]
            add_into(t, f_cochain.value(merged), -1 if i % 2 else 1)
        twisted = ctx.twist(t[p], f_cochain.value(t[:p]))
        add_into(t, twisted, -1 if (p + 1) % 2 else 1)
    return GetzlerCochain(ctx, p + 1, out)


def iota_bar(f_cochain: GetzlerCochain, lie=None) -> GetzlerCochain:
    """Contraction along the Lie algebra: zero in the discrete regime.

    Rejects positive-dimensional Lie data instead of approximating the
    smooth cochain spaces it would require.
    """
    if lie is not None and getattr(lie, "dim", 0) > 0:
        raise UnsupportedRegime(
            "contraction requires a zero-dimensional Lie algebra here")
    if f_cochain.p == 0:
        return GetzlerCochain(f_cochain.ctx, 0, {})
    return GetzlerCochain(f_cochain.ctx, f_cochain.p - 1, {})


def total_differential_matrices(ctx: GetzlerContext,
                                max_total: int | None = None) -> tuple:
    """Degree-s matrices of dbar + (-1)^p d_simplicial on the graded pieces.

    Returns (dims, diffs); block (p, n) sits at total degree p + n, laid
    out by ascending p, and the square of the assembled differential is
    asserted to vanish.
    """
    dc = ctx.double_complex()
    if max_total is None:
        max_total = 2 * ctx.n_top
    n_min, n_max = 0, min(2 * ctx.n_top, max_total)
    blocks = {}
    offsets = {}
    dims = []
    for s in range(n_max + 1):
        offset = 0
        blks = []
        for p in range(0, s + 1):
            n = s - p
            if n > ctx.n_top or p > ctx.n_top:
                continue
            blks.append((p, n))
            offsets[(p, n)] = offset
            offset += dc.dim(p, n)
        blocks[s] = blks
        dims.append(offset)
    diffs = []
    field = ctx.module.field
    for s in range(n_max):
        entries = {}
        targets = set(blocks[s + 1])
        for (p, n) in blocks[s]:
            src = offsets[(p, n)]
            if (p + 1, n) in targets:
                dst = offsets[(p + 1, n)]
                for (r, c), v in dc.dh(p, n).entries.items():
                    entries[(dst + r, src + c)] = v
            if (p, n + 1) in targets:
                dst = offsets[(p, n + 1)]
                sign = -1 if p % 2 else 1
                for (r, c), v in dc.dv(p, n).entries.items():
                    val = v if sign == 1 else field.neg(v)
                    entries[(dst + r, src + c)] = val
        diffs.append(Mat(dims[s + 1], dims[s], entries, field))
    for s in range(len(diffs) - 1):
        if not (diffs[s + 1] * diffs[s]).is_zero():
            raise InvariantViolation(
                f"total differential fails to square to zero at degree {s}")
    return tuple(dims), tuple(diffs)


def getzler_total_cohomology(a, coeff, degrees, n_top: int | None = None) -> list:
    """Cohomology of the total complex, degree by degree.

    Agrees with the homotopy-quotient computation exactly; the assembly
    uses the displayed sign placement and the squared differential is
    checked mechanically.
    """
    from .spectra import _as_module
    from .stackact import as_simplicial_action
    degrees = list(degrees)
    if n_top is None:
        n_top = max(degrees) + 2
    sa = as_simplicial_action(a, n_top)
    module = _as_module(coeff, sa.group)
    ctx = GetzlerContext(sa, module, n_top)
    dims, diffs = total_differential_matrices(ctx, max_total=n_top + 1)
    complex_ = CochainComplex(module.field, dims, diffs,
                              boundary_degree=n_top)
    return [cohomology(complex_, s) for s in degrees]


def dbar_matrix(ctx: GetzlerContext, p: int) -> Mat:
    """Matrix of dbar on full-table cochains of group degree p.

    Block-diagonal over the simplicial levels: exactly the horizontal
    differentials of the underlying double complex.
    """
    dc = ctx.double_complex()
    order = ctx.group.order
    field = ctx.module.field
    src_dim = (order ** p) * ctx.value_dim
    dst_dim = (order ** (p + 1)) * ctx.value_dim
    entries = {}
    for n in range(ctx.n_top + 1):
        block = dc.dh(p, n)
        src_cells = ctx.sizes[n] * ctx.module.dim
        dst_cells = src_cells
        for (r, c), v in block.entries.items():
            t_dst, rest_dst = divmod(r, dst_cells)
            t_src, rest_src = divmod(c, src_cells)
            row = t_dst * ctx.value_dim + ctx.offsets[n] + rest_dst
            col = t_src * ctx.value_dim + ctx.offsets[n] + rest_src
            entries[(row, col)] = v
    return Mat(dst_dim, src_dim, entries, field)
