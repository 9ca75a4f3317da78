"""Truncated semi-simplicial sets, finite groupoids, nerves and cochains.

Only face maps are stored: the homotopy type in use is the fat geometric
realisation, which quotients by face relations alone, so degeneracy data
would be dead weight.  Every constructed object is checked exhaustively
against the face identities before use.

Cells are kept as opaque, canonically ordered labels; a nerve cell at
level n is the tuple of its n morphism indices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvariantViolation, SimplicialIdentityFailure, TruncationMismatch,
)
from .exactalg import Field, Mat
from .homalg import CochainComplex, DoubleComplex


@dataclass
class SemiSimplicialSet:
    """Truncated face-only simplicial object.

    cells[n] lists the level-n cell labels; faces[n][i][c] is the index in
    cells[n-1] of the i-th face (0 <= i <= n) of cell c.  faces[0] is empty.
    """

    cells: tuple
    faces: tuple

    def __post_init__(self):
        self.cells = tuple(tuple(level) for level in self.cells)
        self.faces = tuple(tuple(tuple(fm) for fm in level)
                           for level in self.faces)
        if len(self.faces) != len(self.cells):
            raise InvariantViolation("faces and cells level counts differ")
        for n in range(1, len(self.cells)):
            if len(self.faces[n]) != n + 1:
                raise SimplicialIdentityFailure(
                    f"level {n} must have {n + 1} face maps")
            for i, fm in enumerate(self.faces[n]):
                if len(fm) != len(self.cells[n]):
                    raise SimplicialIdentityFailure(
                        f"face map {i} at level {n} has wrong length")
                for target in fm:
                    if not 0 <= target < len(self.cells[n - 1]):
                        raise SimplicialIdentityFailure(
                            f"face target out of range at level {n}")

    @property
    def trunc(self) -> int:
        return len(self.cells) - 1

    def size(self, n: int) -> int:
        return len(self.cells[n]) if 0 <= n <= self.trunc else 0

    def face(self, n: int, i: int, c: int) -> int:
        return self.faces[n][i][c]

    def index(self, n: int, label) -> int:
        return self.cells[n].index(label)

    def validate(self):
        """Exhaustive check of the identities d_i d_j = d_{j-1} d_i, i < j."""
        for n in range(2, self.trunc + 1):
            for c in range(self.size(n)):
                for j in range(1, n + 1):
                    for i in range(j):
                        lhs = self.face(n - 1, i, self.face(n, j, c))
                        rhs = self.face(n - 1, j - 1, self.face(n, i, c))
                        if lhs != rhs:
                            raise SimplicialIdentityFailure(
                                f"d_{i} d_{j} != d_{j - 1} d_{i} on cell {c} "
                                f"at level {n}")
        return self


@dataclass
class FiniteGroupoid:
    """Finite groupoid: comp[(a, b)] = a after b, defined iff src(a) = tgt(b)."""

    objects: tuple
    mor_src: tuple
    mor_tgt: tuple
    comp: dict
    ids: tuple
    inv: tuple

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.mor_src)

    def validate(self):
        n_obj, n_mor = self.n_objects, self.n_morphisms
        if len(self.ids) != n_obj or len(self.inv) != n_mor:
            raise InvariantViolation("ids/inv table size mismatch")
        for m in range(n_mor):
            if not (0 <= self.mor_src[m] < n_obj and 0 <= self.mor_tgt[m] < n_obj):
                raise InvariantViolation(f"morphism {m} endpoints out of range")
        for (a, b), c in self.comp.items():
            if self.mor_src[a] != self.mor_tgt[b]:
                raise InvariantViolation(f"comp defined on non-composable ({a},{b})")
            if self.mor_src[c] != self.mor_src[b] or self.mor_tgt[c] != self.mor_tgt[a]:
                raise InvariantViolation(f"comp endpoints wrong at ({a},{b})")
        for a in range(n_mor):
            for b in range(n_mor):
                if (self.mor_src[a] == self.mor_tgt[b]) != ((a, b) in self.comp):
                    raise InvariantViolation(
                        f"comp domain wrong at ({a},{b})")
        for x in range(n_obj):
            e = self.ids[x]
            if self.mor_src[e] != x or self.mor_tgt[e] != x:
                raise InvariantViolation(f"identity of object {x} has wrong ends")
        for m in range(n_mor):
            if self.comp[(m, self.ids[self.mor_src[m]])] != m:
                raise InvariantViolation(f"right identity fails at {m}")
            if self.comp[(self.ids[self.mor_tgt[m]], m)] != m:
                raise InvariantViolation(f"left identity fails at {m}")
            i = self.inv[m]
            if self.comp[(i, m)] != self.ids[self.mor_src[m]] or \
                    self.comp[(m, i)] != self.ids[self.mor_tgt[m]]:
                raise InvariantViolation(f"inverse fails at {m}")
        for a in range(n_mor):
            for b in range(n_mor):
                if (a, b) not in self.comp:
                    continue
                for c in range(n_mor):
                    if (b, c) not in self.comp:
                        continue
                    if self.comp[(self.comp[(a, b)], c)] != \
                            self.comp[(a, self.comp[(b, c)])]:
                        raise InvariantViolation(
                            f"associativity fails at ({a},{b},{c})")
        return self


def groupoid_from_tables(objects, src, tgt, comp) -> FiniteGroupoid:
    """Build a groupoid from raw tables, deriving identities and inverses."""
    n_obj = len(objects)
    n_mor = len(src)
    ids = [None] * n_obj
    for m in range(n_mor):
        if src[m] == tgt[m] and comp.get((m, m)) == m:
            # neutral candidate: must be neutral on everything it composes with
            if all(comp.get((m, b)) == b for b in range(n_mor)
                   if src[b] == src[m] and (m, b) in comp) and \
               all(comp.get((a, m)) == a for a in range(n_mor)
                   if tgt[a] == src[m] and (a, m) in comp):
                ids[src[m]] = m
    if any(e is None for e in ids):
        raise InvariantViolation("some object has no identity morphism")
    inv = [None] * n_mor
    for m in range(n_mor):
        for cand in range(n_mor):
            if comp.get((cand, m)) == ids[src[m]] and \
                    comp.get((m, cand)) == ids[tgt[m]]:
                inv[m] = cand
                break
    if any(i is None for i in inv):
        raise InvariantViolation("some morphism has no inverse")
    g = FiniteGroupoid(tuple(objects), tuple(src), tuple(tgt), dict(comp),
                       tuple(ids), tuple(inv))
    return g.validate()


def trivial_groupoid(k: int, labels=None) -> FiniteGroupoid:
    """Disjoint union of k points: only identity morphisms."""
    objects = tuple(labels) if labels is not None else tuple(range(k))
    comp = {(m, m): m for m in range(k)}
    return FiniteGroupoid(objects, tuple(range(k)), tuple(range(k)), comp,
                          tuple(range(k)), tuple(range(k))).validate()


def pair_groupoid(k: int) -> FiniteGroupoid:
    """Objects 0..k-1 with exactly one morphism between any ordered pair."""
    objects = tuple(range(k))
    mor = [(i, j) for i in range(k) for j in range(k)]  # (tgt, src) pairs
    index = {m: idx for idx, m in enumerate(mor)}
    src = tuple(s for (_, s) in mor)
    tgt = tuple(t for (t, _) in mor)
    comp = {}
    for a, (ta, sa) in enumerate(mor):
        for b, (tb, sb) in enumerate(mor):
            if sa == tb:
                comp[(a, b)] = index[(ta, sb)]
    ids = tuple(index[(i, i)] for i in range(k))
    inv = tuple(index[(s, t)] for (t, s) in mor)
    return FiniteGroupoid(objects, src, tgt, comp, ids, inv).validate()


def nerve(g: FiniteGroupoid, n_top: int) -> SemiSimplicialSet:
    """Composable chains (m_1, .., m_n) with src(m_i) = tgt(m_{i+1}).

    d_0 drops the first arrow, d_n the last (moving the base point), inner
    faces compose adjacent arrows.
    """
    cells = [tuple(("obj", x) for x in range(g.n_objects))]
    extendable = {x: [m for m in range(g.n_morphisms) if g.mor_tgt[m] == x]
                  for x in range(g.n_objects)}
    level = [(m,) for m in range(g.n_morphisms)]
    for n in range(1, n_top + 1):
        cells.append(tuple(level))
        nxt = []
        for chain in level:
            last_src = g.mor_src[chain[-1]]
            for m in extendable[last_src]:
                nxt.append(chain + (m,))
        level = nxt

    faces = [()]
    for n in range(1, n_top + 1):
        prev_index = {c: i for i, c in enumerate(cells[n - 1])}
        level_faces = []
        for i in range(n + 1):
            fm = []
            for chain in cells[n]:
                if n == 1:
                    m = chain[0]
                    target = ("obj", g.mor_src[m] if i == 0 else g.mor_tgt[m])
                elif i == 0:
                    target = chain[1:]
                elif i == n:
                    target = chain[:-1]
                else:
                    target = chain[:i - 1] + (g.comp[(chain[i - 1], chain[i])],) \
                        + chain[i + 1:]
                fm.append(prev_index[target])
            level_faces.append(tuple(fm))
        faces.append(tuple(level_faces))
    return SemiSimplicialSet(tuple(cells), tuple(faces)).validate()


def cochains(s: SemiSimplicialSet, field: Field,
             module_dim: int = 1) -> CochainComplex:
    """Field-valued cochains; the differential is the alternating face sum.

    module_dim > 1 gives vector-valued (untwisted) cochains.
    """
    s.validate()
    dims = [s.size(n) * module_dim for n in range(s.trunc + 1)]
    diffs = []
    for n in range(s.trunc):
        entries = {}
        for c in range(s.size(n + 1)):
            for i in range(n + 2):
                tgt = s.face(n + 1, i, c)
                sign = -1 if i % 2 else 1
                for t in range(module_dim):
                    key = (c * module_dim + t, tgt * module_dim + t)
                    cur = entries.get(key, 0) + sign
                    if cur:
                        entries[key] = cur
                    else:
                        entries.pop(key, None)
        diffs.append(Mat(dims[n + 1], dims[n], entries, field))
    labels = s.cells if module_dim == 1 else None
    return CochainComplex(field, tuple(dims), tuple(diffs), labels=labels,
                          boundary_degree=s.trunc)


@dataclass
class BiSemiSimplicialSet:
    """Bi-truncated face-only bisimplicial object.

    cells[(p, n)] lists cells; faces_h[(p, n)][i] maps to (p-1, n) for
    0 <= i <= p, faces_v[(p, n)][j] maps to (p, n-1) for 0 <= j <= n.
    """

    trunc_h: int
    trunc_v: int
    cells: dict
    faces_h: dict
    faces_v: dict

    def size(self, p: int, n: int) -> int:
        if 0 <= p <= self.trunc_h and 0 <= n <= self.trunc_v:
            return len(self.cells[(p, n)])
        return 0

    def face_h(self, p: int, n: int, i: int, c: int) -> int:
        return self.faces_h[(p, n)][i][c]

    def face_v(self, p: int, n: int, j: int, c: int) -> int:
        return self.faces_v[(p, n)][j][c]

    def validate(self):
        for p in range(self.trunc_h + 1):
            for n in range(self.trunc_v + 1):
                count = self.size(p, n)
                if p >= 1 and len(self.faces_h[(p, n)]) != p + 1:
                    raise SimplicialIdentityFailure(
                        f"horizontal face count at {(p, n)}")
                if n >= 1 and len(self.faces_v[(p, n)]) != n + 1:
                    raise SimplicialIdentityFailure(
                        f"vertical face count at {(p, n)}")
                # horizontal identities
                if p >= 2:
                    for c in range(count):
                        for j in range(1, p + 1):
                            for i in range(j):
                                lhs = self.face_h(p - 1, n, i,
                                                  self.face_h(p, n, j, c))
                                rhs = self.face_h(p - 1, n, j - 1,
                                                  self.face_h(p, n, i, c))
                                if lhs != rhs:
                                    raise SimplicialIdentityFailure(
                                        f"horizontal identity at {(p, n)}")
                if n >= 2:
                    for c in range(count):
                        for j in range(1, n + 1):
                            for i in range(j):
                                lhs = self.face_v(p, n - 1, i,
                                                  self.face_v(p, n, j, c))
                                rhs = self.face_v(p, n - 1, j - 1,
                                                  self.face_v(p, n, i, c))
                                if lhs != rhs:
                                    raise SimplicialIdentityFailure(
                                        f"vertical identity at {(p, n)}")
                if p >= 1 and n >= 1:
                    for c in range(count):
                        for i in range(p + 1):
                            for j in range(n + 1):
                                lhs = self.face_v(p - 1, n, j,
                                                  self.face_h(p, n, i, c))
                                rhs = self.face_h(p, n - 1, i,
                                                  self.face_v(p, n, j, c))
                                if lhs != rhs:
                                    raise SimplicialIdentityFailure(
                                        f"faces do not commute at {(p, n)}")
        return self


def diagonal(b: BiSemiSimplicialSet) -> SemiSimplicialSet:
    """Levels (n, n) with d_i = d_i^H d_i^V; truncations must agree."""
    if b.trunc_h != b.trunc_v:
        raise TruncationMismatch(
            f"trunc_h={b.trunc_h} != trunc_v={b.trunc_v}")
    n_top = b.trunc_h
    cells = [tuple(b.cells[(n, n)]) for n in range(n_top + 1)]
    faces = [()]
    for n in range(1, n_top + 1):
        level_faces = []
        for i in range(n + 1):
            fm = []
            for c in range(b.size(n, n)):
                via_v = b.face_v(n, n, i, c)
                fm.append(b.face_h(n, n - 1, i, via_v))
            level_faces.append(tuple(fm))
        faces.append(tuple(level_faces))
    return SemiSimplicialSet(tuple(cells), tuple(faces)).validate()


def total_cochains(b: BiSemiSimplicialSet, field: Field,
                   module_dim: int = 1) -> DoubleComplex:
    """Functions on cells[(p, n)] with commuting alternating-sum differentials.

    The truncation flag marks total degrees >= min(trunc) - 1 as
    boundary-unreliable for spectral sequence reports.
    """
    b.validate()
    dims = {}
    d_h = {}
    d_v = {}
    for p in range(b.trunc_h + 1):
        for n in range(b.trunc_v + 1):
            dims[(p, n)] = b.size(p, n) * module_dim

    def face_matrix(src_dim, dst_dim, n_faces, face_fn):
        entries = {}
        for c in range(src_dim):
            for i in range(n_faces):
                tgt = face_fn(i, c)
                sign = -1 if i % 2 else 1
                for t in range(module_dim):
                    key = (c * module_dim + t, tgt * module_dim + t)
                    cur = entries.get(key, 0) + sign
                    if cur:
                        entries[key] = cur
                    else:
                        entries.pop(key, None)
        return entries

    for p in range(b.trunc_h):
        for n in range(b.trunc_v + 1):
            entries = face_matrix(
                b.size(p + 1, n), b.size(p, n), p + 2,
                lambda i, c: b.face_h(p + 1, n, i, c))
            d_h[(p, n)] = Mat(dims[(p + 1, n)], dims[(p, n)], entries, field)
    for p in range(b.trunc_h + 1):
        for n in range(b.trunc_v):
            entries = face_matrix(
                b.size(p, n + 1), b.size(p, n), n + 2,
                lambda j, c: b.face_v(p, n + 1, j, c))
            d_v[(p, n)] = Mat(dims[(p, n + 1)], dims[(p, n)], entries, field)

    return DoubleComplex(field, (0, b.trunc_h), (0, b.trunc_v), dims, d_h, d_v,
                         boundary_total_degree=min(b.trunc_h, b.trunc_v) - 1)


def product_bisimplicial(s1: SemiSimplicialSet,
                         s2: SemiSimplicialSet) -> BiSemiSimplicialSet:
    """External product: cells[(p, n)] = cells_1[p] x cells_2[n]."""
    cells = {}
    faces_h = {}
    faces_v = {}
    for p in range(s1.trunc + 1):
        for n in range(s2.trunc + 1):
            pairs = [(a, b) for a in range(s1.size(p)) for b in range(s2.size(n))]
            cells[(p, n)] = tuple((s1.cells[p][a], s2.cells[n][b])
                                  for a, b in pairs)
            n2 = s2.size(n)
            if p >= 1:
                faces_h[(p, n)] = tuple(
                    tuple(s1.face(p, i, a) * n2 + b for a, b in pairs)
                    for i in range(p + 1))
            if n >= 1:
                faces_v[(p, n)] = tuple(
                    tuple(a * s2.size(n - 1) + s2.face(n, j, b) for a, b in pairs)
                    for j in range(n + 1))
    return BiSemiSimplicialSet(s1.trunc, s2.trunc, cells, faces_h,
                               faces_v).validate()


def cycle_space(k: int, n_top: int) -> SemiSimplicialSet:
    """The k-gon graph with its degenerate simplices up to level n_top.

    Level n holds the k vertex cells ("v", i) and, for each directed edge
    i -> i+1 and jump position 1 <= j <= n, the cell ("e", i, j); the fat
    realisation has the homotopy type of the circle for every k >= 2 and
    the cochain cohomology is (1, 1, 0, ...) in certified degrees.
    """
    if k < 2:
        raise ValueError("k >= 2 required")
    cells = []
    faces = [()]
    for n in range(n_top + 1):
        level = [("v", i) for i in range(k)]
        if n >= 1:
            level += [("e", i, j) for i in range(k) for j in range(1, n + 1)]
        cells.append(tuple(level))
    for n in range(1, n_top + 1):
        prev_index = {c: i for i, c in enumerate(cells[n - 1])}
        level_faces = []
        for l in range(n + 1):
            fm = []
            for cell in cells[n]:
                if cell[0] == "v":
                    fm.append(prev_index[cell])
                    continue
                _, i, j = cell
                if l < j:
                    target = ("v", (i + 1) % k) if j == 1 else ("e", i, j - 1)
                else:
                    target = ("v", i) if (j == n and l == n) else ("e", i, j)
                fm.append(prev_index[target])
            level_faces.append(tuple(fm))
        faces.append(tuple(level_faces))
    return SemiSimplicialSet(tuple(cells), tuple(faces)).validate()
