"""Finite group actions on groupoid atlases and the Borel construction.

The homotopy-quotient machinery runs on a level-wise group action on a
truncated semi-simplicial set (SimplicialGAction); a functorial action on
a groupoid atlas induces one on the nerve.  Face conventions follow the
two-sided bar construction and are never trusted: every constructed
object passes the exhaustive simplicial-identity check or the build
aborts with SimplicialIdentityFailure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    InvariantViolation, NotFunctorial, SimplicialIdentityFailure,
)
from .exactalg import Field
from .homalg import cohomology, total_complex
from .simplicial import (
    BiSemiSimplicialSet, FiniteGroupoid, SemiSimplicialSet, cochains,
    nerve, total_cochains, trivial_groupoid,
)


@dataclass
class FiniteGroup:
    """Multiplication table group; mul[i][j] is the index of g_i g_j."""

    elements: tuple
    mul: tuple

    def __post_init__(self):
        self.elements = tuple(self.elements)
        self.mul = tuple(tuple(row) for row in self.mul)

    @property
    def order(self) -> int:
        return len(self.elements)

    def validate(self):
        n = self.order
        if len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise InvariantViolation("multiplication table is not n x n")
        for i in range(n):
            for j in range(n):
                if not 0 <= self.mul[i][j] < n:
                    raise InvariantViolation(
                        f"product ({i},{j}) out of range")
        identity = None
        for e in range(n):
            if all(self.mul[e][i] == i and self.mul[i][e] == i
                   for i in range(n)):
                identity = e
                break
        if identity is None:
            raise InvariantViolation("no identity element")
        for i in range(n):
            if not any(self.mul[i][j] == identity and self.mul[j][i] == identity
                       for j in range(n)):
                raise InvariantViolation(f"element {i} has no inverse")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mul[self.mul[i][j]][k] != self.mul[i][self.mul[j][k]]:
                        raise InvariantViolation(
                            f"associativity fails at ({i},{j},{k})")
        return self

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.mul[e][i] == i for i in range(self.order)):
                return e
        raise InvariantViolation("no identity element")

    def inverse(self, i: int) -> int:
        e = self.identity
        for j in range(self.order):
            if self.mul[i][j] == e:
                return j
        raise InvariantViolation(f"element {i} has no inverse")

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup)
                and self.elements == other.elements and self.mul == other.mul)


def cyclic_group(n: int) -> FiniteGroup:
    elements = tuple(f"r{i}" if i else "e" for i in range(n))
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(elements, mul).validate()


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    elements = tuple("".join(str(x) for x in p) for p in perms)
    mul = tuple(tuple(index[tuple(a[b[i]] for i in range(n))] for b in perms)
                for a in perms)
    return FiniteGroup(elements, mul).validate()


def group_from_table(elements, mul) -> FiniteGroup:
    return FiniteGroup(tuple(elements), tuple(tuple(r) for r in mul)).validate()


def subgroup(group: FiniteGroup, members) -> tuple[FiniteGroup, list]:
    """Subgroup on the given element indices; returns (group, index list)."""
    members = sorted(set(members))
    pos = {m: i for i, m in enumerate(members)}
    for a in members:
        for b in members:
            if group.mul[a][b] not in pos:
                raise InvariantViolation("subset is not closed")
    mul = tuple(tuple(pos[group.mul[a][b]] for b in members) for a in members)
    sub = FiniteGroup(tuple(group.elements[m] for m in members), mul).validate()
    return sub, members


def one_object_groupoid(group: FiniteGroup) -> FiniteGroupoid:
    n = group.order
    comp = {(a, b): group.mul[a][b] for a in range(n) for b in range(n)}
    return FiniteGroupoid((0,), (0,) * n, (0,) * n, comp,
                          (group.identity,),
                          tuple(group.inverse(i) for i in range(n))).validate()


@dataclass
class GroupoidAction:
    """A finite group acting strictly and functorially on a groupoid atlas."""

    group: FiniteGroup
    atlas: FiniteGroupoid
    act_obj: tuple    # per element: permutation of objects
    act_mor: tuple    # per element: permutation of morphisms

    def __post_init__(self):
        self.act_obj = tuple(tuple(p) for p in self.act_obj)
        self.act_mor = tuple(tuple(p) for p in self.act_mor)

    def validate(self):
        g, a = self.group, self.atlas
        g.validate()
        a.validate()
        if len(self.act_obj) != g.order or len(self.act_mor) != g.order:
            raise NotFunctorial("one permutation per group element required")
        e = g.identity
        if self.act_obj[e] != tuple(range(a.n_objects)) or \
                self.act_mor[e] != tuple(range(a.n_morphisms)):
            raise NotFunctorial("identity element must act as the identity")
        for gi in range(g.order):
            obj = self.act_obj[gi]
            mor = self.act_mor[gi]
            if sorted(obj) != list(range(a.n_objects)) or \
                    sorted(mor) != list(range(a.n_morphisms)):
                raise NotFunctorial(f"element {g.elements[gi]} is not a bijection")
            for m in range(a.n_morphisms):
                if a.mor_src[mor[m]] != obj[a.mor_src[m]] or \
                        a.mor_tgt[mor[m]] != obj[a.mor_tgt[m]]:
                    raise NotFunctorial(
                        f"element {g.elements[gi]} does not preserve ends of "
                        f"morphism {m}")
            for x in range(a.n_objects):
                if mor[a.ids[x]] != a.ids[obj[x]]:
                    raise NotFunctorial(
                        f"element {g.elements[gi]} does not preserve identities")
            for (m1, m2), m3 in a.comp.items():
                if a.comp[(mor[m1], mor[m2])] != mor[m3]:
                    raise NotFunctorial(
                        f"element {g.elements[gi]} does not preserve composition")
        for gi in range(g.order):
            for hi in range(g.order):
                gh = g.mul[gi][hi]
                for x in range(a.n_objects):
                    if self.act_obj[gi][self.act_obj[hi][x]] != self.act_obj[gh][x]:
                        raise NotFunctorial("object action is not a group action")
                for m in range(a.n_morphisms):
                    if self.act_mor[gi][self.act_mor[hi][m]] != self.act_mor[gh][m]:
                        raise NotFunctorial("morphism action is not a group action")
        return self


@dataclass
class SimplicialGAction:
    """Level-wise action on a semi-simplicial set, commuting with faces."""

    group: FiniteGroup
    space: SemiSimplicialSet
    maps: tuple   # maps[gi][n][cell index] -> cell index

    def __post_init__(self):
        self.maps = tuple(tuple(tuple(level) for level in per_g)
                          for per_g in self.maps)

    def act(self, gi: int, n: int, c: int) -> int:
        return self.maps[gi][n][c]

    def validate(self):
        g, s = self.group, self.space
        s.validate()
        if len(self.maps) != g.order:
            raise NotFunctorial("one map per group element required")
        e = g.identity
        for n in range(s.trunc + 1):
            size = s.size(n)
            if self.maps[e][n] != tuple(range(size)):
                raise NotFunctorial("identity must act trivially")
            for gi in range(g.order):
                if sorted(self.maps[gi][n]) != list(range(size)):
                    raise NotFunctorial(
                        f"element {g.elements[gi]} not bijective at level {n}")
            for gi in range(g.order):
                for hi in range(g.order):
                    gh = g.mul[gi][hi]
                    for c in range(size):
                        if self.act(gi, n, self.act(hi, n, c)) != self.act(gh, n, c):
                            raise NotFunctorial("group law fails on levels")
        for n in range(1, s.trunc + 1):
            for gi in range(g.order):
                for c in range(s.size(n)):
                    for i in range(n + 1):
                        if s.face(n, i, self.act(gi, n, c)) != \
                                self.act(gi, n - 1, s.face(n, i, c)):
                            raise NotFunctorial(
                                f"action does not commute with face {i} "
                                f"at level {n}")
        return self


def induced_nerve_action(a: GroupoidAction, n_top: int) -> SimplicialGAction:
    """g . (m_1, .., m_n) = (g m_1, .., g m_n) on nerve chains."""
    a.validate()
    space = nerve(a.atlas, n_top)
    maps = []
    for gi in range(a.group.order):
        per_level = []
        for n in range(n_top + 1):
            index = {c: i for i, c in enumerate(space.cells[n])}
            level = []
            for cell in space.cells[n]:
                if n == 0:
                    image = ("obj", a.act_obj[gi][cell[1]])
                else:
                    image = tuple(a.act_mor[gi][m] for m in cell)
                level.append(index[image])
            per_level.append(tuple(level))
        maps.append(tuple(per_level))
    return SimplicialGAction(a.group, space, tuple(maps)).validate()


def simplicial_action(group: FiniteGroup, space: SemiSimplicialSet,
                      maps) -> SimplicialGAction:
    return SimplicialGAction(group, space, maps).validate()


def as_simplicial_action(a, n_top: int) -> SimplicialGAction:
    """Accept a GroupoidAction or an already-simplicial action."""
    if isinstance(a, SimplicialGAction):
        if a.space.trunc < n_top:
            raise InvariantViolation(
                f"simplicial action truncated at {a.space.trunc}, "
                f"need {n_top}")
        return a
    return induced_nerve_action(a, n_top)


@dataclass
class BorelObject:
    """Homotopy-quotient simplicial object with provenance.

    Level n is G^n x X_n with the two-sided bar faces; the level-0 cells
    coincide with X_0.
    """

    space: SemiSimplicialSet
    group: FiniteGroup
    base: SemiSimplicialSet


def _tuples(group: FiniteGroup, n: int):
    return list(itertools.product(range(group.order), repeat=n))


def borel_object(sa: SimplicialGAction, n_top: int | None = None) -> BorelObject:
    """Diagonal homotopy-quotient object: level n = G^n x X_n.

    d_0 drops g_1 and takes the 0th base face; inner d_i multiplies
    g_i g_{i+1} and takes the i-th base face; d_n drops g_n and applies it
    to the last base face.
    """
    s = sa.space
    g = sa.group
    if n_top is None:
        n_top = s.trunc
    if n_top > s.trunc:
        raise InvariantViolation("base space truncated too low")
    cells = []
    for n in range(n_top + 1):
        cells.append(tuple((gs, x) for gs in _tuples(g, n)
                           for x in range(s.size(n))))
    faces = [()]
    for n in range(1, n_top + 1):
        index = {c: i for i, c in enumerate(cells[n - 1])}
        level_faces = []
        for i in range(n + 1):
            fm = []
            for (gs, x) in cells[n]:
                fx = s.face(n, i, x)
                if i == 0:
                    target = (gs[1:], fx)
                elif i < n:
                    merged = gs[:i - 1] + (g.mul[gs[i - 1]][gs[i]],) + gs[i + 1:]
                    target = (merged, fx)
                else:
                    target = (gs[:-1], sa.act(gs[n - 1], n - 1, fx))
                fm.append(index[target])
            level_faces.append(tuple(fm))
        faces.append(tuple(level_faces))
    try:
        space = SemiSimplicialSet(tuple(cells), tuple(faces)).validate()
    except SimplicialIdentityFailure as exc:
        raise SimplicialIdentityFailure(
            f"homotopy-quotient faces are inconsistent: {exc}") from exc
    assert space.size(0) == s.size(0)
    return BorelObject(space, g, s)


def borel_bisimplicial(sa: SimplicialGAction, n_top: int | None = None,
                       max_total: int | None = None) -> BiSemiSimplicialSet:
    """Bisimplicial object with cells (p, n) = G^p x X_n.

    Horizontal faces are the bar faces (last one twisted through the
    action); vertical faces come from the base space.  max_total empties
    the blocks with p + n beyond it; faces only ever lower the total, so
    the cut object stays valid and all certified degrees are unchanged.
    """
    s = sa.space
    g = sa.group
    if n_top is None:
        n_top = s.trunc
    cells = {}
    for p in range(n_top + 1):
        tup = _tuples(g, p)
        for n in range(n_top + 1):
            if max_total is not None and p + n > max_total:
                cells[(p, n)] = ()
                continue
            cells[(p, n)] = tuple((gs, x) for gs in tup
                                  for x in range(s.size(n)))
    faces_h = {}
    faces_v = {}
    for p in range(n_top + 1):
        for n in range(n_top + 1):
            if p >= 1:
                index = {c: i for i, c in enumerate(cells[(p - 1, n)])}
                per_i = []
                for i in range(p + 1):
                    fm = []
                    for (gs, x) in cells[(p, n)]:
                        if i == 0:
                            target = (gs[1:], x)
                        elif i < p:
                            merged = gs[:i - 1] + (g.mul[gs[i - 1]][gs[i]],) \
                                + gs[i + 1:]
                            target = (merged, x)
                        else:
                            target = (gs[:-1], sa.act(gs[p - 1], n, x))
                        fm.append(index[target])
                    per_i.append(tuple(fm))
                faces_h[(p, n)] = tuple(per_i)
            if n >= 1:
                index = {c: i for i, c in enumerate(cells[(p, n - 1)])}
                per_j = []
                for j in range(n + 1):
                    fm = []
                    for (gs, x) in cells[(p, n)]:
                        fm.append(index[(gs, s.face(n, j, x))])
                    per_j.append(tuple(fm))
                faces_v[(p, n)] = tuple(per_j)
    try:
        return BiSemiSimplicialSet(n_top, n_top, cells, faces_h,
                                   faces_v).validate()
    except SimplicialIdentityFailure as exc:
        raise SimplicialIdentityFailure(
            f"bisimplicial faces are inconsistent: {exc}") from exc


def equivariant_cohomology(a, field: Field, degrees, n_top: int | None = None,
                           check_total: bool = False) -> list[int]:
    """Betti numbers of the homotopy quotient in the given degrees.

    Computed from the diagonal object; with check_total the totalization
    of the bisimplicial double complex is computed as well and equality is
    asserted degree by degree.
    """
    degrees = list(degrees)
    if n_top is None:
        n_top = max(degrees) + 2
    sa = as_simplicial_action(a, n_top)
    bo = borel_object(sa, n_top)
    complex_diag = cochains(bo.space, field)
    dims = [cohomology(complex_diag, n) for n in degrees]
    if check_total:
        bis = borel_bisimplicial(sa, n_top, max_total=n_top + 1)
        tot = total_complex(total_cochains(bis, field))
        for n, expected in zip(degrees, dims):
            got = cohomology(tot, n, override=True)
            if got != expected:
                raise InvariantViolation(
                    f"diagonal and totalization disagree in degree {n}: "
                    f"{expected} vs {got}")
    return dims


def validate_set_action(group: FiniteGroup, perms) -> tuple:
    perms = tuple(tuple(p) for p in perms)
    npts = len(perms[0]) if perms else 0
    if len(perms) != group.order:
        raise InvariantViolation("one permutation per group element required")
    e = group.identity
    if perms[e] != tuple(range(npts)):
        raise InvariantViolation("identity must act trivially")
    for gi, p in enumerate(perms):
        if sorted(p) != list(range(npts)):
            raise InvariantViolation(f"element {gi} is not a permutation")
    for gi in range(group.order):
        for hi in range(group.order):
            gh = group.mul[gi][hi]
            for x in range(npts):
                if perms[gi][perms[hi][x]] != perms[gh][x]:
                    raise InvariantViolation("set action law fails")
    return perms


def transformation_groupoid(group: FiniteGroup, perms) -> FiniteGroupoid:
    """Objects: the set; morphisms (g, x): x -> g.x with bar-compatible comp."""
    perms = validate_set_action(group, perms)
    npts = len(perms[0])
    mor = [(gi, x) for gi in range(group.order) for x in range(npts)]
    index = {m: i for i, m in enumerate(mor)}
    src = tuple(x for (_, x) in mor)
    tgt = tuple(perms[gi][x] for (gi, x) in mor)
    comp = {}
    for a_idx, (g2, y) in enumerate(mor):
        for b_idx, (g1, x) in enumerate(mor):
            if y == perms[g1][x]:
                comp[(a_idx, b_idx)] = index[(group.mul[g2][g1], x)]
    e = group.identity
    ids = tuple(index[(e, x)] for x in range(npts))
    inv = tuple(index[(group.inverse(gi), perms[gi][x])] for (gi, x) in mor)
    return FiniteGroupoid(tuple(range(npts)), src, tgt, comp, ids,
                          inv).validate()


def set_action_on_trivial_groupoid(group: FiniteGroup, perms) -> GroupoidAction:
    """The same set action, packaged as an action on the trivial groupoid."""
    perms = validate_set_action(group, perms)
    atlas = trivial_groupoid(len(perms[0]))
    return GroupoidAction(group, atlas, perms, perms).validate()


def trivial_action(group: FiniteGroup, atlas: FiniteGroupoid) -> GroupoidAction:
    obj = tuple(tuple(range(atlas.n_objects)) for _ in range(group.order))
    mor = tuple(tuple(range(atlas.n_morphisms)) for _ in range(group.order))
    return GroupoidAction(group, atlas, obj, mor).validate()


def orbit_space(sa: SimplicialGAction) -> SemiSimplicialSet:
    """Level-wise quotient; models the honest quotient for free actions."""
    s = sa.space
    g = sa.group
    cells = []
    reps = []
    orbit_of = []
    for n in range(s.trunc + 1):
        seen = {}
        level_reps = []
        level_orbit = []
        for c in range(s.size(n)):
            orbit = min(sa.act(gi, n, c) for gi in range(g.order))
            if orbit not in seen:
                seen[orbit] = len(level_reps)
                level_reps.append(orbit)
            level_orbit.append(seen[orbit])
        reps.append(level_reps)
        orbit_of.append(level_orbit)
        cells.append(tuple(s.cells[n][r] for r in level_reps))
    faces = [()]
    for n in range(1, s.trunc + 1):
        level_faces = []
        for i in range(n + 1):
            fm = []
            for r in reps[n]:
                fm.append(orbit_of[n - 1][s.face(n, i, r)])
            level_faces.append(tuple(fm))
        faces.append(tuple(level_faces))
    return SemiSimplicialSet(tuple(cells), tuple(faces)).validate()


def is_free(sa: SimplicialGAction) -> bool:
    g = sa.group
    e = g.identity
    for n in range(sa.space.trunc + 1):
        for gi in range(g.order):
            if gi == e:
                continue
            for c in range(sa.space.size(n)):
                if sa.act(gi, n, c) == c:
                    return False
    return True
