"""Permutation groups with exact order and membership via a stabilizer chain.

A :class:`Group` is built from generators by a deterministic Schreier-Sims
run, which gives the base, basic orbits and strong generators.  On top of
that, groups whose order fits under the element cap expose an indexed view of
their (sorted) element list; all subgroup machinery in this package works on
frozensets of element indices, which keeps orbit walks and closures cheap.

Groups and subgroups are immutable after construction.  The lazy caches
(element list, conjugation maps, ...) are populated once and only read
afterwards, so sharing across threads or analyses is safe.
"""

from __future__ import annotations

from collections import Counter

from .caps import DEFAULT_CAPS, CapExceeded
from .perms import Permutation


def _mult(a, b):
    # left-to-right product of 0-based image tuples
    return tuple(map(b.__getitem__, a))


def _inv(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _is_id(a):
    return all(i == j for i, j in enumerate(a))


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point):
        self.point = point
        self.gens = []
        self.transversal = {}


class _Chain:
    """Base and strong generating set, built deterministically."""

    def __init__(self, gens0, degree):
        self.degree = degree
        self.levels = []
        identity = tuple(range(degree))
        gens0 = [g for g in gens0 if not _is_id(g)]
        for g in gens0:
            self._ensure_base_point(g)
        for i, level in enumerate(self.levels):
            level.gens = [g for g in gens0 if self._fixes_prefix(g, i)]
        i = len(self.levels) - 1
        while i >= 0:
            self._complete_level(i)
            i -= 1
        self.identity = identity

    def _fixes_prefix(self, g, i):
        return all(g[lvl.point] == lvl.point for lvl in self.levels[:i])

    def _ensure_base_point(self, g):
        """Extend the base so that g moves some base point."""
        for lvl in self.levels:
            if g[lvl.point] != lvl.point:
                return
        pt = min(j for j in range(len(g)) if g[j] != j)
        self.levels.append(_Level(pt))

    def _orbit(self, i):
        level = self.levels[i]
        identity = tuple(range(self.degree))
        trans = {level.point: identity}
        queue = [level.point]
        while queue:
            a = queue.pop(0)
            u = trans[a]
            for g in level.gens:
                b = g[a]
                if b not in trans:
                    trans[b] = _mult(u, g)
                    queue.append(b)
        level.transversal = trans

    def strip(self, t, start=0):
        """Sift t through levels[start:]; returns (residue, level reached)."""
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            u = lvl.transversal.get(t[lvl.point])
            if u is None:
                return t, i
            t = _mult(t, _inv(u))
        return t, len(self.levels)

    def _complete_level(self, i):
        # Levels below i are complete; make every Schreier generator of level
        # i sift to the identity through them.
        self._orbit(i)
        level = self.levels[i]
        for gamma in sorted(level.transversal):
            u = level.transversal[gamma]
            for g in level.gens:
                sg = _mult(_mult(u, g), _inv(level.transversal[g[gamma]]))
                if _is_id(sg):
                    continue
                residue, j = self.strip(sg, i + 1)
                if _is_id(residue):
                    continue
                if j == len(self.levels):
                    pt = min(k for k in range(self.degree) if residue[k] != k)
                    self.levels.append(_Level(pt))
                    self.levels[-1].transversal = {pt: self.identity_tuple()}
                for l in range(i + 1, j + 1):
                    self.levels[l].gens.append(residue)
                for l in range(j, i, -1):
                    self._complete_level(l)

    def identity_tuple(self):
        return tuple(range(self.degree))

    def order(self):
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def contains(self, t):
        residue, _ = self.strip(t)
        return _is_id(residue)


class Group:
    """A finite permutation group given by generators."""

    def __init__(self, generators, degree=None, caps=None):
        generators = tuple(generators)
        if degree is None:
            if not generators:
                raise ValueError("need generators or an explicit degree")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"degree mismatch: {g.degree} vs {degree}")
        seen = set()
        kept = []
        for g in generators:
            if not g.is_identity() and g._t not in seen:
                seen.add(g._t)
                kept.append(g)
        self.degree = degree
        self.generators = tuple(kept)
        self.caps = caps if caps is not None else DEFAULT_CAPS
        self._chain = _Chain([g._t for g in self.generators], degree)
        self._order = self._chain.order()
        # lazy caches
        self._elts0 = None
        self._index = None
        self._orders = None
        self._invs = None
        self._conj_maps = None
        self._rmul = {}
        self._classes = None

    def order(self):
        return self._order

    def base(self):
        """Base points (1-based) of the stabilizer chain."""
        return tuple(lvl.point + 1 for lvl in self._chain.levels)

    def basic_orbit_lengths(self):
        return tuple(len(lvl.transversal) for lvl in self._chain.levels)

    def contains(self, perm):
        if perm.degree != self.degree:
            return False
        return self._chain.contains(perm._t)

    __contains__ = contains

    def identity(self):
        return Permutation.identity(self.degree)

    # ------------------------------------------------------------------
    # indexed element view

    def _materialize(self):
        if self._elts0 is not None:
            return
        cap = self.caps.element_cap
        if self._order > cap:
            raise CapExceeded("element enumeration", f"order {self._order} > {cap}")
        identity = tuple(range(self.degree))
        seen = {identity}
        queue = [identity]
        gens = [g._t for g in self.generators]
        while queue:
            a = queue.pop()
            for g in gens:
                b = _mult(a, g)
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        if len(seen) != self._order:
            raise RuntimeError(
                f"stabilizer chain order {self._order} != closure size {len(seen)}"
            )
        self._elts0 = sorted(seen)
        self._index = {t: i for i, t in enumerate(self._elts0)}

    def elements(self):
        """All elements, sorted by image tuple; requires order <= element cap."""
        self._materialize()
        return tuple(Permutation._from0(t) for t in self._elts0)

    @property
    def identity_idx(self):
        self._materialize()
        return self._index[tuple(range(self.degree))]

    def index_of(self, perm):
        self._materialize()
        idx = self._index.get(perm._t)
        if idx is None:
            raise ValueError(f"{perm} is not a member")
        return idx

    def perm_at(self, i):
        self._materialize()
        return Permutation._from0(self._elts0[i])

    def mul_idx(self, i, j):
        e = self._elts0
        return self._index[_mult(e[i], e[j])]

    def inv_idx(self, i):
        if self._invs is None:
            self._materialize()
            self._invs = [self._index[_inv(t)] for t in self._elts0]
        return self._invs[i]

    def order_of_idx(self, i):
        if self._orders is None:
            self._materialize()
            self._orders = [Permutation._from0(t).order() for t in self._elts0]
        return self._orders[i]

    def gen_indices(self):
        return tuple(self.index_of(g) for g in self.generators)

    def conj_maps(self):
        """Per generator g, the index map i -> index of g^-1 * x_i * g."""
        if self._conj_maps is None:
            self._materialize()
            maps = []
            for g in self.generators:
                gt = g._t
                gi = _inv(gt)
                idx = self._index
                maps.append(
                    [idx[_mult(_mult(gi, t), gt)] for t in self._elts0]
                )
            self._conj_maps = maps
        return self._conj_maps

    def rmul_map(self, j):
        """Right-multiplication index map i -> i*j, cached per j."""
        m = self._rmul.get(j)
        if m is None:
            self._materialize()
            t = self._elts0[j]
            idx = self._index
            m = [idx[_mult(a, t)] for a in self._elts0]
            self._rmul[j] = m
        return m

    def conjugacy_classes_idx(self):
        """Element conjugacy classes as sorted tuples of indices."""
        if self._classes is None:
            self._materialize()
            maps = self.conj_maps()
            n = self._order
            class_of = [-1] * n
            classes = []
            for i in range(n):
                if class_of[i] >= 0:
                    continue
                cid = len(classes)
                orbit = [i]
                class_of[i] = cid
                k = 0
                while k < len(orbit):
                    x = orbit[k]
                    k += 1
                    for m in maps:
                        y = m[x]
                        if class_of[y] < 0:
                            class_of[y] = cid
                            orbit.append(y)
                classes.append(tuple(sorted(orbit)))
            self._classes = tuple(classes)
        return self._classes

    def class_size_of_idx(self, i):
        for c in self.conjugacy_classes_idx():
            if i in c:
                return len(c)
        raise ValueError("index out of range")

    # ------------------------------------------------------------------
    # closures on index sets

    def closure_idx(self, seed, base=None, base_gens=()):
        """Subgroup (as an index set) generated by ``base | seed``.

        ``base`` may be an already-closed index set with generating indices
        ``base_gens``; its members are only pushed through the new seed
        generators, which keeps repeated one-element extensions cheap.
        """
        self._materialize()
        mul = self.mul_idx
        id_idx = self.identity_idx
        new_gens = [j for j in dict.fromkeys(seed) if j != id_idx]
        if base is None:
            members = {id_idx}
            frontier = []
            all_gens = new_gens
            for j in new_gens:
                if j not in members:
                    members.add(j)
                    frontier.append(j)
        else:
            members = set(base)
            members.add(id_idx)
            frontier = []
            for j in new_gens:
                if j not in members:
                    members.add(j)
                    frontier.append(j)
            # base members are closed under base_gens but not the new seeds
            for a in list(members):
                for j in new_gens:
                    b = mul(a, j)
                    if b not in members:
                        members.add(b)
                        frontier.append(b)
            all_gens = list(dict.fromkeys([*base_gens, *new_gens]))
        while frontier:
            a = frontier.pop()
            for j in all_gens:
                b = mul(a, j)
                if b not in members:
                    members.add(b)
                    frontier.append(b)
        return frozenset(members)

    def normal_closure_idx(self, seed):
        """Smallest normal subgroup of this group containing the seed indices.

        Alternates subgroup closure with a normality check on the generators;
        a closed set whose generators conjugate into it is normal.
        """
        self._materialize()
        maps = self.conj_maps()
        gens = [j for j in dict.fromkeys(seed) if j != self.identity_idx]
        while True:
            members = self.closure_idx(gens)
            missing = [c for m in maps for g in gens if (c := m[g]) not in members]
            if not missing:
                return members
            gens.extend(dict.fromkeys(missing))

    # ------------------------------------------------------------------
    # subgroup handles

    def subgroup_from_indices(self, indices, gens_idx=None):
        return Subgroup(self, frozenset(indices), gens_idx)

    def subgroup(self, perms):
        """Subgroup generated by the given member permutations."""
        for p in perms:
            if p not in self:
                raise ValueError(f"{p} is not a member of the group")
        seed = [self.index_of(p) for p in perms]
        return Subgroup(self, self.closure_idx(seed), tuple(dict.fromkeys(seed)))

    def trivial_subgroup(self):
        return self.subgroup_from_indices({self.identity_idx}, ())

    def full_subgroup(self):
        gi = self.gen_indices()
        self._materialize()
        return self.subgroup_from_indices(range(self._order), gi)

    def __repr__(self):
        return f"Group(degree={self.degree}, order={self._order})"


class Subgroup:
    """A subgroup of a parent group, held as a set of element indices.

    The generator list is kept small; it is recovered greedily from the
    element set when the subgroup was produced by a scan.  Fingerprints are
    conjugation-invariant summaries used to prune conjugacy searches.
    """

    __slots__ = ("parent", "indices", "_gens_idx", "_fingerprint", "_abelian")

    def __init__(self, parent, indices, gens_idx=None):
        self.parent = parent
        self.indices = frozenset(indices)
        self._gens_idx = tuple(gens_idx) if gens_idx is not None else None
        self._fingerprint = None
        self._abelian = None

    @property
    def order(self):
        return len(self.indices)

    def gens_idx(self):
        if self._gens_idx is None:
            self._gens_idx = _greedy_gens(self.parent, self.indices)
        return self._gens_idx

    @property
    def generators(self):
        return tuple(self.parent.perm_at(i) for i in self.gens_idx())

    def elements(self):
        return tuple(self.parent.perm_at(i) for i in sorted(self.indices))

    def contains_idx(self, i):
        return i in self.indices

    def __contains__(self, perm):
        try:
            return self.parent.index_of(perm) in self.indices
        except ValueError:
            return False

    def is_abelian(self):
        if self._abelian is None:
            gens = self.gens_idx()
            mul = self.parent.mul_idx
            self._abelian = all(
                mul(a, b) == mul(b, a) for a in gens for b in gens
            )
        return self._abelian

    def is_cyclic(self):
        orders = self.parent.order_of_idx
        return any(orders(i) == self.order for i in self.indices)

    def element_order_counter(self):
        orders = self.parent.order_of_idx
        return Counter(orders(i) for i in self.indices)

    def fingerprint(self):
        """(order, element-order multiset, abelian flag); conjugation-invariant."""
        if self._fingerprint is None:
            counts = tuple(sorted(self.element_order_counter().items()))
            self._fingerprint = (self.order, counts, self.is_abelian())
        return self._fingerprint

    def key(self):
        """Sorted index tuple; the deterministic identity of the subgroup."""
        return tuple(sorted(self.indices))

    def conjugate_by_idx(self, g):
        p = self.parent
        gi = p.inv_idx(g)
        mul = p.mul_idx
        return Subgroup(p, frozenset(mul(mul(gi, x), g) for x in self.indices))

    def as_group(self):
        """Standalone Group on the same points, for recursive analyses."""
        gens = self.generators
        if not gens:
            return Group((), degree=self.parent.degree, caps=self.parent.caps)
        return Group(gens, caps=self.parent.caps)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.indices == other.indices
        )

    def __hash__(self):
        return hash((id(self.parent), self.indices))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent!r})"


def _greedy_gens(parent, indices):
    """Small generating index list for a known-closed index set."""
    order = len(indices)
    if order == 1:
        return ()
    ordered = sorted(indices, key=lambda i: (-parent.order_of_idx(i), i))
    gens = []
    current = frozenset({parent.identity_idx})
    for i in ordered:
        if i in current:
            continue
        gens.append(i)
        current = parent.closure_idx(gens)
        if len(current) == order:
            return tuple(gens)
    raise RuntimeError("index set is not closed under multiplication")


# ----------------------------------------------------------------------
# module-level operations


def build_group(generators, degree=None, caps=None):
    """Group from a nonempty generator list (or an explicit degree)."""
    return Group(generators, degree=degree, caps=caps)


def element_order(group, perm):
    """Least n >= 1 with perm^n = identity; perm must be a member."""
    if perm not in group:
        raise ValueError(f"{perm} is not a member of the group")
    return perm.order()


def closure(group, seed):
    """Smallest subgroup of ``group`` containing the seed permutations."""
    return group.subgroup(seed)


def centralizer(group, sub):
    """C_G(H) = elements commuting with every element of H."""
    group._materialize()
    mul = group.mul_idx
    hgens = sub.gens_idx()
    members = [
        i
        for i in range(group.order())
        if all(mul(i, h) == mul(h, i) for h in hgens)
    ]
    return group.subgroup_from_indices(members)


def normalizer(group, sub):
    """N_G(H) = elements g with g^-1 H g = H."""
    group._materialize()
    mul = group.mul_idx
    inv = group.inv_idx
    hgens = sub.gens_idx()
    hset = sub.indices
    members = []
    for i in range(group.order()):
        j = inv(i)
        if all(mul(mul(j, h), i) in hset for h in hgens):
            members.append(i)
    return group.subgroup_from_indices(members)


def center(group):
    return centralizer(group, group.full_subgroup())


def is_normal(group, sub):
    """True iff g^-1 H g = H for every generator g of the group."""
    hset = sub.indices
    for cmap in group.conj_maps():
        if any(cmap[x] not in hset for x in sub.gens_idx()):
            return False
    return True


class Quotient:
    """Coset action of G on a normal subgroup N: a Group plus the projection."""

    def __init__(self, group, normal_sub):
        if not is_normal(group, normal_sub):
            raise ValueError("subgroup is not normal; quotient undefined")
        group._materialize()
        mul = group.mul_idx
        nset = sorted(normal_sub.indices)
        # BFS over cosets; each coset is keyed by its least element index.
        id_key = nset[0]
        reps = [group.identity_idx]
        coset_id = {id_key: 0}
        gen_idx = group.gen_indices()
        images = [[] for _ in gen_idx]
        k = 0
        while k < len(reps):
            r = reps[k]
            for gpos, g in enumerate(gen_idx):
                t = mul(r, g)
                key = min(mul(n, t) for n in nset)
                c = coset_id.get(key)
                if c is None:
                    c = len(reps)
                    coset_id[key] = c
                    reps.append(t)
                images[gpos].append(c)
            k += 1
        n_cosets = len(reps)
        perms = [Permutation._from0(tuple(img)) for img in images]
        self.group = Group(perms, degree=max(n_cosets, 1), caps=group.caps)
        if self.group.order() * normal_sub.order != group.order():
            raise RuntimeError("coset action order mismatch")
        self.parent = group
        self.normal = normal_sub
        self.reps = reps
        # element index -> coset id, via one BFS over the parent
        ecoset = [-1] * group.order()
        ecoset[group.identity_idx] = 0
        queue = [group.identity_idx]
        while queue:
            x = queue.pop()
            cx = ecoset[x]
            for gpos, g in enumerate(gen_idx):
                y = mul(x, g)
                if ecoset[y] < 0:
                    ecoset[y] = images[gpos][cx]
                    queue.append(y)
        self.ecoset = ecoset
        self.trivial_point = 0

    def project(self, perm):
        """Image of a parent element in the quotient group."""
        p = self.parent
        r = p.index_of(perm)
        mul = p.mul_idx
        images = tuple(self.ecoset[mul(rep, r)] for rep in self.reps)
        q = Permutation._from0(images)
        if q not in self.group:  # pragma: no cover - internal consistency
            raise RuntimeError("projection left the quotient group")
        return q

    def pullback(self, qsub):
        """Parent subgroup mapping onto a subgroup of the quotient."""
        qg = self.group
        cosets = {qg.perm_at(i)._t[self.trivial_point] for i in qsub.indices}
        members = [i for i, c in enumerate(self.ecoset) if c in cosets]
        return self.parent.subgroup_from_indices(members)


def quotient_with_map(group, normal_sub):
    return Quotient(group, normal_sub)


def quotient(group, normal_sub):
    """G/N as a permutation group on the cosets of N (faithful image of G/N)."""
    return Quotient(group, normal_sub).group


def direct_product(a, b):
    """A x B acting on the disjoint union of the two point sets."""
    na, nb = a.degree, b.degree
    gens = []
    for g in a.generators:
        gens.append(Permutation._from0(g._t + tuple(range(na, na + nb))))
    for g in b.generators:
        gens.append(Permutation._from0(tuple(range(na)) + tuple(x + na for x in g._t)))
    prod = Group(gens, degree=na + nb, caps=a.caps)
    if prod.order() != a.order() * b.order():  # pragma: no cover
        raise RuntimeError("direct product order mismatch")
    return prod


def direct_factors_embedded(prod, a, b):
    """The canonical copies of A and B inside direct_product(A, B)."""
    na, nb = a.degree, b.degree
    ga = [Permutation._from0(g._t + tuple(range(na, na + nb))) for g in a.generators]
    gb = [
        Permutation._from0(tuple(range(na)) + tuple(x + na for x in g._t))
        for g in b.generators
    ]
    return prod.subgroup(ga), prod.subgroup(gb)


def semidirect_product(normal, acting, action):
    """N x| H for an action of H on N given by automorphism generator images.

    ``action`` maps each generator of ``acting`` (by position) to the list of
    images of the generators of ``normal`` (members of N, by position).  Each
    image map must extend to an automorphism of N; this is verified on the
    full multiplication graph of N.  The product acts on the elements of N
    (affine action) next to the natural points of H, which is always faithful.

    Inconsistent relations (images that do not satisfy the relations of H)
    surface as an order mismatch and raise ValueError.
    """
    n_elems = normal.elements()
    n_size = len(n_elems)
    n_index = {p._t: i for i, p in enumerate(n_elems)}
    n_gens = [normal.index_of(g) for g in normal.generators]
    if len(action) != len(acting.generators):
        raise ValueError("need one automorphism per generator of the acting group")

    auto_maps = []
    for images in action:
        if len(images) != len(n_gens):
            raise ValueError("need one image per generator of the normal subgroup")
        img_idx = []
        for p in images:
            if p not in normal:
                raise ValueError(f"automorphism image {p} lies outside the group")
            img_idx.append(normal.index_of(p))
        auto_maps.append(_extend_automorphism(normal, n_gens, img_idx))

    # Generators on elements(N) + points(H): N acts by right translation,
    # H-generators act by their automorphism on the N block.
    deg_h = acting.degree
    gens = []
    for g in normal.generators:
        gi = normal.index_of(g)
        block = [normal.mul_idx(x, gi) for x in range(n_size)]
        gens.append(
            Permutation._from0(tuple(block) + tuple(n_size + k for k in range(deg_h)))
        )
    for amap, h in zip(auto_maps, acting.generators):
        gens.append(
            Permutation._from0(tuple(amap) + tuple(n_size + x for x in h._t))
        )
    prod = Group(gens, degree=n_size + deg_h, caps=normal.caps)
    expected = normal.order() * acting.order()
    if prod.order() != expected:
        raise ValueError(
            "action images do not satisfy the relations of the acting group: "
            f"got order {prod.order()}, expected {expected}"
        )
    return prod


def _extend_automorphism(normal, gen_idx, img_idx):
    """Extend generator images to a verified automorphism of the whole group.

    Walks the multiplication graph phi(x*g) = phi(x)*phi(g); any conflict or
    failure of bijectivity means the images do not define an automorphism.
    """
    mul = normal.mul_idx
    size = normal.order()
    phi = [-1] * size
    phi[normal.identity_idx] = normal.identity_idx
    queue = [normal.identity_idx]
    hit = {normal.identity_idx}
    while queue:
        x = queue.pop()
        for g, pg in zip(gen_idx, img_idx):
            y = mul(x, g)
            img = mul(phi[x], pg)
            if phi[y] < 0:
                if img in hit:
                    raise ValueError("generator images do not define an automorphism")
                phi[y] = img
                hit.add(img)
                queue.append(y)
            elif phi[y] != img:
                raise ValueError("generator images do not define an automorphism")
    if -1 in phi:
        raise ValueError("generator images do not generate the normal subgroup")
    return phi
