"""Closed subgroups of a torus as integer character lattices.

A closed subgroup S of the m-torus is stored through the lattice L(S) of
characters vanishing on it, kept in row Hermite normal form.  Containment
of subgroups reverses lattice inclusion and intersection of subgroups is
lattice sum, so everything reduces to integer row reduction and the
canonical forms make equality, poset construction and Mobius tables
deterministic.

SubgroupPoset builds its incidence and Mobius tables eagerly; queries are
read-only afterwards.  The tables are computed with int64 numpy kernels
when an a-priori bound certifies that no intermediate value can overflow,
and with arbitrary-precision Python integers otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod

import numpy as np

from .errors import AmbientMismatch, NotComparable, NotInPoset, TooLarge

__all__ = [
    "hnf",
    "snf_divisors",
    "TorusSubgroup",
    "AbelianGroupClass",
    "SubgroupPoset",
    "intersect",
    "contains",
    "iso_class",
    "poset_close",
    "mobius",
    "crosscut_coeff",
]

CROSSCUT_GUARD = 20  # max down-set size for the literal subset sum


# ---------------------------------------------------------------------------
# integer matrix normal forms


def hnf(mat):
    """Unique row Hermite normal form of an integer matrix.

    Pivots are positive, entries above a pivot are reduced into
    [0, pivot), zero rows are dropped.  The row span over Z is preserved.
    """
    rows = [list(map(int, r)) for r in mat]
    if not rows:
        return ()
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    r = 0
    for c in range(ncols):
        nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
        while len(nz) > 1:
            i0 = min(nz, key=lambda i: abs(rows[i][c]))
            for i in nz:
                if i == i0:
                    continue
                q = rows[i][c] // rows[i0][c]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[i0])]
            nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
        if not nz:
            continue
        if nz[0] != r:
            rows[r], rows[nz[0]] = rows[nz[0]], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return tuple(tuple(row) for row in rows[:r])


def snf_divisors(mat):
    """Elementary divisors of an integer matrix (Smith normal form diagonal,
    zeros excluded), each dividing the next."""
    rows = [list(map(int, r)) for r in mat]
    if not rows or not rows[0]:
        return []
    n, m = len(rows), len(rows[0])
    a = rows
    divisors = []
    top = 0
    while top < n and top < m:
        # find a nonzero entry to pivot on
        piv = None
        for i in range(top, n):
            for j in range(top, m):
                if a[i][j] != 0:
                    if piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        # clear row and column; restart if a division leaves a remainder
        dirty = True
        while dirty:
            dirty = False
            for i in range(top + 1, n):
                if a[i][top] != 0:
                    q = a[i][top] // a[top][top]
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    if a[i][top] != 0:
                        a[top], a[i] = a[i], a[top]
                        dirty = True
            for j in range(top + 1, m):
                if a[top][j] != 0:
                    q = a[top][j] // a[top][top]
                    for row in a:
                        row[j] -= q * row[top]
                    if a[top][j] != 0:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        dirty = True
        divisors.append(abs(a[top][top]))
        top += 1
    divisors = [d for d in divisors if d != 0]
    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(divisors)):
            for j in range(i + 1, len(divisors)):
                x, y = divisors[i], divisors[j]
                if y % x != 0:
                    from math import gcd as _gcd

                    g = _gcd(x, y)
                    divisors[i], divisors[j] = g, x * y // g
                    changed = True
    return sorted(divisors)


def _pivot_cols(rows):
    return tuple(next(j for j, v in enumerate(r) if v != 0) for r in rows)


def _row_in_lattice(row, rows, pivots):
    """Exact Z-rowspan membership against an HNF basis."""
    v = list(row)
    for r, c in zip(rows, pivots):
        if v[c]:
            q = v[c] // r[c]
            if q:
                v = [a - q * b for a, b in zip(v, r)]
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# abelian group classes


@dataclass(frozen=True, order=True)
class AbelianGroupClass:
    """Isomorphism class of G_m^k x K with K finite abelian.

    torsion is the chain of elementary divisors > 1, each dividing the
    next; construction recanonicalizes arbitrary torsion lists.
    """

    torus_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.torus_rank < 0:
            raise ValueError("negative torus rank")
        tors = tuple(int(t) for t in self.torsion)
        if any(t < 2 for t in tors):
            raise ValueError("torsion invariants must be >= 2")
        chain = tuple(d for d in snf_divisors([[t if i == j else 0 for j in range(len(tors))] for i, t in enumerate(tors)]) if d > 1)
        object.__setattr__(self, "torsion", chain)

    @property
    def rank(self):
        """Dimension of the maximal torus; torsion does not contribute."""
        return self.torus_rank

    def torsion_order(self):
        return prod(self.torsion) if self.torsion else 1

    def product(self, other):
        return AbelianGroupClass(self.torus_rank + other.torus_rank, self.torsion + other.torsion)

    def __str__(self):
        parts = []
        if self.torus_rank == 1:
            parts.append("Gm")
        elif self.torus_rank > 1:
            parts.append("Gm^%d" % self.torus_rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " x ".join(parts) if parts else "1"

    def to_json(self):
        return {"rank": self.torus_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["rank"], tuple(obj["torsion"]))


TRIVIAL_CLASS = AbelianGroupClass(0, ())


# ---------------------------------------------------------------------------
# torus subgroups


@dataclass(frozen=True)
class TorusSubgroup:
    """Closed subgroup of G_m^ambient_rank, by its vanishing-character
    lattice in canonical HNF.  Equaccording to (ambient_rank, lattice)."""

    ambient_rank: int
    char_lattice: tuple

    def __post_init__(self):
        if self.ambient_rank < 1:
            raise ValueError("ambient rank must be positive")
        rows = hnf(self.char_lattice)
        if rows and len(rows[0]) != self.ambient_rank:
            raise ValueError("lattice row length differs from ambient rank")
        if len(rows) > self.ambient_rank:
            raise ValueError("lattice rank exceeds ambient rank")
        object.__setattr__(self, "char_lattice", rows)

    @classmethod
    def full_torus(cls, m):
        return cls(m, ())

    @classmethod
    def trivial(cls, m):
        return cls(m, tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m)))

    @property
    def dim(self):
        return self.ambient_rank - len(self.char_lattice)

    def intersect(self, other):
        if self.ambient_rank != other.ambient_rank:
            raise AmbientMismatch(
                "ambient ranks differ: %d vs %d" % (self.ambient_rank, other.ambient_rank)
            )
        return TorusSubgroup(self.ambient_rank, self.char_lattice + other.char_lattice)

    def contains(self, other):
        """True iff other is a subgroup of self (lattice inclusion reversed)."""
        if self.ambient_rank != other.ambient_rank:
            raise AmbientMismatch(
                "ambient ranks differ: %d vs %d" % (self.ambient_rank, other.ambient_rank)
            )
        pivots = _pivot_cols(other.char_lattice)
        return all(
            _row_in_lattice(row, other.char_lattice, pivots) for row in self.char_lattice
        )

    def iso_class(self):
        return _iso_class_cached(self)

    def to_json(self):
        return {"ambient": self.ambient_rank, "lattice": [list(r) for r in self.char_lattice]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["ambient"], tuple(tuple(r) for r in obj["lattice"]))

    def __str__(self):
        return "Subgroup(%d, %s)" % (self.ambient_rank, list(map(list, self.char_lattice)))


@lru_cache(maxsize=None)
def _iso_class_cached(s):
    tors = tuple(d for d in snf_divisors(s.char_lattice) if d > 1)
    return AbelianGroupClass(s.dim, tors)


def intersect(a, b):
    return a.intersect(b)


def contains(a, b):
    return a.contains(b)


def iso_class(a):
    return a.iso_class()


# ---------------------------------------------------------------------------
# posets


def _max_abs_entry(elements):
    best = 0
    for e in elements:
        for row in e.char_lattice:
            for v in row:
                best = max(best, abs(v))
    return best


def _bulk_zeta(elements):
    """leq[a][b] = subgroup a contained in subgroup b, for all pairs.

    Vectorized: for each candidate superlattice L_a, reduce every stored
    row of every L_b against it at once.  Used only when the overflow
    bound certifies int64 exactness.
    """
    n = len(elements)
    m = elements[0].ambient_rank
    owners = []
    all_rows = []
    for j, e in enumerate(elements):
        for row in e.char_lattice:
            owners.append(j)
            all_rows.append(row)
    leq = np.zeros((n, n), dtype=bool)
    if not all_rows:
        leq[:, :] = True
        return leq
    owners = np.asarray(owners)
    rows_arr = np.asarray(all_rows, dtype=np.int64)
    for a, e in enumerate(elements):
        hn = e.char_lattice
        if not hn:
            # the zero lattice contains no nonzero row, so only elements
            # whose lattice is empty (the full torus) sit above a here
            ok = np.ones(n, dtype=bool)
            np.minimum.at(ok, owners, np.zeros(len(owners), dtype=bool))
            leq[a, :] = ok
            continue
        v = rows_arr.copy()
        for r in hn:
            c = next(j for j, x in enumerate(r) if x)
            q = v[:, c] // r[c]
            v -= q[:, None] * np.asarray(r, dtype=np.int64)[None, :]
        member = (v == 0).all(axis=1)
        ok = np.ones(n, dtype=bool)
        np.minimum.at(ok, owners, member)
        leq[a, :] = ok
    return leq


def _pair_zeta(elements):
    n = len(elements)
    leq = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            leq[a, b] = elements[b].contains(elements[a])
    return leq


class SubgroupPoset:
    """A finite family of torus subgroups ordered by containment.

    The caller guarantees the family is closed under pairwise intersection
    (poset_close produces such families); verify_intersection_closed is
    available for tests.  Incidence and the full Mobius table are built at
    construction, so all queries afterwards are read-only and safe to share
    across threads.
    """

    def __init__(self, elements, top):
        elements = tuple(elements)
        if not elements:
            raise ValueError("poset needs at least one element")
        m = elements[0].ambient_rank
        if any(e.ambient_rank != m for e in elements):
            raise AmbientMismatch("mixed ambient ranks in poset")
        if top.ambient_rank != m:
            raise AmbientMismatch("top has wrong ambient rank")
        index = {}
        for i, e in enumerate(elements):
            if e in index:
                raise ValueError("duplicate poset element %s" % (e,))
            index[e] = i
        if top not in index:
            raise ValueError("top is not among the elements")
        self.ambient_rank = m
        self.elements = elements
        self.top = top
        self._index = index
        self._top_idx = index[top]
        self._leq = self._build_zeta()
        if not bool(self._leq[:, self._top_idx].all()):
            raise ValueError("top does not contain every element")
        self._mu = self._build_mobius()

    # -- construction helpers

    def _build_zeta(self):
        n = len(self.elements)
        bound = _max_abs_entry(self.elements)
        k = max(len(e.char_lattice) for e in self.elements)
        safe = bound == 0 or bound * (1 + bound) ** k < 2**62
        if n > 48 and safe:
            return _bulk_zeta(self.elements)
        return _pair_zeta(self.elements)

    def _topological_order(self):
        # subgroup a strictly inside b has (dim, torsion order) strictly
        # smaller lexicographically, so this key is a linear extension
        def key(i):
            c = self.elements[i].iso_class()
            return (c.torus_rank, c.torsion_order())

        return sorted(range(len(self.elements)), key=key)

    def _build_mobius(self):
        n = len(self.elements)
        mu = np.zeros((n, n), dtype=np.int64)
        leq = self._leq
        for b in self._topological_order():
            below = np.nonzero(leq[:, b])[0]
            below = below[below != b]
            if below.size:
                col = -mu[:, below].sum(axis=1)
            else:
                col = np.zeros(n, dtype=np.int64)
            col[b] += 1
            mu[:, b] = col
        return mu

    # -- queries

    def __len__(self):
        return len(self.elements)

    def __contains__(self, subgroup):
        return subgroup in self._index

    def index_of(self, subgroup):
        try:
            return self._index[subgroup]
        except KeyError:
            raise NotInPoset("%s is not in the poset" % (subgroup,)) from None

    def leq(self, a, b):
        """Whether subgroup a is contained in subgroup b."""
        return bool(self._leq[self.index_of(a), self.index_of(b)])

    def leq_by_index(self, i, j):
        return bool(self._leq[i, j])

    def mobius_by_index(self, i, j):
        if not self._leq[i, j]:
            raise NotComparable("elements are not nested")
        return int(self._mu[i, j])

    def mobius(self, a, b):
        """Mobius coefficient mu(a, b) for a contained in b."""
        return self.mobius_by_index(self.index_of(a), self.index_of(b))

    def down_set(self, b):
        j = self.index_of(b)
        return [int(i) for i in np.nonzero(self._leq[:, j])[0]]

    def up_set(self, a):
        i = self.index_of(a)
        return [int(j) for j in np.nonzero(self._leq[i, :])[0]]

    def crosscut_coeff(self, lower, upper):
        """Literal subset sum over B in the down-set of upper with upper in B
        and meet(B) = lower, of (-1)^(|B|-1).  Test oracle for mobius."""
        ilo = self.index_of(lower)
        iup = self.index_of(upper)
        if not self._leq[ilo, iup]:
            raise NotComparable("lower is not contained in upper")
        down = [int(i) for i in np.nonzero(self._leq[:, iup])[0]]
        if len(down) > CROSSCUT_GUARD:
            raise TooLarge(
                "down-set has %d elements; crosscut guard is %d" % (len(down), CROSSCUT_GUARD)
            )
        # meet table inside the down-set, by poset index
        meet = {}
        for i in down:
            for j in down:
                s = self.elements[i].intersect(self.elements[j])
                meet[(i, j)] = self.index_of(s)
        others = [i for i in down if i != iup]
        total = 0

        def walk(pos, current, size):
            nonlocal total
            if pos == len(others):
                if current == ilo:
                    total += -1 if size % 2 == 0 else 1
                return
            walk(pos + 1, current, size)
            walk(pos + 1, meet[(current, others[pos])], size + 1)

        walk(0, iup, 1)
        return total

    def verify_intersection_closed(self):
        for i, a in enumerate(self.elements):
            for b in self.elements[i + 1 :]:
                if a.intersect(b) not in self._index:
                    return False
        return True


def poset_close(seed, top):
    """Smallest intersection-closed family containing seed and top.

    Elements are ordered deterministically (dimension, torsion order,
    lattice entries), so the resulting poset is reproducible.
    """
    m = top.ambient_rank
    for s in seed:
        if s.ambient_rank != m:
            raise AmbientMismatch("seed ambient rank differs from top")
        if not top.contains(s):
            raise ValueError("top does not contain every seed element")
    family = {top}
    family.update(seed)
    frontier = list(family)
    while frontier:
        fresh = []
        current = list(family)
        for a in frontier:
            for b in current:
                c = a.intersect(b)
                if c not in family:
                    family.add(c)
                    fresh.append(c)
        frontier = fresh

    def key(e):
        c = e.iso_class()
        return (c.torus_rank, c.torsion_order(), e.char_lattice)

    ordered = sorted(family, key=key)
    return SubgroupPoset(ordered, top)


def mobius(p, a, b):
    return p.mobius(a, b)


def crosscut_coeff(p, lower, upper):
    return p.crosscut_coeff(lower, upper)
