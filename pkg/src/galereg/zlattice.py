"""Rank-2 integer lattices orthogonal to (1, ..., 1) and their Gale diagrams.

A lattice is stored through an n x 2 basis matrix B whose columns span
it.  The rows b_1, ..., b_n of B, one vector in Z^2 per coordinate of
the ambient space, form the Gale diagram of the lattice; replacing B by
B*U for unimodular U changes the diagram but not the lattice.  Most of
the combinatorial machinery in the other modules works directly on the
rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .errors import (
    AmbientTooSmall,
    NotHomogeneous,
    RankDeficient,
    WrongRank,
)
from .intlinalg import (
    det2,
    dot2,
    integer_kernel,
    mat_rank,
    primitive_part,
    solve_2x2,
)

Vec2 = tuple  # (x, y) integer pair


@dataclass(frozen=True)
class Lattice:
    """A rank-2 sublattice of Z^n, n >= 3, orthogonal to (1, ..., 1).

    ``rows[i]`` is the i-th Gale vector; the two columns of the matrix
    they form are a basis of the lattice.  Instances are immutable and
    hashable; build them with :func:`lattice_from_basis`,
    :func:`lattice_from_gale` or :func:`kernel_lattice`.
    """

    rows: tuple

    @property
    def n(self) -> int:
        return len(self.rows)

    def columns(self):
        """The two basis columns, as length-n tuples."""
        return tuple(tuple(r[k] for r in self.rows) for k in (0, 1))

    def to_json_dict(self) -> dict:
        return {"n": self.n, "basis": [list(c) for c in self.columns()]}


@dataclass(frozen=True)
class GaleDiagram:
    """The row sequence of a lattice basis: n vectors in Z^2 summing to zero."""

    vectors: tuple

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]


def _validate_rows(rows):
    if len(rows) < 3:
        raise AmbientTooSmall(f"need at least 3 coordinates, got {len(rows)}")
    sx = sum(r[0] for r in rows)
    sy = sum(r[1] for r in rows)
    if (sx, sy) != (0, 0):
        raise NotHomogeneous(f"basis columns sum to ({sx}, {sy}), not zero")
    if not any(det2(a, b) for a, b in combinations(rows, 2)):
        raise RankDeficient("basis columns are rationally dependent")


def lattice_from_basis(columns) -> Lattice:
    """Build a lattice from two integer basis columns of equal length.

    Raises AmbientTooSmall, NotHomogeneous or RankDeficient when the
    columns do not define a valid homogeneous rank-2 lattice.
    """
    c1, c2 = columns
    if len(c1) != len(c2):
        raise WrongRank("basis columns have different lengths")
    rows = tuple((int(a), int(b)) for a, b in zip(c1, c2))
    _validate_rows(rows)
    return Lattice(rows)


def lattice_from_gale(vectors) -> Lattice:
    """Build a lattice whose Gale diagram is the given vector sequence."""
    rows = tuple((int(v[0]), int(v[1])) for v in vectors)
    _validate_rows(rows)
    return Lattice(rows)


def kernel_lattice(a_matrix) -> Lattice:
    """Saturated kernel of an (n-2) x n integer matrix of rank n-2.

    The all-ones vector must lie in the rational row span, so that the
    kernel is orthogonal to it.  The kernel of an integer matrix is
    automatically saturated; the basis comes from Hermite elimination
    and is deterministic.
    """
    rows = [tuple(int(x) for x in r) for r in a_matrix]
    if not rows:
        raise WrongRank("empty matrix")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise WrongRank("ragged matrix")
    if len(rows) != n - 2:
        raise WrongRank(f"expected {n - 2} rows for ambient dimension {n}, got {len(rows)}")
    if mat_rank(rows) != n - 2:
        raise WrongRank("matrix rank is below n - 2")
    ones = tuple(1 for _ in range(n))
    if mat_rank(rows + [ones]) != n - 2:
        raise NotHomogeneous("the all-ones vector is not in the row span")
    basis = integer_kernel(rows, n)
    assert len(basis) == 2
    return lattice_from_basis(basis)


def gale_diagram(lattice: Lattice) -> GaleDiagram:
    """The Gale diagram determined by the stored basis."""
    return GaleDiagram(lattice.rows)


def minor_gcd(lattice: Lattice) -> int:
    """Gcd of all 2 x 2 minors of the basis matrix."""
    g = 0
    for a, b in combinations(lattice.rows, 2):
        g = gcd(g, det2(a, b))
        if g == 1:
            return 1
    return g


def is_saturated(lattice: Lattice) -> bool:
    """True when the lattice equals its saturation (minor gcd is 1)."""
    return minor_gcd(lattice) == 1


def contains(lattice: Lattice, target) -> bool:
    """Exact membership of an integer vector in the lattice itself.

    Solves B x = target over the rationals through one independent row
    pair and demands an integer solution reproducing every coordinate.
    """
    rows = lattice.rows
    pair = next(((i, j) for i, j in combinations(range(len(rows)), 2)
                 if det2(rows[i], rows[j])))
    i, j = pair
    x = solve_2x2(rows[i], rows[j], (target[i], target[j]))
    if x is None:
        return False
    return all(dot2(r, x) == t for r, t in zip(rows, target))


def is_nondegenerate(lattice: Lattice) -> bool:
    """True when no difference e_i - e_j of unit vectors lies in the lattice."""
    n = lattice.n
    for i, j in combinations(range(n), 2):
        target = tuple(1 if k == i else -1 if k == j else 0 for k in range(n))
        if contains(lattice, target):
            return False
    return True


def strip_zero_coordinates(lattice: Lattice) -> Lattice:
    """Drop coordinates whose Gale vector is zero.

    The corresponding variables do not appear in the ideal.  Raises
    AmbientTooSmall when fewer than three coordinates remain.
    """
    rows = tuple(r for r in lattice.rows if r != (0, 0))
    if len(rows) < 3:
        raise AmbientTooSmall("fewer than 3 nonzero Gale vectors remain")
    return Lattice(rows)


def apply_right(v, u):
    """Row vector times 2 x 2 matrix: v * U."""
    return (v[0] * u[0][0] + v[1] * u[1][0], v[0] * u[0][1] + v[1] * u[1][1])


def transform_lattice(lattice: Lattice, u) -> Lattice:
    """Replace the basis B by B*U (same lattice when U is unimodular)."""
    return Lattice(tuple(apply_right(r, u) for r in lattice.rows))


def _transition(pair_from, pair_to):
    """Integer 2 x 2 matrix U with pair_from[k] * U = pair_to[k], or None.

    Only unimodular solutions are returned.
    """
    dg = det2(pair_from[0], pair_from[1])
    # U = M_from^{-1} M_to, computed by Cramer entrywise
    f0, f1 = pair_from
    t0, t1 = pair_to
    u00 = f1[1] * t0[0] - f0[1] * t1[0]
    u01 = f1[1] * t0[1] - f0[1] * t1[1]
    u10 = f0[0] * t1[0] - f1[0] * t0[0]
    u11 = f0[0] * t1[1] - f1[0] * t0[1]
    if any(x % dg for x in (u00, u01, u10, u11)):
        return None
    u = ((u00 // dg, u01 // dg), (u10 // dg, u11 // dg))
    if abs(u[0][0] * u[1][1] - u[0][1] * u[1][0]) != 1:
        return None
    return u


def gale_equivalent(g, h, up_to_permutation: bool = False) -> bool:
    """Decide whether two Gale diagrams differ by a GL_2(Z) change of basis.

    With ``up_to_permutation`` the vector sequences are compared as
    multisets, so the answer is whether the two lattices agree up to a
    relabeling of the coordinates.
    """
    gv = tuple(tuple(v) for v in g)
    hv = tuple(tuple(v) for v in h)
    if len(gv) != len(hv):
        return False
    pair = next(((i, j) for i, j in combinations(range(len(gv)), 2)
                 if det2(gv[i], gv[j])), None)
    if pair is None:
        raise RankDeficient("diagram does not span the plane")
    i, j = pair
    dg = abs(det2(gv[i], gv[j]))
    if not up_to_permutation:
        if abs(det2(hv[i], hv[j])) != dg:
            return False
        u = _transition((gv[i], gv[j]), (hv[i], hv[j]))
        if u is None:
            return False
        return all(apply_right(v, u) == w for v, w in zip(gv, hv))
    h_sorted = sorted(hv)
    for k in range(len(hv)):
        for l in range(len(hv)):
            if k == l or abs(det2(hv[k], hv[l])) != dg:
                continue
            u = _transition((gv[i], gv[j]), (hv[k], hv[l]))
            if u is None:
                continue
            if sorted(apply_right(v, u) for v in gv) == h_sorted:
                return True
    return False


def _xgcd(a: int, b: int):
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _distinct_orderings(values):
    """Distinct permutations of a value multiset, in lexicographic order."""
    counts = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts)
    total = len(values)
    prefix = []

    def rec():
        if len(prefix) == total:
            yield tuple(prefix)
            return
        for v in keys:
            if counts[v]:
                counts[v] -= 1
                prefix.append(v)
                yield from rec()
                prefix.pop()
                counts[v] += 1

    yield from rec()


def _hnf2_key(rows):
    """Flattened column Hermite form of the basis with rows in the given order."""
    u = [r[0] for r in rows]
    v = [r[1] for r in rows]
    n = len(u)
    r1 = next(r for r in range(n) if u[r] or v[r])
    g, x, y = _xgcd(u[r1], v[r1])
    s, t = v[r1] // g, u[r1] // g
    c1 = [x * u[i] + y * v[i] for i in range(n)]
    c2 = [t * v[i] - s * u[i] for i in range(n)]
    r2 = next(r for r in range(r1 + 1, n) if c2[r])
    if c2[r2] < 0:
        c2 = [-a for a in c2]
    q = c1[r2] // c2[r2]
    if q:
        c1 = [c1[i] - q * c2[i] for i in range(n)]
    return tuple(c1) + tuple(c2)


def permutation_canonical_key(lattice: Lattice) -> tuple:
    """Canonical key identifying the lattice up to coordinate permutation.

    Lexicographically minimal column Hermite form over all row
    permutations; two lattices get the same key exactly when one is the
    image of the other under a permutation of the ambient coordinates.
    """
    return min(_hnf2_key(order) for order in _distinct_orderings(lattice.rows))


def lies_on_two_lines(vectors) -> bool:
    """True when all nonzero vectors sit on at most two lines through 0."""
    dirs = set()
    for v in vectors:
        if tuple(v) == (0, 0):
            continue
        p = primitive_part(tuple(v))
        dirs.add(max(p, (-p[0], -p[1])))
    return len(dirs) <= 2


def hits_all_open_quadrants(vectors) -> bool:
    """True when each of the four open quadrants contains a vector."""
    quads = set()
    for x, y in vectors:
        if x > 0 and y > 0:
            quads.add(1)
        elif x < 0 and y > 0:
            quads.add(2)
        elif x < 0 and y < 0:
            quads.add(3)
        elif x > 0 and y < 0:
            quads.add(4)
    return len(quads) == 4
