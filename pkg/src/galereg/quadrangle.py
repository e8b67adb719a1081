"""Primitive parallelograms supported by a Gale diagram.

A pair v, w in Z^2 with |det(v, w)| = 1 spans the parallelogram
conv{0, v, w, v+w}.  When every one of the four open sectors cut out by
the functionals b -> b.v and b -> b.w contains a Gale vector, each
vertex of the parallelogram is supported by some row and the pair is a
*syzygy quadrangle*: it records a minimal third syzygy of the lattice
ideal, in the fiber class of the vector a with

    a_j = max(0, b_j.v, b_j.w, b_j.(v+w)).

The quadrangles determine Cohen-Macaulayness (none exist iff the ideal
is Cohen-Macaulay, for non complete intersections) and the regularity
of a non-Cohen-Macaulay ideal (two less than the largest total degree
sum(a)).  Together with the shear-based complete-intersection test this
gives the homology-free fast path used by the classifier and the
searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor

from .errors import PreconditionCI, PreconditionCM
from .fiberhom import FiberClass, fiber_of, hilbert_degree, reg_deg_via_hilbert
from .intlinalg import det2, dot2, primitive_part, rot90
from .zlattice import GaleDiagram, Lattice, _xgcd


@dataclass(frozen=True)
class SyzygyQuadrangle:
    """A primitive parallelogram [v, w] supported by the Gale diagram.

    ``v`` and ``w`` are the canonical edge pair of the translation
    class, ``multidegree`` the fiber class of the vector a above, and
    ``total_degree`` = sum(a), which is the same for every translate.
    """

    v: tuple
    w: tuple
    multidegree: FiberClass
    total_degree: int

    def to_json_dict(self) -> dict:
        return {
            "v": list(self.v),
            "w": list(self.w),
            "rep": list(self.multidegree.representative),
            "total": self.total_degree,
        }


def _neg(v):
    return (-v[0], -v[1])


def _imbalancing_shear_exists(rows, v) -> bool:
    """Integer functional f with f.v = 1 and b.f <= 0 off the axis line.

    Vectors parallel to v land on the new y-axis and are exempt; every
    other row b imposes a one-sided rational bound on the shear
    parameter k in f = u0 + k*rot90(v).
    """
    g, x, y = _xgcd(v[0], v[1])
    assert g == 1
    u0 = (x, y)
    omega = rot90(v)
    lo = hi = None
    for b in rows:
        c1 = dot2(b, omega)
        if c1 == 0:
            continue
        bound = Fraction(-dot2(b, u0), c1)
        if c1 > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is None or hi is None:
        return True
    return floor(hi) >= ceil(lo)


@lru_cache(maxsize=None)
def _is_ci_rows(rows) -> bool:
    dirs = set()
    for b in rows:
        if b == (0, 0):
            continue
        p = primitive_part(b)
        dirs.add(p)
        dirs.add(_neg(p))
    return any(_imbalancing_shear_exists(rows, v) for v in sorted(dirs))


def is_complete_intersection(lattice: Lattice) -> bool:
    """Whether some unimodular change of basis makes the diagram imbalanced.

    Imbalanced means every Gale vector lies on the y-axis or has
    nonpositive y-coordinate; the ideal is a complete intersection
    exactly when such a presentation exists.  Candidate axis directions
    are the directions of Gale vectors: an axis parallel to no row
    would force all rows, which sum to zero, onto one line.
    """
    return _is_ci_rows(lattice.rows)


def _total_degree(rows, v, w):
    vw = (v[0] + w[0], v[1] + w[1])
    return sum(max(0, dot2(b, v), dot2(b, w), dot2(b, vw)) for b in rows)


def _canonical_pair(v, w):
    """Lexicographically smallest of the eight edge pairs of the class."""
    best = None
    for a in (v, _neg(v)):
        for b in (w, _neg(w)):
            for pair in ((a, b), (b, a)):
                if best is None or pair < best:
                    best = pair
    return best


@lru_cache(maxsize=None)
def _quadrangle_pairs(rows, bound: int):
    """All syzygy quadrangle classes of total degree <= bound.

    Returns canonical (v, w) pairs sorted by (total degree, v, w).  A
    class of total degree T satisfies sum_j |b_j.v| <= 2T because the
    rows sum to zero, so scanning primitive vectors inside that norm
    ball is exhaustive.
    """
    i, j = next(
        (i, j)
        for i in range(len(rows))
        for j in range(i + 1, len(rows))
        if det2(rows[i], rows[j])
    )
    r1, r2 = rows[i], rows[j]
    d = abs(det2(r1, r2))
    m = 2 * bound
    xmax = (m * (abs(r2[1]) + abs(r1[1]))) // d
    ymax = (m * (abs(r2[0]) + abs(r1[0]))) // d
    half = []
    for y in range(ymax + 1):
        for x in range(-xmax, xmax + 1):
            if y == 0 and x <= 0:
                continue
            v = (x, y)
            if abs(dot2(r1, v)) > m or abs(dot2(r2, v)) > m:
                continue
            if sum(abs(dot2(b, v)) for b in rows) > m:
                continue
            if primitive_part(v) != v:
                continue
            half.append(v)
    pos = {}
    neg = {}
    for v in half:
        p = q = 0
        for k, b in enumerate(rows):
            s = dot2(b, v)
            if s > 0:
                p |= 1 << k
            elif s < 0:
                q |= 1 << k
        pos[v] = p
        neg[v] = q
    found = []
    for a in range(len(half)):
        v = half[a]
        pv, nv = pos[v], neg[v]
        for b in range(a + 1, len(half)):
            w = half[b]
            pw, nw = pos[w], neg[w]
            if not (pv & pw and nv & pw and nv & nw and pv & nw):
                continue
            if abs(det2(v, w)) != 1:
                continue
            t = _total_degree(rows, v, w)
            if t <= bound:
                found.append((t, _canonical_pair(v, w)))
    found.sort()
    return tuple(found)


def enumerate_syzygy_quadrangles(lattice: Lattice, bound: int):
    """All syzygy quadrangles of total degree <= bound, canonically sorted.

    Raises PreconditionCI for complete intersections, whose resolutions
    are Koszul and carry no quadrangles in this sense.
    """
    if is_complete_intersection(lattice):
        raise PreconditionCI("quadrangle enumeration requires a non complete intersection")
    out = []
    for total, (v, w) in _quadrangle_pairs(lattice.rows, bound):
        vw = (v[0] + w[0], v[1] + w[1])
        a = tuple(max(0, dot2(b, v), dot2(b, w), dot2(b, vw)) for b in lattice.rows)
        out.append(SyzygyQuadrangle(v, w, fiber_of(lattice, a), total))
    return out


def _cm_search_bound(lattice: Lattice) -> int:
    """Horizon deg + 2; any quadrangle at all appears within it."""
    return hilbert_degree(lattice) + 2


def is_cohen_macaulay(lattice: Lattice) -> bool:
    """Whether the lattice ideal is Cohen-Macaulay.

    Complete intersections always are; otherwise the ideal is
    Cohen-Macaulay exactly when it has no syzygy quadrangle, and any
    quadrangle has total degree at most reg + 2 <= deg + 2, so the
    bounded scan is conclusive.
    """
    if is_complete_intersection(lattice):
        return True
    return not _quadrangle_pairs(lattice.rows, _cm_search_bound(lattice))


def regularity_fast(lattice: Lattice) -> int:
    """Regularity without homology.

    Non-Cohen-Macaulay ideals: two less than the maximum total degree
    of a syzygy quadrangle.  Cohen-Macaulay ideals: recovered from the
    Hilbert function, whose numerator ends at reg + 1 when the
    projective dimension is at most 2.
    """
    if not is_complete_intersection(lattice):
        quads = _quadrangle_pairs(lattice.rows, _cm_search_bound(lattice))
        if quads:
            return quads[-1][0] - 2
    return reg_deg_via_hilbert(lattice)[0]


_IDENTITY = ((1, 0), (0, 1))


def normalize_unit_square(lattice: Lattice):
    """Present the diagram so the unit square attains the regularity.

    Picks a syzygy quadrangle [v, w] of maximal total degree
    (lexicographically smallest canonical pair on ties) and returns the
    transformed diagram together with the change of basis U, whose
    columns are v and w, acting on rows by b -> b*U = (b.v, b.w).  When
    the unit square itself attains the maximum, U is the identity and
    the diagram is returned unchanged.  Cohen-Macaulay input is
    rejected: it has no quadrangles to normalize.
    """
    if is_cohen_macaulay(lattice):
        raise PreconditionCM("normalization requires a non-Cohen-Macaulay ideal")
    pairs = _quadrangle_pairs(lattice.rows, _cm_search_bound(lattice))
    max_total = pairs[-1][0]
    attaining = sorted(p for t, p in pairs if t == max_total)
    unit = _canonical_pair((1, 0), (0, 1))
    if unit in attaining:
        return GaleDiagram(lattice.rows), _IDENTITY
    v, w = attaining[0]
    u = ((v[0], w[0]), (v[1], w[1]))
    new_rows = tuple((dot2(b, v), dot2(b, w)) for b in lattice.rows)
    return GaleDiagram(new_rows), u
