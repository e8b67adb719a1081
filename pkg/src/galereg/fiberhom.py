"""Fibers, fiber polytopes, and the homology Betti-table oracle.

For a residue class C of Z^n modulo a homogeneous lattice L, the fiber
of C is the finite set of exponent vectors of all monomials whose class
is C.  The simplicial complex generated by the supports of those
monomials computes multigraded Betti numbers of S/I_L:

    beta_{i,C}(S/I_L) = rank of the (i-1)-st reduced homology of the complex.

The degree of I_L is the stabilized finite difference of the Hilbert
function (the number of fiber classes per total degree), and the
regularity is read off the Betti table.  All arithmetic is exact; a
checked int64 fast path accelerates the enumeration and falls back to
big integers when its bound fails.

Classes are keyed through a left Smith transform U of the basis matrix:
a and a' are congruent modulo the column lattice exactly when U*a and
U*a' agree modulo the diagonal entries in the first rank coordinates
and exactly elsewhere.  Cone classes (where some variable divides the
whole fiber) are contractible and are pruned before any homology runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import BadInput, Degenerate, InternalInconsistency, Unbounded
from .intlinalg import dot2, det2, mat_rank, rank_mod_p, rot90, smith_left
from .zlattice import Lattice, is_nondegenerate

_INT64_SAFE = 1 << 62
_HARD_HORIZON = 500


# ---------------------------------------------------------------------------
# class keys


class _Ctx:
    """Per-lattice data for keying residue classes of Z^n modulo the span."""

    __slots__ = ("rows", "n", "r", "u", "mods", "u_np", "row_abs")

    def __init__(self, rows):
        self.rows = rows
        self.n = len(rows)
        self.r = len(rows[0])
        u, diag = smith_left(rows)
        if len(diag) != self.r:
            raise InternalInconsistency("basis matrix does not have full column rank")
        self.u = u
        self.mods = diag
        self.u_np = np.array(u, dtype=np.int64)
        self.row_abs = max(sum(abs(x) for x in row) for row in u)

    def key(self, a):
        w = [sum(u_i[j] * a[j] for j in range(self.n)) for u_i in self.u]
        for k in range(self.r):
            w[k] %= self.mods[k]
        return tuple(w)


@lru_cache(maxsize=None)
def _ctx(rows) -> _Ctx:
    return _Ctx(rows)


@lru_cache(maxsize=128)
def _compositions(n: int, d: int):
    """All exponent vectors in N^n of total degree d, as a read-only array."""
    if d == 0:
        arr = np.zeros((1, n), dtype=np.int64)
    elif n == 1:
        arr = np.array([[d]], dtype=np.int64)
    else:
        bars = np.array(list(combinations(range(d + n - 1), n - 1)), dtype=np.int64)
        left = np.hstack([np.full((len(bars), 1), -1, dtype=np.int64), bars])
        right = np.hstack([bars, np.full((len(bars), 1), d + n - 1, dtype=np.int64)])
        arr = right - left - 1
    arr.setflags(write=False)
    return arr


def _py_compositions(n, d):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _py_compositions(n - 1, d - first):
            yield (first,) + rest


def _degree_data(ctx: _Ctx, d: int, want_groups: bool):
    """Fiber classes of total degree d.

    Returns (count, groups): the Hilbert function value at d and, when
    requested, the list of fibers that survive the cone prune, each as
    a list of exponent tuples.
    """
    if (d + 1) * ctx.row_abs < _INT64_SAFE:
        exps = _compositions(ctx.n, d)
        keys = exps @ ctx.u_np.T
        if ctx.mods:
            keys = keys.copy()
            for k in range(ctx.r):
                keys[:, k] %= ctx.mods[k]
        order = np.lexsort(keys.T)
        sorted_keys = keys[order]
        change = np.empty(len(sorted_keys), dtype=bool)
        change[0] = True
        if len(sorted_keys) > 1:
            np.any(sorted_keys[1:] != sorted_keys[:-1], axis=1, out=change[1:])
        starts = np.flatnonzero(change)
        count = len(starts)
        if not want_groups or d == 0:
            return count, []
        sorted_exps = exps[order]
        mins = np.minimum.reduceat(sorted_exps, starts, axis=0)
        live = np.flatnonzero(~mins.any(axis=1))
        ends = np.append(starts[1:], len(sorted_keys))
        groups = []
        for g in live:
            block = sorted_exps[starts[g]:ends[g]]
            groups.append([tuple(int(x) for x in row) for row in block])
        return count, groups
    # big-integer fallback
    buckets = {}
    for a in _py_compositions(ctx.n, d):
        buckets.setdefault(ctx.key(a), []).append(a)
    count = len(buckets)
    if not want_groups or d == 0:
        return count, []
    groups = []
    for rows in buckets.values():
        if all(min(col) == 0 for col in zip(*rows)):
            groups.append(rows)
    return count, groups


# ---------------------------------------------------------------------------
# simplicial homology


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex given by its inclusion-maximal faces."""

    facets: tuple

    @property
    def vertices(self):
        return tuple(sorted({v for f in self.facets for v in f}))


def complex_of_supports(supports) -> SimplicialComplex:
    """Complex generated by the given vertex sets."""
    sets = sorted({tuple(sorted(set(s))) for s in supports})
    maximal = [f for f in sets
               if not any(set(f) < set(g) for g in sets if g != f)]
    return SimplicialComplex(tuple(maximal))


def _homology_ranks(facets, top: int, field):
    """Reduced homology ranks (h_0, ..., h_top) of the complex the facets generate.

    Ranks are over Q when field is None, else over GF(field).  Uses the
    augmented chain complex, so a single nonempty contractible facet
    gives all zeros.
    """
    if not facets:
        return (0,) * (top + 1)
    common = set(facets[0])
    for f in facets[1:]:
        common &= set(f)
        if not common:
            break
    if common:
        return (0,) * (top + 1)  # cone, contractible
    faces = [set() for _ in range(top + 2)]
    for f in facets:
        fl = tuple(sorted(f))
        for size in range(1, min(len(fl), top + 2) + 1):
            faces[size - 1].update(combinations(fl, size))
    dims = [sorted(faces[k]) for k in range(top + 2)]
    index = [{f: i for i, f in enumerate(dims[k])} for k in range(top + 2)]
    ranks = [0] * (top + 3)
    ranks[0] = 1  # augmentation map onto the empty face
    for k in range(1, top + 2):
        if not dims[k] or not dims[k - 1]:
            ranks[k] = 0
            continue
        mat = [[0] * len(dims[k]) for _ in dims[k - 1]]
        for ci, face in enumerate(dims[k]):
            for pos in range(k + 1):
                sub = face[:pos] + face[pos + 1:]
                mat[index[k - 1][sub]][ci] = -1 if pos % 2 else 1
        ranks[k] = rank_mod_p(mat, field) if field else mat_rank(mat)
    return tuple(len(dims[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1))


def reduced_homology_ranks(cx: SimplicialComplex, top: int = 2, field=None):
    """Reduced homology ranks of the complex in dimensions 0..top."""
    return _homology_ranks(list(cx.facets), top, field)


# ---------------------------------------------------------------------------
# Betti tables


@dataclass(frozen=True)
class BettiEntry:
    """One multigraded entry of the resolution of S/I_L.

    ``i`` is the homological position (1 = minimal generators of the
    ideal), ``representative`` the lexicographically smallest member of
    the fiber, ``rank`` the Betti number of that class.
    """

    i: int
    representative: tuple
    total_degree: int
    rank: int

    def to_json_dict(self):
        return {"i": self.i, "rep": list(self.representative),
                "total": self.total_degree, "rank": self.rank}


@dataclass(frozen=True)
class BettiTable:
    entries: tuple
    horizon: int

    def select(self, i: int):
        return tuple(e for e in self.entries if e.i == i)

    def max_i(self) -> int:
        return max((e.i for e in self.entries), default=0)

    def to_json_dict(self):
        return {"entries": [e.to_json_dict() for e in self.entries],
                "horizon": self.horizon}


def _entry_sort_key(e: BettiEntry):
    return (e.i, e.total_degree, e.representative)


def _entries_at(ctx: _Ctx, d: int, top: int, field):
    count, groups = _degree_data(ctx, d, True)
    entries = []
    for rows in groups:
        rep = min(rows)
        supports = {tuple(i for i, x in enumerate(row) if x) for row in rows}
        h = _homology_ranks(sorted(supports), top, field)
        for i in range(1, top + 2):
            if h[i - 1]:
                entries.append(BettiEntry(i, rep, d, h[i - 1]))
    return count, entries


def _top_dim(n: int, r: int) -> int:
    # projective dimension of S/I_L is at most 3 in rank 2 and n-1 in general
    return 2 if r == 2 else n - 2


def _diff_tail(hf, m: int, window: int):
    """Last `window` values of the m-th forward difference, or None."""
    if len(hf) < m + window:
        return None
    seq = list(hf)
    for _ in range(m):
        seq = [b - a for a, b in zip(seq, seq[1:])]
    return seq[-window:]


@lru_cache(maxsize=None)
def _resolve_rows(rows, field=None):
    """Degree, regularity, Betti table, and Hilbert values for a span.

    Works for any column rank; drives the horizon until the Hilbert
    difference is stable over a full window, the horizon clears the
    candidate degree by 2, and no Betti entry sits within 3 of it.
    """
    ctx = _ctx(rows)
    n, r = ctx.n, ctx.r
    m = n - r - 1
    top = _top_dim(n, r)
    hf = []
    entries = []
    d = 0
    while True:
        count, es = _entries_at(ctx, d, top, field)
        hf.append(count)
        entries.extend(es)
        tail = _diff_tail(hf, m, n)
        if tail is not None and len(set(tail)) == 1 and tail[0] >= 1:
            cand = tail[0]
            max_total = max((e.total_degree for e in entries), default=0)
            if d >= cand + 2 and max_total <= d - 3:
                deg = cand
                break
        if d > _HARD_HORIZON:
            raise InternalInconsistency("Hilbert function failed to stabilize")
        d += 1
    if not entries:
        raise InternalInconsistency("no Betti entries found for a nonzero ideal")
    reg = max(e.total_degree - e.i for e in entries) + 1
    table = BettiTable(tuple(sorted(entries, key=_entry_sort_key)), horizon=d)
    return deg, reg, table, tuple(hf)


def degree_and_regularity_of_span(columns, field=None):
    """(degree, regularity, BettiTable) for the span of integer columns.

    The columns must be linearly independent and orthogonal to the
    all-ones vector; any rank is accepted.  This is the raw engine
    behind :func:`degree_and_regularity`.
    """
    rows = tuple(tuple(int(c[i]) for c in columns) for i in range(len(columns[0])))
    deg, reg, table, _ = _resolve_rows(rows, field)
    return deg, reg, table


def degree_and_regularity(lattice: Lattice, field=None):
    """Exact (degree, regularity, BettiTable) of the lattice ideal.

    Requires a nondegenerate lattice.  Verifies regularity <= degree,
    which holds for every codimension-2 lattice ideal, and raises
    InternalInconsistency otherwise.
    """
    if not is_nondegenerate(lattice):
        raise Degenerate("some x_i - x_j lies in the ideal")
    deg, reg, table, _ = _resolve_rows(lattice.rows, field)
    if reg > deg:
        raise InternalInconsistency(f"regularity {reg} exceeds degree {deg}")
    return deg, reg, table


def betti_table(lattice: Lattice, horizon: int, field=None) -> BettiTable:
    """Betti entries of S/I_L for all classes of total degree <= horizon."""
    if horizon < 2:
        raise BadInput("horizon must be at least 2")
    ctx = _ctx(lattice.rows)
    entries = []
    for d in range(horizon + 1):
        _, es = _entries_at(ctx, d, _top_dim(ctx.n, ctx.r), field)
        entries.extend(es)
    return BettiTable(tuple(sorted(entries, key=_entry_sort_key)), horizon=horizon)


def hilbert_function(lattice: Lattice, d: int) -> int:
    """Number of fiber classes of total degree d (the Hilbert function of S/I_L)."""
    if d < 0:
        return 0
    count, _ = _degree_data(_ctx(lattice.rows), d, False)
    return count


# ---------------------------------------------------------------------------
# Hilbert-series shortcuts (no homology)


@lru_cache(maxsize=None)
def _hilbert_growth(rows):
    """(degree, Hilbert values) from counts alone, horizon chosen adaptively."""
    ctx = _ctx(rows)
    n, r = ctx.n, ctx.r
    m = n - r - 1
    hf = []
    d = 0
    while True:
        count, _ = _degree_data(ctx, d, False)
        hf.append(count)
        tail = _diff_tail(hf, m, n)
        if tail is not None and len(set(tail)) == 1 and tail[0] >= 1 and d >= tail[0] + 2:
            return tail[0], tuple(hf)
        if d > _HARD_HORIZON:
            raise InternalInconsistency("Hilbert function failed to stabilize")
        d += 1


def hilbert_degree(lattice: Lattice) -> int:
    """Degree of the lattice ideal from Hilbert counts only (no homology)."""
    return _hilbert_growth(lattice.rows)[0]


def reg_deg_via_hilbert(lattice: Lattice):
    """(regularity, degree) from the Hilbert series numerator.

    Valid whenever S/I_L is Cohen-Macaulay (projective dimension 2):
    the numerator of the Hilbert series then ends in degree reg + 1.
    Cheap, exact, and homology-free.
    """
    rows = lattice.rows
    n = len(rows)
    deg, hf = _hilbert_growth(rows)
    need = deg + 5
    hf = list(hf)
    ctx = _ctx(rows)
    while len(hf) <= need:
        count, _ = _degree_data(ctx, len(hf), False)
        hf.append(count)
    numer = []
    for k in range(need + 1):
        c = sum((-1) ** j * math.comb(n, j) * hf[k - j]
                for j in range(min(k, n) + 1) if k - j < len(hf))
        numer.append(c)
    if any(numer[k] for k in range(deg + 2, need + 1)):
        raise InternalInconsistency("Hilbert numerator does not terminate; not Cohen-Macaulay?")
    last = max(k for k in range(need + 1) if numer[k])
    return last - 1, deg


def hilbert_numerator(lattice: Lattice, through: int):
    """Coefficients of the Hilbert series numerator up to the given degree."""
    rows = lattice.rows
    n = len(rows)
    ctx = _ctx(rows)
    hf = []
    while len(hf) <= through:
        count, _ = _degree_data(ctx, len(hf), False)
        hf.append(count)
    return tuple(sum((-1) ** j * math.comb(n, j) * hf[k - j]
                     for j in range(min(k, n) + 1))
                 for k in range(through + 1))


# ---------------------------------------------------------------------------
# fiber polytopes


@dataclass(frozen=True)
class Polygon:
    """Integer points of {u in Z^2 : B u <= a} and their convex hull."""

    a: tuple
    points: tuple
    vertices: tuple

    @property
    def is_primitive(self) -> bool:
        """True when every lattice point is a hull vertex."""
        return bool(self.points) and len(self.points) == len(self.vertices)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points):
    pts = sorted(points)
    if len(pts) <= 2:
        return tuple(pts)

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(reversed(pts))
    return tuple(lower[:-1] + upper[:-1])


def polygon_of(lattice: Lattice, a) -> Polygon:
    """Exact enumeration of the fiber polytope for the degree vector a >= 0."""
    rows = lattice.rows
    avec = tuple(int(x) for x in a)
    if len(avec) != lattice.n:
        raise BadInput(f"degree vector has length {len(avec)}, expected {lattice.n}")
    if any(x < 0 for x in avec):
        raise BadInput("degree vector must be componentwise nonnegative")
    nonzero = [r for r in rows if r != (0, 0)]
    for v in nonzero:
        for cand in (rot90(v), rot90(rot90(rot90(v)))):
            if all(dot2(r, cand) <= 0 for r in rows):
                raise Unbounded("the fiber polytope has a recession direction")
    verts_x, verts_y = [], []
    idx = range(len(rows))
    for i, j in combinations(idx, 2):
        dij = det2(rows[i], rows[j])
        if dij == 0:
            continue
        ux = Fraction(avec[i] * rows[j][1] - avec[j] * rows[i][1], dij)
        uy = Fraction(rows[i][0] * avec[j] - rows[j][0] * avec[i], dij)
        if all(r[0] * ux + r[1] * uy <= avec[k] for k, r in enumerate(rows)):
            verts_x.append(ux)
            verts_y.append(uy)
    if not verts_x:
        return Polygon(avec, (), ())
    points = []
    for x in range(math.ceil(min(verts_x)), math.floor(max(verts_x)) + 1):
        for y in range(math.ceil(min(verts_y)), math.floor(max(verts_y)) + 1):
            if all(r[0] * x + r[1] * y <= avec[k] for k, r in enumerate(rows)):
                points.append((x, y))
    points = tuple(sorted(points))
    return Polygon(avec, points, _hull(points))


@dataclass(frozen=True)
class FiberClass:
    """A fiber: all monomials of one residue class, with canonical representative."""

    representative: tuple
    total_degree: int
    monomials: tuple


def fiber_of(lattice: Lattice, a) -> FiberClass:
    """The fiber of the class of a, for a nonnegative integer vector a."""
    avec = tuple(int(x) for x in a)
    if any(x < 0 for x in avec):
        raise BadInput("fiber representatives must be nonnegative")
    poly = polygon_of(lattice, avec)
    monos = tuple(sorted(tuple(avec[k] - dot2(r, u) for k, r in enumerate(lattice.rows))
                         for u in poly.points))
    return FiberClass(monos[0], sum(avec), monos)


def class_key(lattice: Lattice, a) -> tuple:
    """Hashable key identifying the residue class of a modulo the lattice."""
    return _ctx(lattice.rows).key(tuple(int(x) for x in a))
