"""Property-based invariants: equivalence, transforms, Hilbert counts."""

from itertools import combinations_with_replacement

from hypothesis import assume, given, settings, strategies as st

from galereg.errors import GaleregError, NotAllQuadrants, PreconditionNotBalanced
from galereg.fiberhom import (
    degree_and_regularity,
    hilbert_degree,
    hilbert_function,
    reg_deg_via_hilbert,
)
from galereg.intlinalg import dot2
from galereg.quadrangle import (
    enumerate_syzygy_quadrangles,
    is_cohen_macaulay,
    is_complete_intersection,
    normalize_unit_square,
    regularity_fast,
)
from galereg.reduction import (
    ReductionDatum,
    degree_drop_one,
    degree_preserved,
    enumerate_partitions,
    reduced_gale,
    support_sets,
)
from galereg.searches import sweep_orbits
from galereg.zlattice import (
    contains,
    gale_equivalent,
    is_nondegenerate,
    is_saturated,
    kernel_lattice,
    lattice_from_gale,
    minor_gcd,
    permutation_canonical_key,
    transform_lattice,
)

# ---------------------------------------------------------------------------
# strategies

coords = st.integers(min_value=-2, max_value=2)
vectors = st.tuples(coords, coords)


@st.composite
def gale_rows(draw, min_n=3, max_n=5):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    head = [draw(vectors) for _ in range(n - 1)]
    last = (-sum(v[0] for v in head), -sum(v[1] for v in head))
    rows = head + [last]
    try:
        lattice_from_gale(rows)
    except GaleregError:
        assume(False)
    return tuple(rows)


@st.composite
def unimodular(draw):
    a = draw(st.integers(min_value=-2, max_value=2))
    b = draw(st.integers(min_value=-2, max_value=2))
    u = ((1, a), (0, 1))
    v = ((1, 0), (b, 1))
    m = tuple(
        tuple(sum(u[i][k] * v[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )
    if draw(st.booleans()):
        m = (m[1], m[0])  # swap rows: determinant flips sign, stays +-1
    if draw(st.booleans()):
        m = ((-m[0][0], -m[0][1]), m[1])
    return m


@st.composite
def equivalent_pair(draw):
    rows = draw(gale_rows())
    u = draw(unimodular())
    order = draw(st.permutations(range(len(rows))))
    base = lattice_from_gale(rows)
    image_rows = [transform_lattice(base, u).rows[i] for i in order]
    return base, lattice_from_gale(image_rows)


# ---------------------------------------------------------------------------
# canonical keys decide equivalence


@settings(deadline=None, max_examples=60)
@given(equivalent_pair())
def test_equivalent_images_share_keys(pair):
    base, image = pair
    assert permutation_canonical_key(base) == permutation_canonical_key(image)
    assert gale_equivalent(base.rows, image.rows, up_to_permutation=True)


@settings(deadline=None, max_examples=60)
@given(gale_rows(), gale_rows())
def test_key_equality_decides_equivalence(rows_a, rows_b):
    a, b = lattice_from_gale(rows_a), lattice_from_gale(rows_b)
    assume(a.n == b.n)
    same_key = permutation_canonical_key(a) == permutation_canonical_key(b)
    assert same_key == gale_equivalent(rows_a, rows_b, up_to_permutation=True)


@settings(deadline=None, max_examples=40)
@given(equivalent_pair())
def test_invariants_under_equivalence(pair):
    base, image = pair
    assert minor_gcd(base) == minor_gcd(image)
    assert is_saturated(base) == is_saturated(image)
    assert is_nondegenerate(base) == is_nondegenerate(image)
    assert is_complete_intersection(base) == is_complete_intersection(image)


# ---------------------------------------------------------------------------
# kernels


@settings(deadline=None, max_examples=50)
@given(st.lists(st.integers(min_value=0, max_value=6), min_size=4, max_size=4))
def test_kernel_lattices_are_saturated(weights):
    n = len(weights)
    assume(len(set(weights)) >= 2)  # rank 2 with the all-ones row
    lat = kernel_lattice([(1,) * n, tuple(weights)])
    assert is_saturated(lat)
    assert minor_gcd(lat) == 1
    basis = list(zip(*[r for r in lat.rows]))  # columns of the Gale rows
    for b in basis:
        assert contains(lat, b)
        assert sum(b) == 0
        assert sum(b[i] * weights[i] for i in range(n)) == 0


# ---------------------------------------------------------------------------
# Hilbert function


def naive_hilbert(lattice, d):
    n = lattice.n
    classes = []
    for combo in combinations_with_replacement(range(n), d):
        mono = [0] * n
        for i in combo:
            mono[i] += 1
        for rep in classes:
            diff = tuple(m - r for m, r in zip(mono, rep))
            if contains(lattice, diff):
                break
        else:
            classes.append(tuple(mono))
    return len(classes)


@settings(deadline=None, max_examples=25)
@given(gale_rows(max_n=4), st.integers(min_value=0, max_value=3))
def test_hilbert_function_matches_naive_count(rows, d):
    lat = lattice_from_gale(rows)
    assert hilbert_function(lat, d) == naive_hilbert(lat, d)


@settings(deadline=None, max_examples=25)
@given(gale_rows(max_n=4))
def test_regularity_at_most_degree(rows):
    lat = lattice_from_gale(rows)
    assume(is_nondegenerate(lat))
    reg = regularity_fast(lat)
    deg = hilbert_degree(lat)
    assert 1 <= reg <= deg
    if is_cohen_macaulay(lat):
        assert reg_deg_via_hilbert(lat) == (reg, deg)


# ---------------------------------------------------------------------------
# syzygy quadrangles


@settings(deadline=None, max_examples=30)
@given(unimodular(), st.sampled_from([
    ((1, 1), (2, -1), (-1, -1), (-2, 1)),
    ((1, 0), (-1, 1), (-1, -3), (1, 2)),
]))
def test_quadrangle_totals_invariant(u, rows):
    base = lattice_from_gale(rows)
    image = transform_lattice(base, u)
    bound = hilbert_degree(base) + 2
    totals = sorted(q.total_degree for q in enumerate_syzygy_quadrangles(base, bound))
    totals_image = sorted(
        q.total_degree for q in enumerate_syzygy_quadrangles(image, bound)
    )
    assert totals == totals_image


# ---------------------------------------------------------------------------
# reduction data from the small sweep corpus


def all_reduction_data(max_n=5, max_coord=2):
    # The invariant chain needs the unit square to attain the
    # regularity, so normalize each non-Cohen-Macaulay orbit first.
    reps, _ = sweep_orbits(max_n, max_coord)
    for lat in reps:
        if is_cohen_macaulay(lat):
            continue
        diagram, _ = normalize_unit_square(lat)
        normalized = lattice_from_gale(diagram)
        try:
            parts = enumerate_partitions(diagram)
        except NotAllQuadrants:
            continue
        for part in parts:
            yield normalized, diagram, ReductionDatum(normalized, diagram, part)


def test_support_set_solutions_have_defining_dots():
    checked = 0
    for _, _, datum in all_reduction_data():
        for q in (1, 2, 3, 4):
            s = support_sets(datum, q)
            rows = list(datum.members(q)) + list(datum.members(s.opposite))
            for u in s.c:
                dots = [dot2(r, u) for r in rows]
                assert all(d in (-1, 0, 1) for d in dots)
                assert 1 in dots and -1 in dots
                checked += 1
    assert checked >= 100


def test_reduction_chain_and_degree_witnesses():
    seen = 0
    for lat, _, datum in all_reduction_data():
        deg_l, reg_l, _ = degree_and_regularity(lat)
        _, reduced_lattice = reduced_gale(datum)
        deg_q, reg_q, _ = degree_and_regularity(reduced_lattice)
        assert reg_l <= reg_q <= deg_q <= deg_l
        assert degree_preserved(datum) == (deg_q == deg_l)
        try:
            drop = degree_drop_one(datum)
        except PreconditionNotBalanced:
            drop = None
        if drop is not None:
            assert drop == (deg_q == deg_l - 1)
        seen += 1
    assert seen >= 30
