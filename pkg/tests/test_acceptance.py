"""End-to-end acceptance suite.

One test per criterion; every equality below is exact (no tolerances).
Each test prints a PASS line once all of its assertions hold, so running
with -v -s gives a one-line verdict per criterion.
"""

import itertools
import random

import pytest
from fractions import Fraction

from latpoly import lpx
from latpoly.cayley import (
    build,
    build_strict,
    check_localsplit,
    detect,
    generate,
    lattice_point,
    segment,
    width_candidates,
)
from latpoly.invariants import (
    classify,
    codegree,
    degree,
    is_q_normal,
    is_spanned,
    nef_value,
    qcodegree,
    spanned_at_vertex,
    vertex_shift,
)
from latpoly.polytope import (
    VPolytope,
    apply_unimodular,
    facets,
    is_smooth,
    lattice_equivalent,
    lattice_points,
    shrink,
    vertex_data,
    vertices,
)
from latpoly.ratlin import dot, smith_normal_form


def _report(name):
    print(f"[acceptance] {name}: PASS")


def unit_square():
    return vertices(generate("cube", 2))


def rectangle(a, b):
    return VPolytope(2, ((0, 0), (0, b), (a, 0), (a, b)))


def random_unimodular(rng, n, ops=6):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        for col in range(n):
            m[i][col] += c * m[j][col]
    if rng.random() < 0.5:
        m.reverse()
    return tuple(tuple(r) for r in m)


def transformed(h, u, t):
    return facets(apply_unimodular(vertices(h), u, t))


@pytest.fixture(scope="module")
def strict_builds():
    """Smooth strict order-1 builds: all small Lawrence prisms plus sums of
    unit squares, keyed by the number of heights k."""
    out = []
    for count in range(2, 6):  # n = count <= 5
        for lengths in itertools.combinations_with_replacement(range(1, 5), count):
            summands = [segment(l) for l in lengths]
            out.append((f"prism{lengths}", summands, facets(build_strict(summands, 1))))
    for count in range(2, 5):
        summands = [unit_square()] * count
        out.append((f"squares x{count}", summands, facets(build_strict(summands, 1))))
    return out


@pytest.fixture(scope="module")
def corpus(strict_builds):
    members = [(name, h) for name, _, h in strict_builds]
    for n in range(1, 7):
        members.append((f"2simplex{n}", generate("simplex", 2, n)))
    for n in range(2, 5):
        for d in range(2, 6):
            for lam in range(1, d):
                members.append((f"blowup({d},{lam},{n})", generate("blowup", d, lam, n)))
    return members


@pytest.fixture(scope="module")
def corpus_reports(corpus):
    return [(name, h, classify(h)) for name, h in corpus]


def test_simplex_family():
    for n in range(1, 6):
        p = generate("simplex", 1, n)
        assert codegree(p) == n + 1
        assert qcodegree(p) == n + 1
        assert nef_value(p) == n + 1
        assert degree(p) == 0
        dec = detect(vertices(p), 1)
        assert dec is not None and dec.k == n and dec.strict
        assert len(dec.summands) == n + 1
        assert all(len(s.vertices) == 1 for s in dec.summands)
    _report("simplex family")


def test_dilated_simplex_family():
    for n in range(1, 7):
        p = generate("simplex", 2, n)
        assert codegree(p) == -((n + 1) // -2)  # ceil((n+1)/2)
        assert qcodegree(p) == Fraction(n + 1, 2)
        if n >= 2:
            assert nef_value(p) == Fraction(n + 1, 2)
        assert detect(vertices(p), 1) is None
        dec = detect(vertices(p), 2)
        assert dec is not None and dec.k == n
    _report("dilated simplex family")


def test_blowup_example():
    p = generate("blowup", 4, 1, 3)
    assert codegree(p) == 1
    assert qcodegree(p) == 1
    assert nef_value(p) == 2
    assert is_q_normal(p) is False
    assert is_spanned(p, 1, 1) is False
    v = {w.point: w for w in vertex_data(p)}[(1, 0, 0)]
    assert spanned_at_vertex(p, v, 1, 1) is False
    assert vertex_shift(v, 1, 1) == (0, 1, 1)

    variant = generate("blowup", 4, 2, 3)
    assert is_spanned(variant, 1, 1) is True
    by_point = {w.point: w for w in vertex_data(variant)}
    for corner in ((2, 0, 0), (0, 2, 0), (0, 0, 2)):
        assert vertex_shift(by_point[corner], 1, 1) == (1, 1, 1)
    _report("blow-up example")


def test_smoothness_witnesses():
    rough = facets(build([segment(6), segment(5), segment(3)], 2))
    ok, witness = is_smooth(rough)
    assert not ok and witness == (3, 0, 2)

    nice = facets(build([segment(4), segment(2), segment(2)], 2))
    ok, witness = is_smooth(nice)
    assert ok and witness is None
    _report("smoothness witnesses")


def test_cayley_classification_both_directions(strict_builds, corpus_reports):
    # Every smooth strict order-1 build with k > n/2 is q-normal with
    # codegree k + 1.
    checked_forward = 0
    for name, summands, h in strict_builds:
        assert is_smooth(h)[0], name
        k = len(summands) - 1
        n = h.dim
        if 2 * k > n:
            assert is_q_normal(h), name
            assert codegree(h) == k + 1, name
            checked_forward += 1
    assert checked_forward >= 100

    # Conversely classify() hard-fails unless a qualifying strict
    # decomposition exists whenever q-normality and big codegree hold.
    applied = 0
    for name, h, report in corpus_reports:
        if report.classification_applies:
            dec = report.cayley
            assert dec is not None and dec.strict, name
            assert dec.k + 1 == report.codegree, name
            assert 2 * dec.k > report.dim, name
            assert report.predicted_defect == 2 * report.codegree - 2 - report.dim, name
            applied += 1
    assert applied >= 100
    _report("high-codegree classification, both directions")


def test_split_family_sweep():
    rng = random.Random(97)
    cases = []
    for _ in range(35):
        k = rng.randint(2, 4)
        cases.append(([segment(rng.randint(1, 4)) for _ in range(k + 1)], 1))
    for _ in range(8):
        cases.append(
            ([rectangle(rng.randint(1, 2), rng.randint(1, 2)) for _ in range(4)], 1)
        )
    for _ in range(8):
        s = rng.randint(2, 3)
        count = rng.randint(s + 1, s + 3)
        cases.append(([lattice_point()] * count, s))
    qualifying = 0
    for summands, s in cases:
        report = check_localsplit(summands, s)
        k = len(summands) - 1
        assert report.smooth, (summands, s)
        assert report.applicable, (summands, s)
        assert report.expected == Fraction(k + 1, s)
        assert report.verdict, (summands, s)
        assert report.computed_tau == Fraction(k + 1, s)
        assert report.computed_qcodeg == Fraction(k + 1, s)
        qualifying += 1
    assert qualifying >= 50
    _report("split family sweep")


def test_inequality_suite(corpus_reports):
    for name, h, report in corpus_reports:
        n = report.dim
        c = report.codegree
        tau = report.nef_value
        qc = report.qcodegree
        assert tau > c - 1, name
        assert tau >= qc, name
        assert qc <= c <= n + 1, name
        if tau > n:
            # Only the unit simplex reaches past n.
            assert tau == n + 1, name
            assert (
                lattice_equivalent(vertices(h), vertices(generate("simplex", 1, n)))
                is not None
            ), name
    _report("inequality suite")


def _interior_scan_codegree(p):
    n = p.dim
    for k in range(1, n + 2):
        dilated = shrink(p, k, 0)
        for pt in lattice_points(dilated):
            if all(dot(normal, pt) > -offset for normal, offset in dilated.facets):
                return k
    return None


def _exhaustive_best_k(p, s):
    verts = p.vertices
    nv = len(verts)
    oriented = []
    for w, lo, width in width_candidates(p, s):
        if width != s:
            continue
        vals = [dot(w, v) - lo for v in verts]
        if any(h not in (0, s) for h in vals):
            continue
        oriented.append((w, frozenset(i for i, h in enumerate(vals) if h == s)))
        oriented.append(
            (tuple(-c for c in w), frozenset(i for i, h in enumerate(vals) if h == 0))
        )
    best = 0
    for r in range(1, len(oriented) + 1):
        for combo in itertools.combinations(oriented, r):
            classes = [cls for _, cls in combo]
            union = set().union(*classes)
            if sum(len(cls) for cls in classes) != len(union) or len(union) >= nv:
                continue
            _, d, _ = smith_normal_form([w for w, _ in combo])
            if all(d[i][i] == 1 for i in range(r)):
                best = max(best, r)
                break
    return best


def test_oracle_equivalences():
    polys = [
        generate("simplex", 1, 3),
        generate("simplex", 2, 3),
        generate("blowup", 4, 1, 3),
        generate("blowup", 5, 2, 3),
        generate("lawrence", 2, 3),
        generate("lawrence", 1, 2, 3),
    ]
    for p in polys:
        assert codegree(p) == _interior_scan_codegree(p)

    for p in (generate("simplex", 1, 2), generate("simplex", 2, 3),
              generate("blowup", 4, 1, 3), generate("lawrence", 2, 3)):
        t = Fraction(qcodegree(p))
        s = shrink(p, t.numerator, t.denominator)
        assert lpx.feasible(*_rows(s))
        for b in range(1, 13):
            for a in range(1, -((t.numerator * b) // -t.denominator)):
                if Fraction(a, b) >= t:
                    continue
                assert not lpx.feasible(*_rows(shrink(p, a, b)))

    for p in (generate("simplex", 1, 2), generate("simplex", 2, 2),
              generate("blowup", 4, 1, 3), generate("blowup", 4, 2, 3),
              generate("lawrence", 2, 3),
              facets(build([segment(4), segment(2), segment(2)], 2))):
        tau = Fraction(nef_value(p))
        assert is_spanned(p, tau.numerator, tau.denominator) is True
        dens = []
        for v in vertex_data(p):
            for j, (normal, offset) in enumerate(p.facets):
                if j not in v.incident:
                    dens.append(dot(normal, v.point) + offset)
        big = 2 * max(dens)
        assert is_spanned(p, tau.numerator * big - 1, tau.denominator * big) is False

    detect_cases = [
        (vertices(generate("simplex", 1, 2)), 1),
        (vertices(generate("simplex", 1, 3)), 1),
        (vertices(generate("simplex", 2, 2)), 1),
        (vertices(generate("simplex", 2, 2)), 2),
        (unit_square(), 1),
        (vertices(generate("lawrence", 2, 3)), 1),
        (build([segment(2), segment(2)], 2), 2),
    ]
    for q, s in detect_cases:
        assert len(width_candidates(q, s)) <= 8
        dec = detect(q, s)
        assert (dec.k if dec is not None else 0) == _exhaustive_best_k(q, s)
    _report("oracle equivalences")


def _rows(p):
    return [list(normal) for normal, _ in p.facets], [-offset for _, offset in p.facets]


def test_unimodular_invariance_fuzz():
    rng = random.Random(137)
    bases = [
        generate("simplex", 1, 2),
        generate("simplex", 1, 3),
        generate("simplex", 2, 2),
        generate("simplex", 2, 3),
        generate("blowup", 4, 1, 3),
        generate("blowup", 4, 2, 3),
        generate("lawrence", 2, 3),
        generate("lawrence", 2, 3, 4),
        generate("cube", 2),
        facets(build([segment(6), segment(5), segment(3)], 2)),
    ]
    cases = 0
    for h in bases:
        n = h.dim
        smooth0 = is_smooth(h)[0]
        c0 = codegree(h)
        d0 = degree(h)
        qc0 = qcodegree(h)
        tau0 = nef_value(h) if smooth0 else None
        dec0 = detect(vertices(h), 1)
        k0 = dec0.k if dec0 is not None else 0
        for _ in range(11):
            u = random_unimodular(rng, n)
            t = tuple(rng.randint(-4, 4) for _ in range(n))
            moved = transformed(h, u, t)
            assert is_smooth(moved)[0] == smooth0
            assert codegree(moved) == c0
            assert degree(moved) == d0
            assert qcodegree(moved) == qc0
            if smooth0:
                assert nef_value(moved) == tau0
            dec = detect(vertices(moved), 1)
            assert (dec.k if dec is not None else 0) == k0
            cases += 1
    assert cases >= 100
    _report("unimodular invariance fuzz")


def test_smooth_builds_have_smooth_summands(strict_builds):
    for name, summands, h in strict_builds:
        assert is_smooth(h)[0], name
        for q in summands:
            assert is_smooth(facets(q))[0] is True, name

    smooth_order2 = [segment(4), segment(2), segment(2)]
    h2 = facets(build(smooth_order2, 2))
    assert is_smooth(h2)[0] is True
    for q in smooth_order2:
        assert is_smooth(facets(q))[0] is True

    rough = [segment(6), segment(5), segment(3)]
    h3 = facets(build(rough, 2))
    assert is_smooth(h3)[0] is False
    for q in rough:
        assert is_smooth(facets(q))[0] is True
    _report("summand smoothness")
