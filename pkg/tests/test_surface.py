"""Lines and triangles on a cubic surface, against brute-force lattice search."""

import itertools
import random

import pytest

from fano_calculus import surface
from fano_calculus.surface import (
    HYPERPLANE, LineLabel, PairCertificate, SurfaceClass, Triangle, all_labels, disjoint_pairs,
    enumerate_lines, enumerate_triangles, find_triangle_partition, line_class, meets,
    pair_target, permute_label, reference_certificate, secant_lines, verify_pair_decomposition,
)


def brute_force_lines():
    # (-1)-classes of degree 1 in a small box of the lattice
    found = set()
    for l in range(0, 3):
        for e in itertools.product((-1, 0, 1), repeat=6):
            v = SurfaceClass.of(l, e)
            if v.dot(v) == -1 and v.dot(HYPERPLANE) == 1:
                found.add(v)
    return found


def test_line_classes_match_brute_force():
    classes = {c for _, c in enumerate_lines()}
    assert len(enumerate_lines()) == 27
    assert classes == brute_force_lines()


def test_each_line_meets_ten_others():
    labs = all_labels()
    for x in labs:
        assert sum(meets(x, y) for y in labs if y != x) == 10


def test_exceptional_class_sign():
    e1 = line_class(LineLabel("E", 1))
    assert e1.dot(e1) == -1
    assert e1.dot(HYPERPLANE) == 1
    assert e1.coeffs == (0, -1, 0, 0, 0, 0, 0)


def test_triangles_match_brute_force():
    labs = all_labels()
    brute = set()
    for a, b, c in itertools.combinations(labs, 3):
        if meets(a, b) and meets(a, c) and meets(b, c):
            if line_class(a) + line_class(b) + line_class(c) == HYPERPLANE:
                brute.add(Triangle((a, b, c)))
    tris = enumerate_triangles()
    assert len(brute) == 45
    assert set(tris) == brute
    for l in labs:
        assert sum(l in t for t in tris) == 5


def test_permutations_preserve_incidence():
    rng = random.Random(3)
    labs = all_labels()
    for _ in range(10):
        perm = list(range(1, 7))
        rng.shuffle(perm)
        image = [permute_label(l, perm) for l in labs]
        assert sorted(image) == sorted(labs)
        for x, y in itertools.combinations(labs, 2):
            assert meets(x, y) == meets(permute_label(x, perm), permute_label(y, perm))
        assert {t.permuted(perm) for t in enumerate_triangles()} == set(enumerate_triangles())


def test_disjoint_pairs_have_five_secants():
    pairs = disjoint_pairs()
    assert len(pairs) == 216
    for x, y in pairs:
        sec = secant_lines(x, y)
        assert len(sec) == 5
        total = surface.class_sum([line_class(x)] * 2 + [line_class(y)] * 2 + [line_class(z) for z in sec])
        assert total == 3 * HYPERPLANE


def test_reference_decomposition_symbol_by_symbol():
    cert = reference_certificate()
    assert len(cert.coefficients) == 7
    assert all(t.is_valid() for t in cert.coefficients)
    e1, e2 = LineLabel("E", 1), LineLabel("E", 2)
    want = {e1: 2, e2: 2}
    for z in secant_lines(e1, e2):
        want[z] = 1
    assert {str(z) for z in secant_lines(e1, e2)} == {"L12", "C3", "C4", "C5", "C6"}
    assert cert.symbol_sum() == want
    assert cert.is_valid()


def test_tampered_certificate_fails():
    cert = reference_certificate()
    tri = next(iter(cert.coefficients))
    bad = dict(cert.coefficients)
    bad[tri] += 1
    assert not PairCertificate(cert.pair, bad, "tampered", cert.target).is_valid()


def test_every_disjoint_pair_decomposes():
    sources = {}
    for x, y in disjoint_pairs():
        cert = verify_pair_decomposition(x, y)
        assert cert.is_valid()
        assert cert.max_abs() <= 2
        assert cert.symbol_sum() == pair_target(x, y)
        sources[cert.source] = sources.get(cert.source, 0) + 1
    assert sum(sources.values()) == 216


def test_search_alone_finds_certificates():
    rng = random.Random(1)
    for x, y in rng.sample(disjoint_pairs(), 25):
        cert = verify_pair_decomposition(x, y, use_reference=False)
        assert cert.is_valid()


def test_non_disjoint_pair_is_rejected():
    with pytest.raises(ValueError):
        verify_pair_decomposition(LineLabel("E", 1), LineLabel("L", 1, 2))


def test_partition_is_exact_cover():
    part = find_triangle_partition()
    assert len(part) == 9
    covered = [l for t in part for l in t.lines]
    assert sorted(covered) == sorted(all_labels())
    assert all(t.is_valid() for t in part)


def test_label_parsing():
    assert LineLabel.parse("R3") == LineLabel("E", 3)
    assert LineLabel.parse("L21") == LineLabel("L", 1, 2)
    assert str(LineLabel.parse("c4")) == "C4"
    with pytest.raises(ValueError):
        LineLabel.parse("L7")
