"""Acceptance gate: one test (one pass/fail line under pytest -v) per criterion.

Pinned tolerances:
  * scalarness of Phi (float):        1e-10 (Frobenius norm)
  * realness of lambda (float):       1e-12
  * closed-form cross-check:          1e-10
  * separation margin for 0 < l < 1:  1e-3
  * fixed-point vs exact agreement:   1e-9 (per coefficient)
  * everything on the exact backend:  identically zero
Runtime budgets: criterion 1 < 5 s, criterion 4 < 30 s.
"""

import functools
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from quathom import cli, germ, homog, quatlin
from quathom.series import Ideal, SeriesRing, SubstitutionMap

SEED = 20260823


# -- shared fixtures ---------------------------------------------------------


@functools.lru_cache(maxsize=None)
def random_structure_pairs():
    """100 random float structure pairs with angular separation in
    (0.1, pi - 0.1), split between H^1 and H^2; plus the separation angle."""
    rng = np.random.default_rng(SEED)
    pairs = []
    while len(pairs) < 100:
        u, v = rng.normal(size=(2, 3))
        u /= np.linalg.norm(u)
        v /= np.linalg.norm(v)
        angle = math.acos(max(-1.0, min(1.0, float(np.dot(u, v)))))
        if not 0.1 < angle < math.pi - 0.1:
            continue
        n = 1 + len(pairs) % 2
        pairs.append((n, tuple(u), tuple(v)))
    return tuple(pairs)


def random_homogenizing_map(ring, rng):
    images = []
    for k in range(ring.nvars):
        data = {}
        for _ in range(2):
            exp = [0] * ring.nvars
            for _ in range(rng.randrange(2, 4)):
                exp[rng.randrange(ring.nvars)] += 1
            data[tuple(exp)] = Fraction(rng.randrange(-2, 3))
        images.append(ring.var(k) / 2 + ring.series(data))
    return SubstitutionMap(ring, images)


def random_m2_element(ring, rng):
    data = {}
    for _ in range(4):
        exp = [0] * ring.nvars
        for _ in range(rng.randrange(2, ring.trunc + 1)):
            exp[rng.randrange(ring.nvars)] += 1
        data[tuple(exp)] = Fraction(rng.randrange(-4, 5))
    return ring.series(data)


def binomial_half(k):
    value = Fraction(1)
    for i in range(k):
        value *= Fraction(1, 2) - i
    return value / math.factorial(k)


@functools.lru_cache(maxsize=None)
def node_certificate(trunc):
    """Conjugate the diagonal lambda = 1/2 map on C[[u, v]]/(uv) through
    u = y - x*s(x), v = y + x*s(x) with s = truncated sqrt(1 + x), and run
    the pipeline on C[[x, y]]/(y^2 - x^2 - x^3)."""
    ring = SeriesRing(("x", "y"), trunc)
    x, y = ring.var(0), ring.var(1)
    s = ring.series({(k, 0): binomial_half(k) for k in range(trunc + 1)})
    change = SubstitutionMap(ring, [y - x * s, y + x * s])
    diag = SubstitutionMap.diagonal(ring, Fraction(1, 2))
    e = change.compose(diag).compose(change.inverse())
    relations = Ideal(ring, [y * y - x * x - x ** 3])
    presentation = homog.LocalRingPresentation(ring, relations)
    cert = homog.homogeneous_presentation(e, presentation)
    return cert, presentation


@functools.lru_cache(maxsize=None)
def psi_fixture(trunc):
    """Two-coordinate-line model on H^2 with I = (1,0,0), J = (0,1,0)."""
    struct_i = quatlin.make_structure(1, 0, 0)
    struct_j = quatlin.make_structure(0, 1, 0)
    chart = germ.make_chart(2, struct_i, trunc)
    line1 = tuple(
        tuple(1 if c == k else 0 for c in range(8)) for k in range(4)
    )
    line2 = tuple(
        tuple(1 if c == k + 4 else 0 for c in range(8)) for k in range(4)
    )
    model = germ.make_plane_union([line1, line2], chart)
    chart_j = germ.make_chart(2, struct_j, trunc)
    psi = germ.psi_endomorphism(chart, chart_j)
    cert = germ.homogenize_model(model, struct_j)
    return chart, model, psi, cert


EXACT_FIXTURE_JOBS = (
    "kind: lambda\nn: 1\nI: 1,0,0\nJ: 0,1,0\n",
    "kind: solve-eigen\nvars: x\nN: 4\nmap: x -> x/2 + x^2\nlambda: 1/2\nr: x^2\n",
    "kind: homogenize\nvars: x,y\nN: 4\nrelations: x*y\nmap: x -> x/2; y -> y/2\n",
    "kind: psi\nn: 2\nN: 2\nI: 1,0,0\nJ: 0,1,0\n",
    "kind: planes\nn: 2\nN: 2\nI: 1,0,0\n"
    "plane: 1,0,0,0,0,0,0,0; 0,1,0,0,0,0,0,0; 0,0,1,0,0,0,0,0; 0,0,0,1,0,0,0,0\n"
    "plane: 0,0,0,0,1,0,0,0; 0,0,0,0,0,1,0,0; 0,0,0,0,0,0,1,0; 0,0,0,0,0,0,0,1\n",
)


# -- criteria ----------------------------------------------------------------


def test_criterion_01_schur_scalar_property():
    start = time.time()
    for n, u, v in random_structure_pairs():
        module = quatlin.QuaternionModule(n, "float")
        si = quatlin.make_structure(*u, backend="float")
        sj = quatlin.make_structure(*v, backend="float")
        phi = quatlin.phi_endomorphism(module, si, sj)
        lam = phi[0, 0]
        assert abs(lam.imag) < 1e-12, "lambda not real: %r" % lam
        assert np.linalg.norm(phi - lam * np.eye(2 * n)) < 1e-10
        assert -1e-12 <= lam.real <= 1 + 1e-12
    elapsed = time.time() - start
    assert elapsed < 5.0, "criterion 1 runtime %.2fs exceeds 5s" % elapsed


def test_criterion_02_contraction_bounds():
    module = quatlin.QuaternionModule(1, "exact")
    for axis in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        s = quatlin.make_structure(*axis)
        assert quatlin.scalar_of_phi(module, s, s) == 1
        assert quatlin.scalar_of_phi(module, s, -s) == 0
    for n, u, v in random_structure_pairs():
        fmodule = quatlin.QuaternionModule(n, "float")
        si = quatlin.make_structure(*u, backend="float")
        sj = quatlin.make_structure(*v, backend="float")
        lam = quatlin.scalar_of_phi(fmodule, si, sj)
        assert 1e-3 < lam < 1 - 1e-3, "margin violated: lambda = %r" % lam


def test_criterion_03_closed_form_cross_check():
    findings = []
    for n, u, v in random_structure_pairs():
        module = quatlin.QuaternionModule(n, "float")
        si = quatlin.make_structure(*u, backend="float")
        sj = quatlin.make_structure(*v, backend="float")
        lam = quatlin.scalar_of_phi(module, si, sj)
        closed = (1.0 + float(np.dot(u, v))) / 2.0
        if abs(lam - closed) >= 1e-10:
            findings.append((u, v, lam, closed))
    assert not findings, "closed-form deviations found: %r" % findings


def test_criterion_04_shifted_eigen_solver():
    start = time.time()
    rng = random.Random(SEED)
    for trial in range(50):
        nvars = 2 + trial % 2
        ring = SeriesRing(tuple("xyz"[:nvars]), 8)
        e = random_homogenizing_map(ring, rng)
        r = random_m2_element(ring, rng)
        c = homog.solve_shifted_eigen(e, Fraction(1, 2), r)
        assert (e(c) - c / 2 - r).is_zero(), "exact residual nonzero"
        approx = homog.solve_shifted_eigen_fixed_point(
            e, Fraction(1, 2), r, iterations=120
        )
        for exp in set(c.coeffs) | set(approx.coeffs):
            delta = abs(
                complex(c.coeffs.get(exp, 0)) - complex(approx.coeffs.get(exp, 0))
            )
            assert delta < 1e-9, "path disagreement %r at %r" % (delta, exp)
    elapsed = time.time() - start
    assert elapsed < 30.0, "criterion 4 runtime %.2fs exceeds 30s" % elapsed


def test_criterion_05_eigen_coordinates():
    ring = SeriesRing(("x",), 3)
    x = ring.var(0)
    e = SubstitutionMap(ring, [x / 2 + x * x])
    presentation = homog.LocalRingPresentation(ring)
    (f,) = homog.eigen_coordinates(e, presentation)
    assert f == ring.from_string("x + 4*x^2 + 32/3*x^3")
    rng = random.Random(SEED + 1)
    for trial in range(10):
        nvars = 2 + trial % 2
        rring = SeriesRing(tuple("xyz"[:nvars]), 5)
        re = random_homogenizing_map(rring, rng)
        pres = homog.LocalRingPresentation(rring)
        for coord in homog.eigen_coordinates(re, pres):
            assert (re(coord) - coord / 2).is_zero()


def test_criterion_06_homogeneous_presentation_node():
    cert, presentation = node_certificate(6)
    assert cert.lam == Fraction(1, 2)
    for g in cert.homogeneous_ideal.generators:
        assert len({sum(exp) for exp in g.coeffs}) == 1, "non-homogeneous %s" % g
    new = cert.presentation_ring
    quadric = Ideal(new, [new.var(0) ** 2 - new.var(1) ** 2])
    assert cert.homogeneous_ideal.equals(quadric)
    assert bool(homog.lhs_certificate_check(cert, presentation))


def test_criterion_07_flat_model_psi_pipeline():
    chart, model, psi, cert = psi_fixture(2)
    half = chart.holo_ring.one_scalar() / 2
    lmat = psi.linear_matrix()
    for r in range(4):
        for c in range(4):
            expected = half if r == c else chart.holo_ring.zero_scalar()
            assert lmat[r][c] == expected, "Psi linear part not (1/2) id"
    assert germ.verify_psi_invariance(model.union_ideal, psi)
    ring = chart.holo_ring
    z1, z2, z3, z4 = (ring.var(k) for k in range(4))
    expected_union = Ideal(ring, [z1 * z3, z1 * z4, z2 * z3, z2 * z4])
    assert model.union_ideal.equals(expected_union)
    # The recorded linear change is y_k -> z_k; transport and compare.
    renamed = Ideal(
        ring, [ring.series(dict(g.coeffs)) for g in cert.homogeneous_ideal.generators]
    )
    assert renamed.equals(expected_union)


def test_criterion_08_normalization_report():
    line1 = tuple(tuple(1 if c == k else 0 for c in range(8)) for k in range(4))
    line2 = tuple(tuple(1 if c == k + 4 else 0 for c in range(8)) for k in range(4))
    diagonal = tuple(
        tuple(1 if c in (k, k + 4) else 0 for c in range(8)) for k in range(4)
    )
    chart = germ.make_chart(2, quatlin.make_structure(1, 0, 0), 2)
    for planes in ([line1, line2], [line1, line2, diagonal]):
        model = germ.make_plane_union(planes, chart)
        report = germ.normalization_report(model)
        assert report["component_count"] == len(planes)
        assert report["normalization_smooth"]
        for comp in report["components"]:
            assert comp["smooth"]
            assert comp["complex_dimension"] == 2
            assert comp["real_dimension_divisible_by_4"]
        for meet in report["pairwise_intersections"]:
            assert meet["real_dimension"] == 0


def test_criterion_09_determinism(tmp_path):
    paths = []
    for idx, text in enumerate(EXACT_FIXTURE_JOBS):
        p = tmp_path / ("fixture%d.job" % idx)
        p.write_text(text)
        paths.append(str(p))
    outputs = []
    for hash_seed in ("0", "1"):
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        proc = subprocess.run(
            [sys.executable, "-m", "quathom.cli"] + paths,
            capture_output=True,
            env=env,
            check=True,
        )
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1], "reports differ between runs"


def test_criterion_10_truncation_robustness():
    # Fixture 5 at N = 3 and N = 5.
    for trunc in (3, 5):
        ring = SeriesRing(("x",), trunc)
        x = ring.var(0)
        e = SubstitutionMap(ring, [x / 2 + x * x])
        (f,) = homog.eigen_coordinates(e, homog.LocalRingPresentation(ring))
        low = {exp: c for exp, c in f.coeffs.items() if sum(exp) <= 3}
        assert low == {
            (1,): ring.coerce(1),
            (2,): ring.coerce(4),
            (3,): ring.coerce(Fraction(32, 3)),
        }
    # Fixture 6 at N = 6 and N = 8: same homogeneous quadric either way.
    for trunc in (6, 8):
        cert, presentation = node_certificate(trunc)
        new = cert.presentation_ring
        quadric = Ideal(new, [new.var(0) ** 2 - new.var(1) ** 2])
        assert cert.lam == Fraction(1, 2)
        assert cert.homogeneous_ideal.equals(quadric)
        assert bool(homog.lhs_certificate_check(cert, presentation))
    # Fixture 7 at N = 2 and N = 4: same linear part and union ideal.
    for trunc in (2, 4):
        chart, model, psi, cert = psi_fixture(trunc)
        ring = chart.holo_ring
        z1, z2, z3, z4 = (ring.var(k) for k in range(4))
        expected = Ideal(ring, [z1 * z3, z1 * z4, z2 * z3, z2 * z4])
        assert model.union_ideal.equals(expected)
        for k in range(4):
            assert psi.images[k] == ring.var(k) / 2
        renamed = Ideal(
            ring,
            [ring.series(dict(g.coeffs)) for g in cert.homogeneous_ideal.generators],
        )
        assert renamed.equals(expected)
