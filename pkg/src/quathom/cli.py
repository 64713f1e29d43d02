"""Command-line front end: job files in, deterministic JSON reports out.

Job files are line-oriented ``key: value`` text.  Supported kinds:

  lambda       I:, J:, n:            -> Schur scalar and scalarness residual
  solve-eigen  vars:, N:, map:, lambda:, r:  -> solution c and residual
  homogenize   vars:, N:, relations:, map:   -> certificate summary
  psi          n:, I:, J:, N:        -> substitution map and its scalar
  planes       n:, I:, N:, plane:(s) -> normalization report

``backend:`` selects exact (default) or float coefficients.  Reports are
JSON with lexicographically sorted keys so that exact-backend runs are
byte-identical; ``--format text`` renders a short human summary instead.
"""

import argparse
import concurrent.futures
import json
import sys
from fractions import Fraction

from . import __version__, germ, homog, quatlin
from .errors import LambdaOutOfRange, ParseError, QuathomError, ValidationError
from .gaussian import GaussianRational
from .parsing import parse_polynomial, parse_rational
from .series import Ideal, SeriesRing, SubstitutionMap

KINDS = ("lambda", "solve-eigen", "homogenize", "psi", "planes")

_REQUIRED = {
    "lambda": ("n", "I", "J"),
    "solve-eigen": ("N", "vars", "map", "lambda", "r"),
    "homogenize": ("N", "vars", "relations", "map"),
    "psi": ("n", "N", "I", "J"),
    "planes": ("n", "N", "I", "plane"),
}


class JobFile:
    """A parsed and validated job."""

    __slots__ = ("kind", "backend", "fields")

    def __init__(self, kind, backend, fields):
        self.kind = kind
        self.backend = backend
        self.fields = fields

    def _normalized(self):
        # Text fields carry source line numbers; drop them for comparison.
        return {
            k: (v[0] if k in ("map", "relations", "r") else v)
            for k, v in self.fields.items()
        }

    def __eq__(self, other):
        return (
            isinstance(other, JobFile)
            and self.kind == other.kind
            and self.backend == other.backend
            and self._normalized() == other._normalized()
        )


def parse_job(text):
    """Parse job text into a JobFile; raises ParseError/ValidationError."""
    fields = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", lineno, 1)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "plane":
            fields.setdefault("plane", []).append((value, lineno))
        elif key in fields:
            raise ValidationError("duplicate key %r" % key, field=key)
        else:
            fields[key] = (value, lineno)

    if "kind" not in fields:
        raise ValidationError("missing job kind", field="kind")
    kind = fields["kind"][0]
    if kind not in KINDS:
        raise ValidationError("unknown kind %r" % kind, field="kind")
    backend = fields.get("backend", ("exact", 0))[0]
    if backend not in ("exact", "float"):
        raise ValidationError("unknown backend %r" % backend, field="backend")
    for required in _REQUIRED[kind]:
        if required not in fields:
            raise ValidationError("missing required field", field=required)

    out = {}
    if "n" in fields:
        out["n"] = _parse_int(fields["n"], "n", minimum=1)
    if "N" in fields:
        out["N"] = _parse_int(fields["N"], "N", minimum=2)
    for name in ("I", "J"):
        if name in fields:
            out[name] = _parse_structure(fields[name], name, backend)
    if "vars" in fields:
        value, lineno = fields["vars"]
        names = tuple(v.strip() for v in value.split(","))
        if any(not v.isidentifier() for v in names):
            raise ValidationError("invalid variable list", field="vars")
        out["vars"] = names
    if "lambda" in fields:
        out["lambda"] = parse_rational(fields["lambda"][0], fields["lambda"][1])
    for name in ("relations", "r", "map"):
        if name in fields:
            out[name] = fields[name]
    if "plane" in fields:
        planes = []
        for value, lineno in fields["plane"]:
            vectors = []
            for chunk in value.split(";"):
                vector = tuple(
                    parse_rational(c, lineno) for c in chunk.split(",")
                )
                vectors.append(vector)
            planes.append(tuple(vectors))
        out["plane"] = tuple(planes)
    return JobFile(kind, backend, out)


def _parse_int(entry, field, minimum):
    value, lineno = entry
    try:
        number = int(value)
    except ValueError:
        raise ValidationError("expected an integer", field=field)
    if number < minimum:
        raise ValidationError("must be >= %d" % minimum, field=field)
    return number


def _parse_structure(entry, field, backend):
    value, lineno = entry
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 3:
        raise ValidationError("expected three components", field=field)
    coords = [parse_rational(p, lineno) for p in parts]
    try:
        return quatlin.make_structure(*coords, backend=backend)
    except QuathomError as exc:
        raise ValidationError(str(exc), field=field)


def _parse_map(entry, ring):
    value, lineno = entry
    images = {}
    for rule in value.split(";"):
        if "->" not in rule:
            raise ParseError("map rule must be 'var -> expression'", lineno, 1)
        lhs, _, rhs = rule.partition("->")
        name = lhs.strip()
        if name not in ring.varnames:
            raise ValidationError("map target %r is not a variable" % name, field="map")
        if name in images:
            raise ValidationError("duplicate map rule for %r" % name, field="map")
        images[name] = parse_polynomial(rhs, ring, lineno)
    missing = [v for v in ring.varnames if v not in images]
    if missing:
        raise ValidationError("map misses variables %s" % ", ".join(missing), field="map")
    return SubstitutionMap(ring, [images[v] for v in ring.varnames])


def _parse_poly_list(entry, ring):
    value, lineno = entry
    return [
        parse_polynomial(chunk, ring, lineno)
        for chunk in value.split(";")
        if chunk.strip()
    ]


_SERIALIZE_ORDER = (
    "kind",
    "backend",
    "n",
    "N",
    "vars",
    "I",
    "J",
    "lambda",
    "relations",
    "map",
    "r",
    "plane",
)


def serialize_job(job):
    """Canonical job text; parse(serialize(parse(t))) == parse(t) fields."""
    lines = []
    for key in _SERIALIZE_ORDER:
        if key == "kind":
            lines.append("kind: %s" % job.kind)
        elif key == "backend":
            lines.append("backend: %s" % job.backend)
        elif key not in job.fields:
            continue
        elif key in ("n", "N"):
            lines.append("%s: %d" % (key, job.fields[key]))
        elif key in ("I", "J"):
            s = job.fields[key]
            lines.append("%s: %s,%s,%s" % (key, s.a, s.b, s.c))
        elif key == "vars":
            lines.append("vars: %s" % ",".join(job.fields[key]))
        elif key == "lambda":
            lines.append("lambda: %s" % job.fields[key])
        elif key == "plane":
            for plane in job.fields[key]:
                lines.append(
                    "plane: "
                    + "; ".join(
                        ",".join(str(c) for c in vector) for vector in plane
                    )
                )
        else:
            lines.append("%s: %s" % (key, job.fields[key][0]))
    return "\n".join(lines) + "\n"


# -- scalar and series rendering --------------------------------------------


def render_scalar(value):
    if isinstance(value, GaussianRational):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return repr(value)
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return None
    return str(value)


def render_series(f):
    return str(f)


# -- job execution -----------------------------------------------------------


def job_echo(job):
    echo = {"kind": job.kind, "backend": job.backend}
    for key, value in job.fields.items():
        if key in ("n", "N"):
            echo[key] = value
        elif key in ("I", "J"):
            echo[key] = [render_scalar(Fraction(value.a)) if job.backend == "exact" else value.a,
                         render_scalar(Fraction(value.b)) if job.backend == "exact" else value.b,
                         render_scalar(Fraction(value.c)) if job.backend == "exact" else value.c]
        elif key == "vars":
            echo[key] = list(value)
        elif key == "lambda":
            echo[key] = str(value)
        elif key == "plane":
            echo[key] = [
                ["," .join(str(c) for c in vector) for vector in plane]
                for plane in value
            ]
        else:
            echo[key] = value[0]
    return echo


def run_job(job):
    """Execute a job; returns the report dict (never raises QuathomError)."""
    report = {
        "job": job_echo(job),
        "results": {},
        "diagnostics": [],
        "versions": {"quathom": __version__},
    }
    try:
        report["results"] = _dispatch(job)
    except QuathomError as exc:
        report["diagnostics"].append(
            {"error": type(exc).__name__, "message": str(exc)}
        )
    return report


def _dispatch(job):
    fields = job.fields
    if job.kind == "lambda":
        module = quatlin.QuaternionModule(fields["n"], job.backend)
        lam = quatlin.scalar_of_phi(module, fields["I"], fields["J"])
        phi = quatlin.phi_endomorphism(module, fields["I"], fields["J"])
        if job.backend == "exact":
            residual = "0"
        else:
            import numpy as np

            residual = repr(
                float(np.linalg.norm(phi - lam * np.eye(phi.shape[0])))
            )
        return {"lambda": render_scalar(lam), "residual": residual}

    if job.kind == "solve-eigen":
        ring = SeriesRing(fields["vars"], fields["N"], job.backend)
        emap = _parse_map(fields["map"], ring)
        if not 0 < abs(fields["lambda"]) < 1:
            raise LambdaOutOfRange(
                "solve-eigen requires 0 < |lambda| < 1, got %s" % fields["lambda"]
            )
        lam = ring.coerce(fields["lambda"])
        r = parse_polynomial(fields["r"][0], ring, fields["r"][1])
        c = homog.solve_shifted_eigen(emap, lam, r)
        residual = emap(c) - c * lam - r
        return {
            "c": render_series(c),
            "residual": render_series(residual),
        }

    if job.kind == "homogenize":
        ring = SeriesRing(fields["vars"], fields["N"], job.backend)
        emap = _parse_map(fields["map"], ring)
        relations = Ideal(ring, _parse_poly_list(fields["relations"], ring))
        presentation = homog.LocalRingPresentation(ring, relations)
        cert = homog.homogeneous_presentation(emap, presentation)
        verdict = homog.lhs_certificate_check(cert, presentation)
        return {
            "lambda": render_scalar(cert.lam),
            "eigen_coordinates": [render_series(f) for f in cert.eigen_coords],
            "presentation_variables": list(cert.presentation_ring.varnames),
            "cotangent_variables": list(cert.cotangent_variables),
            "homogeneous_ideal": [
                render_series(g) for g in cert.homogeneous_ideal.generators
            ],
            "certificate_valid": bool(verdict),
            "certificate_reasons": list(verdict.reasons),
        }

    if job.kind == "psi":
        chart_i = germ.make_chart(fields["n"], fields["I"], fields["N"])
        chart_j = germ.make_chart(fields["n"], fields["J"], fields["N"])
        psi = germ.psi_endomorphism(chart_i, chart_j)
        presentation = homog.LocalRingPresentation(chart_i.holo_ring)
        try:
            lam = homog.check_homogenizing(psi, presentation)
            lam_repr = render_scalar(lam)
            homogenizing = True
        except QuathomError as exc:
            lam_repr = None
            homogenizing = False
        return {
            "images": [render_series(img) for img in psi.images],
            "lambda": lam_repr,
            "homogenizing": homogenizing,
        }

    if job.kind == "planes":
        chart = germ.make_chart(fields["n"], fields["I"], fields["N"])
        model = germ.make_plane_union(fields["plane"], chart)
        report = germ.normalization_report(model)
        report["union_ideal"] = [
            render_series(g) for g in model.union_ideal.generators
        ]
        return report

    raise ValidationError("unknown kind %r" % job.kind, field="kind")


# -- rendering ---------------------------------------------------------------


def report_to_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def report_to_text(report):
    job = report["job"]
    lines = [
        "job: %s (backend %s)"
        % (job.get("kind", job.get("file", "?")), job.get("backend", "-"))
    ]
    for key in sorted(report["results"]):
        lines.append("  %s: %s" % (key, report["results"][key]))
    for diag in report["diagnostics"]:
        lines.append("  ERROR %(error)s: %(message)s" % diag)
    return "\n".join(lines) + "\n"


# -- selftest ----------------------------------------------------------------


def selftest(seed=0):
    """Randomized invariant checks; returns a report dict."""
    import random

    import numpy as np

    rng = random.Random(seed)
    nrng = np.random.default_rng(seed)
    checks = {}

    # Schur scalar on random float structure pairs.
    module = quatlin.QuaternionModule(1, "float")
    ok = True
    for _ in range(10):
        vecs = nrng.normal(size=(2, 3))
        vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
        si = quatlin.make_structure(*vecs[0], backend="float")
        sj = quatlin.make_structure(*vecs[1], backend="float")
        lam = quatlin.scalar_of_phi(module, si, sj)
        closed = (1.0 + float(np.dot(vecs[0], vecs[1]))) / 2.0
        ok = ok and abs(lam - closed) < 1e-10
        ok = ok and quatlin.su2_commutation_check(module, si, sj)
    checks["schur_scalar"] = ok

    # Substitution is a ring homomorphism.
    ring = SeriesRing(("x", "y"), 5)
    def random_series(min_degree):
        data = {}
        for _ in range(4):
            a = rng.randrange(0, 4)
            b = rng.randrange(0, 4)
            if min_degree <= a + b <= ring.trunc:
                data[(a, b)] = Fraction(rng.randrange(-3, 4))
        return ring.series(data)

    ok = True
    for _ in range(10):
        images = [
            ring.var(0) * Fraction(1, 2) + random_series(2),
            ring.var(1) * Fraction(1, 2) + random_series(2),
        ]
        m = SubstitutionMap(ring, images)
        f, g = random_series(0), random_series(0)
        ok = ok and m(f * g) == m(f) * m(g)
        ok = ok and m(f + g) == m(f) + m(g)
    checks["substitution_homomorphism"] = ok

    # Map inversion composes to the identity.
    ok = True
    for _ in range(5):
        m = SubstitutionMap(
            ring,
            [
                ring.var(0) + random_series(2),
                ring.var(1) + random_series(2),
            ],
        )
        inv = m.inverse()
        ok = ok and all(
            m(inv.images[k]) == ring.var(k) for k in range(ring.nvars)
        )
    checks["map_inversion"] = ok

    # Groebner bases generate the same ideal as their input.
    x, y = ring.var(0), ring.var(1)
    ideal = Ideal(ring, [y - x * x, x * y])
    basis = Ideal(ring, list(ideal.groebner()))
    checks["groebner_mutual_membership"] = ideal.equals(basis)

    return {
        "job": {"kind": "selftest", "seed": seed},
        "results": checks,
        "diagnostics": []
        if all(checks.values())
        else [{"error": "SelftestFailure", "message": "see results"}],
        "versions": {"quathom": __version__},
    }


# -- entry point -------------------------------------------------------------


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="quathom",
        description="Run quathom job files or the invariant selftest.",
    )
    parser.add_argument("jobs", nargs="+", help="job files, or 'selftest'")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--output", default=None, help="write the report here")
    parser.add_argument("--seed", type=int, default=0, help="selftest seed")
    args = parser.parse_args(argv)

    if args.jobs == ["selftest"]:
        reports = [selftest(args.seed)]
    else:
        reports = []
        parsed = []
        for path in args.jobs:
            try:
                with open(path, "r", encoding="utf-8") as handle:
                    parsed.append(parse_job(handle.read()))
            except OSError as exc:
                parsed.append(exc)
            except QuathomError as exc:
                parsed.append(exc)
        with concurrent.futures.ThreadPoolExecutor() as pool:
            futures = []
            for item in parsed:
                if isinstance(item, JobFile):
                    futures.append(pool.submit(run_job, item))
                else:
                    futures.append(None)
            for path, item, future in zip(args.jobs, parsed, futures):
                if future is None:
                    reports.append(
                        {
                            "job": {"file": path},
                            "results": {},
                            "diagnostics": [
                                {
                                    "error": type(item).__name__,
                                    "message": str(item),
                                }
                            ],
                            "versions": {"quathom": __version__},
                        }
                    )
                else:
                    reports.append(future.result())

    if args.format == "json":
        rendered = "".join(report_to_json(r) for r in reports)
    else:
        rendered = "".join(report_to_text(r) for r in reports)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)

    return 1 if any(r["diagnostics"] for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
