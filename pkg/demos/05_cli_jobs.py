"""The quathom command line: job files in, deterministic JSON out.

Jobs are line-oriented key/value files; this demo writes one of each kind to
a temporary directory and runs them through the same entry point as the
``quathom`` console script.
"""

import tempfile
from pathlib import Path

from quathom import cli

JOBS = {
    "lambda.job": "kind: lambda\nn: 1\nI: 1,0,0\nJ: 0,1,0\n",
    "eigen.job": (
        "kind: solve-eigen\nvars: x\nN: 4\n"
        "map: x -> x/2 + x^2\nlambda: 1/2\nr: x^2\n"
    ),
    "homogenize.job": (
        "kind: homogenize\nvars: x,y\nN: 4\n"
        "relations: x*y\nmap: x -> x/2; y -> y/2 + x^2*y\n"
    ),
}

with tempfile.TemporaryDirectory() as tmp:
    paths = []
    for name, text in JOBS.items():
        path = Path(tmp) / name
        path.write_text(text)
        paths.append(str(path))
    print("Text rendering:\n")
    cli.main(paths + ["--format", "text"])
    print("\nJSON rendering of the first job:\n")
    cli.main(paths[:1])

print("\nBuilt-in invariant selftest:\n")
cli.main(["selftest", "--format", "text", "--seed", "7"])
