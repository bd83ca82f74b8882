"""Convergence study of the uniform asymptotics against the oracle.

Writes one CSV per run (same schema as ``hahn-asym convergence``) and prints
the fitted slopes.  Example:

    python3 scripts/run_convergence.py --n 32,64,128,256,512 --out conv.csv
"""

import argparse
import io
import sys

from hahn_asym.cli import main as cli_main

DEFAULT_POINTS = ["0.2,0", "0.8,0", "0.5,0.5", "-0.5,0", "0.2,0.01", "0.02,0", "0.98,0", "1.5,0",
                  "0.08,0.02"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", default="0.3")
    ap.add_argument("--beta", default="0.7")
    ap.add_argument("--c", default="0.5")
    ap.add_argument("--n", default="32,64,128,256")
    ap.add_argument("--z", action="append", help="points 're,im'; defaults cover all regions")
    ap.add_argument("--jobs", default="4")
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    cli_args = ["convergence", "--alpha", args.alpha, "--beta", args.beta, "--c", args.c,
                "--n", args.n, "--jobs", args.jobs]
    cli_args += [f"--z={z}" for z in (args.z or DEFAULT_POINTS)]
    buf = io.StringIO()
    code = cli_main(cli_args, out=buf)
    text = buf.getvalue()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        for line in text.splitlines():
            if line.startswith("# slope"):
                print(line[2:])
    return code


if __name__ == "__main__":
    sys.exit(main())
