#!/usr/bin/env python3
"""Run the full similarity benchmark end to end on the synthetic demo data.

Expects a directory produced by `make_demo_data.py` (or generates one in a
temp dir with --generate), then invokes `lexsim evaluate` with every network
and text method plus the max/average combinations, and prints the summary.
"""

import argparse
import sys
import tempfile
from pathlib import Path

from lexsim.cli import main as lexsim_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data", help="directory from make_demo_data.py")
    ap.add_argument("--generate", action="store_true",
                    help="generate demo data in a temp dir first")
    ap.add_argument("--out", default="demo_results", help="report output directory")
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    if args.generate:
        tmp = tempfile.mkdtemp(prefix="lexsim_demo_")
        from make_demo_data import main as make_main
        sys.argv = ["make_demo_data.py", "--out", tmp, "--seed", str(args.seed)]
        make_main()
        data = Path(tmp)
    elif args.data:
        data = Path(args.data)
    else:
        ap.error("pass --data DIR or --generate")

    argv = ["evaluate",
            "--corpus", str(data / "corpus"),
            "--citations", str(data / "citations.csv"),
            "--pairs", str(data / "pairs.csv"),
            "--out", args.out,
            "--seed", str(args.seed),
            "--min-count", "1",
            "--infer-epochs", "20"]
    for method in ["biblio", "cocite", "dispersion", "node2vec",
                   "paragraph", "fulltext", "thematic_max", "thematic_avg"]:
        argv += ["--method", method]
    for combo in ["biblio:paragraph:max", "biblio:fulltext:average",
                  "node2vec:thematic_max:max"]:
        argv += ["--combine", combo]
    return lexsim_main(argv)


if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).parent))
    raise SystemExit(main())
