"""Write CSV curve data.

j_Z1.csv, j_Z2.csv    j, g and the bounds on [0, 3] for Z = 1, 2
electronic.csv        electronic curves on [0, 1] with the grid solver
molecular_L10.csv     molecular curves at Z = 1, L = 10 on [0.03, 0.6]

Usage: python3 scripts/curves.py [outdir]
"""

import sys
from pathlib import Path

from deltah2.cli import main


def run(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = {
        "j_Z1.csv": ["--Z", "1", "--epsilon", "0.1", "--a-max", "3", "--n", "301"],
        "j_Z2.csv": ["--Z", "2", "--epsilon", "0.1", "--a-max", "3", "--n", "301"],
        "electronic.csv": ["--Z", "1", "--epsilon", "0.1", "--a-max", "1", "--n", "21",
                       "--with-exact"],
        "molecular_L10.csv": ["--Z", "1", "--L", "10", "--a-min", "0.03", "--a-max", "0.6",
                       "--n", "20", "--with-exact"],
    }
    for name, args in jobs.items():
        code = main(["curve", *args, "--out", str(outdir / name)])
        if code:
            raise SystemExit(code)
        print(f"wrote {outdir / name}")


if __name__ == "__main__":
    run(Path(sys.argv[1] if len(sys.argv) > 1 else "results"))
