#!/usr/bin/env python3
"""Materialise MovieLens 100k (u.data plus the canonical u1..u5 splits).

The GroupLens archive host is not always reachable, so the ratings are taken
from the RecBole wheel on PyPI, which ships ml-100k.inter in the original
u.data line order. The splits follow the distribution's mku.sh: split i takes
lines [(i-1)*20000, i*20000) of u.data as the test set, and both files are
sorted by (user, item).
"""

import argparse
import pathlib
import subprocess
import sys
import tempfile
import zipfile

INTER = "recbole/dataset_example/ml-100k/ml-100k.inter"


def fetch_lines(wheel_dir: pathlib.Path) -> list[str]:
    wheels = sorted(wheel_dir.glob("recbole-*.whl"))
    if not wheels:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", "recbole==1.2.1",
             "--no-deps", "-d", str(wheel_dir), "-q"],
            check=True)
        wheels = sorted(wheel_dir.glob("recbole-*.whl"))
    with zipfile.ZipFile(wheels[-1]) as z:
        text = z.read(INTER).decode("utf-8")
    rows = text.splitlines()[1:]
    out = []
    for row in rows:
        user, item, rating, ts = row.split("\t")
        out.append(f"{user}\t{item}\t{int(float(rating))}\t{int(float(ts))}")
    return out


def sort_key(line: str):
    user, item, _, _ = line.split("\t")
    return int(user), int(item)


def write(path: pathlib.Path, lines: list[str]) -> None:
    path.write_text("".join(l + "\n" for l in lines), encoding="utf-8")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/ml-100k", help="output directory")
    ap.add_argument("--wheel-dir", help="directory holding (or receiving) the recbole wheel")
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        lines = fetch_lines(pathlib.Path(args.wheel_dir or tmp))
    if len(lines) != 100000:
        print(f"expected 100000 ratings, got {len(lines)}", file=sys.stderr)
        return 2
    write(out / "u.data", lines)
    for i in range(1, 6):
        lo, hi = (i - 1) * 20000, i * 20000
        write(out / f"u{i}.test", sorted(lines[lo:hi], key=sort_key))
        write(out / f"u{i}.base", sorted(lines[:lo] + lines[hi:], key=sort_key))
    print(f"wrote u.data and u1..u5 splits to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
