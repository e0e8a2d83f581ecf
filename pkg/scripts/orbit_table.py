"""Print the level-by-level class counts for several ambient dimensions."""

import argparse

from monstertower.orbits import COUNT_LABEL, enumerate_classes, is_extrapolated, planar_word_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=7)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    args = ap.parse_args()
    print(COUNT_LABEL)
    print("level  " + "  ".join(f"n={n:<6}" for n in args.dims) + "  words")
    columns = {n: enumerate_classes(n, args.depth) for n in args.dims}
    for k in range(1, args.depth + 1):
        row = "  ".join(f"{columns[n][k - 1]:<8}" for n in args.dims)
        print(f"{k:>5}  {row}  {planar_word_count(k)}")
    marked = [n for n in args.dims if is_extrapolated(n)]
    if marked:
        print(f"columns n={marked} extrapolate the plane rules beyond n=3")


if __name__ == "__main__":
    main()
