"""Level-3 points of the cusp and its perturbations, in exact rationals."""

from fractions import Fraction

from monstertower.cli import render_germ
from monstertower.germ import CurveGerm
from monstertower.tower import fraction_str, point_of, prolong


def show(polys):
    g = CurveGerm.from_polynomials(polys)
    tr = prolong(g, 3)
    p = point_of(tr, 3)
    names = [c.name for c in tr.records[3].active_coords[1:]]
    coords = ", ".join(f"{name}={fraction_str(v)}" for name, v in zip(names, p.fiber))
    print(f"{render_germ(g):<28} {tr.letters}  chart {p.chart_path[-1]}  {coords}")


def main():
    show([{2: 1}, {3: 1}, {}])
    for a in (Fraction(1), Fraction(-2), Fraction(5, 3)):
        show([{2: 1}, {3: 1, 4: a}, {}])
    for b in (Fraction(1), Fraction(-3, 2), Fraction(7)):
        show([{2: 1}, {3: 1}, {4: b}])
    show([{2: 1}, {3: 2, 4: Fraction(1, 3)}, {4: 5}])


if __name__ == "__main__":
    main()
