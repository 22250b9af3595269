#!/usr/bin/env python3
"""Generate reference fixtures for restricted root system combinatorics.

Independent oracle for the C++ enumeration: roots are generated by closing the
explicit Euclidean simple-root sets under Weyl reflections (for the non-reduced
BC family, by listing the textbook Euclidean root set directly), then expressed
in simple-root coordinates with sympy's exact rationals.  The C++ side builds
the same systems from Cartan-integer string rules, so the two pathways share no
code or method.

Output: tests/data/root_systems.json (frozen; regenerate only on purpose).
"""

import json
import os
from fractions import Fraction
from itertools import combinations

import sympy as sp


def basis(n, i):
    v = [0] * n
    v[i] = 1
    return sp.Matrix(v)


def simple_roots(label, rank):
    """Euclidean simple roots (Bourbaki coordinates)."""
    if label == "A":
        n = rank + 1
        return [basis(n, i) - basis(n, i + 1) for i in range(rank)]
    if label in ("B", "BC"):
        n = rank
        out = [basis(n, i) - basis(n, i + 1) for i in range(rank - 1)]
        out.append(basis(n, rank - 1))
        return out
    if label == "C":
        n = rank
        out = [basis(n, i) - basis(n, i + 1) for i in range(rank - 1)]
        out.append(2 * basis(n, rank - 1))
        return out
    if label == "D":
        n = rank
        out = [basis(n, i) - basis(n, i + 1) for i in range(rank - 1)]
        out.append(basis(n, rank - 2) + basis(n, rank - 1))
        return out
    if label == "G2":
        return [
            basis(3, 0) - basis(3, 1),
            -2 * basis(3, 0) + basis(3, 1) + basis(3, 2),
        ]
    if label == "F4":
        h = sp.Rational(1, 2)
        return [
            basis(4, 1) - basis(4, 2),
            basis(4, 2) - basis(4, 3),
            basis(4, 3),
            sp.Matrix([h, -h, -h, -h]),
        ]
    if label in ("E6", "E7", "E8"):
        h = sp.Rational(1, 2)
        e8 = [
            sp.Matrix([h, -h, -h, -h, -h, -h, -h, h]),
            basis(8, 0) + basis(8, 1),
            basis(8, 1) - basis(8, 0),
            basis(8, 2) - basis(8, 1),
            basis(8, 3) - basis(8, 2),
            basis(8, 4) - basis(8, 3),
            basis(8, 5) - basis(8, 4),
            basis(8, 6) - basis(8, 5),
        ]
        return e8[: rank]
    raise ValueError(label)


def reflect(x, a):
    return x - 2 * (x.dot(a) / a.dot(a)) * a


def all_roots(label, rank):
    simples = simple_roots(label, rank)
    if label == "BC":
        n = rank
        roots = []
        for i in range(n):
            roots += [basis(n, i), -basis(n, i), 2 * basis(n, i), -2 * basis(n, i)]
            for j in range(i + 1, n):
                for s in (1, -1):
                    roots += [basis(n, i) + s * basis(n, j),
                              -(basis(n, i) + s * basis(n, j))]
        return simples, roots
    roots = {tuple(a) for a in simples}
    changed = True
    while changed:
        changed = False
        for t in list(roots):
            x = sp.Matrix(t)
            for a in simples:
                r = tuple(reflect(x, a))
                if r not in roots:
                    roots.add(r)
                    changed = True
    return simples, [sp.Matrix(t) for t in roots]


def coords(simples, v):
    m = sp.Matrix.hstack(*simples)
    sol = m.solve_least_squares(v)
    expanded = m * sol
    assert sp.simplify(expanded - v) == sp.zeros(v.rows, 1)
    return [sp.nsimplify(c) for c in sol]


def system_fixture(label, rank):
    simples, roots = all_roots(label, rank)
    root_coords = []
    for v in roots:
        c = coords(simples, v)
        assert all(x == int(x) for x in c), (label, rank, c)
        c = [int(x) for x in c]
        assert all(x >= 0 for x in c) or all(x <= 0 for x in c)
        root_coords.append((tuple(c), v))
    positives = sorted(
        [(c, v) for c, v in root_coords if sum(c) > 0], key=lambda cv: (sum(cv[0]), cv[0])
    )

    short2 = min(v.dot(v) for _, v in positives)
    gram = [[sp.nsimplify(a.dot(b) / short2) for b in simples] for a in simples]
    cartan = [
        [int(2 * simples[i].dot(simples[j]) / simples[j].dot(simples[j]))
         for j in range(rank)]
        for i in range(rank)
    ]

    posset = {c for c, _ in positives}
    rootset = posset | {tuple(-x for x in c) for c in posset}

    def is_root(c):
        return tuple(c) in rootset

    strings = []
    for lam, _ in positives:
        for ai in range(rank):
            alpha = tuple(1 if k == ai else 0 for k in range(rank))
            if lam == alpha or lam == tuple(2 * x for x in alpha):
                continue
            count = sum(
                1
                for m in range(-8, 9)
                if is_root([lam[k] + m * alpha[k] for k in range(rank)])
            )
            strings.append([list(lam), ai, count])

    orth_count = 0
    for k in range(rank + 1):
        for sub in combinations(range(rank), k):
            if all(simples[i].dot(simples[j]) == 0 for i, j in combinations(sub, 2)):
                orth_count += 1

    sum_pos = [sum(c[k] for c, _ in positives) for k in range(rank)]

    return {
        "label": label,
        "rank": rank,
        "cartan": cartan,
        "gram_short1": [[str(Fraction(str(x))) for x in row] for row in gram],
        "n_positive": len(positives),
        "positive_roots": [list(c) for c, _ in positives],
        "levels": sorted(sum(c) for c, _ in positives),
        "highest_root": list(positives[-1][0]),
        "sum_positive": sum_pos,
        "string_lengths": strings,
        "orthogonal_subset_count": orth_count,
    }


def main():
    systems = []
    for r in range(1, 7):
        systems.append(("A", r))
    for r in range(2, 7):
        systems.append(("B", r))
        systems.append(("C", r))
    for r in range(1, 6):
        systems.append(("BC", r))
    for r in range(4, 7):
        systems.append(("D", r))
    systems += [("G2", 2), ("F4", 4), ("E6", 6), ("E7", 7), ("E8", 8)]

    out = {}
    for label, rank in systems:
        key = label if label in ("G2", "F4", "E6", "E7", "E8") else f"{label}{rank}"
        out[key] = system_fixture(label, rank)
        print(key, out[key]["n_positive"], "positive roots")

    here = os.path.dirname(os.path.abspath(__file__))
    path = os.path.normpath(os.path.join(here, "..", "..", "tests", "data",
                                         "root_systems.json"))
    with open(path, "w") as f:
        json.dump(out, f, indent=1, sort_keys=True)
        f.write("\n")
    print("wrote", path)


if __name__ == "__main__":
    main()
