#!/usr/bin/env python3
"""Writes the curve suite: one piece per j-string type and full curves.

Each piece is emitted at base (0,0,0) and at a nontrivial shift (read in
the opposite direction).  The manifest records the expected j-string and
its contribution polynomial, computed here from the tables independently
of the Rust classifier.
"""
import json
import os
from fractions import Fraction

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "curves")
SHIFT = (1, -2, 1)
PLUS, MINUS, D0 = (1, -1, 0), (-1, 1, 0), (0, 0, 1)


def add(a, d):
    return (a[0] + d[0], a[1] + d[1], (a[2] + d[2]) % 2)


def walk(start, steps):
    out = [start]
    for s in steps:
        out.append(add(out[-1], s))
    return out


def one_steps(k, d1):
    it = iter(d1)
    return [D0 if t % 2 == 0 else next(it) for t in range(k - 1)]


def generic(fam, w, r=(0, 0, 0)):
    """Node list [(role, mu)] for j >= 2, read from the canonical end."""
    N = -w
    if fam == "I":
        if w <= 0:
            cs = walk(add(r, (1, 0, 0)), [PLUS] * N + [MINUS] * N)
            return [("L", r)] + [("C", c) for c in cs] + [("R", add(cs[-1], MINUS))]
        cs = walk(add(r, MINUS), [MINUS] * (w - 1) + [PLUS] * (w - 1))
        return [("L", r)] + [("C", c) for c in cs] + [("R", add(cs[-1], (1, 0, 0)))]
    if fam == "II":
        if w == 0:
            return [("L", r), ("L", add(r, PLUS))]
        if w < 0:
            cs = walk(add(r, (1, 0, 0)), [PLUS] * N + [MINUS] * (N - 1))
            return [("L", r)] + [("C", c) for c in cs] + [("L", add(cs[-1], (-1, 0, 0)))]
        cs = walk(add(r, MINUS), [MINUS] * (w - 1) + [PLUS] * w)
        return [("L", r)] + [("C", c) for c in cs] + [("L", add(cs[-1], PLUS))]
    if fam == "II'":
        if w == 0:
            return [("R", r), ("R", add(r, PLUS))]
        if w < 0:
            cs = walk(add(r, PLUS), [PLUS] * N + [MINUS] * (N - 1))
            return [("R", r)] + [("C", c) for c in cs] + [("R", add(cs[-1], MINUS))]
        cs = walk(add(r, (-1, 0, 0)), [MINUS] * (w - 1) + [PLUS] * w)
        return [("R", r)] + [("C", c) for c in cs] + [("R", add(cs[-1], (1, 0, 0)))]
    if fam == "III":
        if w == 0:
            return [("L", r), ("P", None)]
        k = abs(w)
        cs = walk(add(r, (1, 0, 0)), [PLUS] * (k - 1)) if w < 0 else walk(add(r, MINUS), [MINUS] * (k - 1))
        return [("L", r)] + [("C", c) for c in cs] + [("Q" if k % 2 else "P", None)]
    if fam == "III'":
        if w == 0:
            return [("R", r), ("Q", None)]
        k = abs(w)
        cs = walk(add(r, PLUS), [PLUS] * (k - 1)) if w < 0 else walk(add(r, (-1, 0, 0)), [MINUS] * (k - 1))
        return [("R", r)] + [("C", c) for c in cs] + [("P" if k % 2 else "Q", None)]
    if fam == "IV":
        return [("L", r), ("C", add(r, (1, 0, 0))), ("R", add(r, (2, 0, 0)))]
    if fam == "IV'":
        return [("R", r), ("C", add(r, PLUS)), ("L", add(r, (2, -2, 0)))]
    if fam == "V":
        return [("L", r), ("C", add(r, (1, 0, 0))), ("C", add(r, (2, -1, 0))), ("L", add(r, (3, -2, 0)))]
    if fam == "V'":
        return [("R", r), ("C", add(r, PLUS)), ("C", add(r, (2, -2, 0))), ("R", add(r, (3, -2, 0)))]
    if fam == "VI":
        return [("P", None), ("C", r), ("Q", None)]
    raise ValueError(fam)


def first(u):
    return (-1, 0, 0) if u > 0 else PLUS


def one(fam, u, r=(0, 0, 0)):
    """Node list for 1-strings; u is a Fraction in (1/2)Z."""
    if fam == "III'":
        if u == 0:
            return [("R", r), ("Q", None)]
        k = int(abs(2 * u))
        step = MINUS if u > 0 else PLUS
        cs = walk(add(r, first(u)), one_steps(k, [step] * k))
        return [("R", r)] + [("C", c) for c in cs] + [("P" if k % 2 else "Q", None)]
    if fam == "II'":
        if u == 0:
            return [("R", r), ("R", add(r, PLUS))]
        k = int(abs(4 * u))
        a = abs(u)
        m = int(a) if a.denominator == 1 else int(a - Fraction(1, 2))
        if u > 0:
            d1 = [MINUS] * (m - 1) + [PLUS] * m if a.denominator == 1 else [MINUS] * m + [PLUS] * m
        else:
            d1 = [PLUS] * m + [MINUS] * (m - 1) if a.denominator == 1 else [PLUS] * m + [MINUS] * m
        cs = walk(add(r, first(u)), one_steps(k, d1))
        end = add(cs[-1], (1, 0, 0)) if u > 0 else add(cs[-1], MINUS)
        return [("R", r)] + [("C", c) for c in cs] + [("R", end)]
    if fam == "V'":
        return [("R", r), ("C", add(r, PLUS)), ("C", add(r, (1, -1, 1))), ("R", add(r, (2, -1, 1)))]
    if fam == "VI":
        return [("P", None), ("C", r), ("Q", None)]
    raise ValueError(fam)


def piece_curve(n, j, nodes):
    """An open curve made of a single j-string."""
    line = {"L": j - 1, "R": j + 1, "C": j}
    punct = {"P": j - 1, "Q": j}
    crossings = [{"line": line[k], "mu": list(m)} for k, m in nodes if k in line]
    # region of the first segment: D_{j-1} when entering from L or p
    region = j - 1 if nodes[0][0] in ("L", "P") else j
    segs, pairs = [], []
    idx = 0
    ends = [None, None]
    if nodes[0][0] in punct:
        ends[0] = punct[nodes[0][0]]
        segs.append({"a": 0, "b": {"puncture": ends[0]}, "region": region})
        region = 2 * j - 1 - region
    for i in range(len(crossings) - 1):
        segs.append({"a": i, "b": i + 1, "region": region})
        if region == 0:
            pairs.append([i, i + 1])
        region = 2 * j - 1 - region
    if nodes[-1][0] in punct:
        ends[1] = punct[nodes[-1][0]]
        segs.append({"a": len(crossings) - 1, "b": {"puncture": ends[1]}, "region": region})
    return {"n": n, "crossings": crossings, "segments": segs, "d0_pairs": pairs, "endpoints": ends}


def reverse(curve):
    m = len(curve["crossings"])
    flip = lambda i: m - 1 - i
    segs = []
    for s in reversed(curve["segments"]):
        b = s["b"]
        if isinstance(b, int):
            segs.append({"a": flip(b), "b": flip(s["a"]), "region": s["region"]})
        else:
            segs.append({"a": flip(s["a"]), "b": b, "region": s["region"]})
    return {
        "n": curve["n"],
        "crossings": list(reversed(curve["crossings"])),
        "segments": segs,
        "d0_pairs": sorted([sorted([flip(a), flip(b)]) for a, b in curve["d0_pairs"]]),
        "endpoints": list(reversed(curve["endpoints"])),
    }


def shifted(curve, r):
    c = json.loads(json.dumps(curve))
    for x in c["crossings"]:
        x["mu"] = list(add(x["mu"], r))
    return c


# polynomials as {(a,b,c): coeff}
def poly(*monos):
    p = {}
    for m in monos:
        p[m] = p.get(m, 0) + 1
    return p


def mul_mono(p, m):
    return {(a + m[0], b + m[1], (c + m[2]) % 2): v for (a, b, c), v in p.items()}


TABLE = {
    "I": poly((1, 0, 0), (0, 1, 0), (0, 1, 1), (1, 0, 1)),
    "II": poly((1, 0, 0), (0, 1, 0), (0, 1, 1), (1, 0, 1)),
    "II'": poly((0, 0, 0), (0, 0, 1), (1, -1, 0), (1, -1, 1)),
    "III": poly((0, 1, 0), (0, 1, 1)),
    "III'": poly((0, 0, 0), (0, 0, 1)),
    "VI": poly((0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)),
}
TABLE1 = {
    ("II'", 0): poly((0, 0, 0), (0, 0, 1), (1, -1, 0), (1, -1, 1)),
    ("II'", 1): poly((0, 0, 0), (0, 0, 1), (-1, 1, 0), (-1, 1, 1)),
    ("III'", 0): poly((0, 0, 0), (0, 0, 1)),
    ("III'", 1): poly((-1, 1, 0), (0, 0, 1)),
    ("VI", 0): poly((0, 0, 0), (0, 1, 0)),
}


def expected(j, fam, u, base):
    if j == 1:
        w = int((2 * u) // 2)
        half = int((2 * u) % 2)
        p = TABLE1.get((fam, half), {})
        return mul_mono(mul_mono(p, base), (-w, w, w % 2))
    w = int(u)
    return mul_mono(mul_mono(TABLE.get(fam, {}), base), (-w, w, 0))


def render(p):
    p = {k: v for k, v in p.items() if v}
    if not p:
        return "0"
    return " + ".join(
        "{}*q1^{}*q2^{}*q3^{}".format(v, *k) for k, v in sorted(p.items())
    )


def base_of(nodes):
    return nodes[1][1] if nodes[0][0] == "P" else nodes[0][1]


def main():
    os.makedirs(OUT, exist_ok=True)
    manifest = []

    def emit(name, curve, strings):
        with open(os.path.join(OUT, name + ".json"), "w") as f:
            json.dump(curve, f, indent=2)
            f.write("\n")
        manifest.append({"file": name + ".json", "strings": strings})

    def label(u):
        return str(u) if u.denominator == 1 else "{}/{}".format(u.numerator, u.denominator)

    cases = []
    for fam in ["I", "II", "II'", "III", "III'"]:
        for w in range(-2, 3):
            cases.append((fam, Fraction(w)))
    for fam in ["IV", "IV'", "V", "V'", "VI"]:
        cases.append((fam, Fraction(0)))
    # j-strings around an interior line, and n-strings
    for n, j in [(3, 2), (4, 3), (3, 3)]:
        for fam, u in cases:
            if j == n and fam not in ("II", "III", "V", "VI"):
                continue
            nodes = generic(fam, int(u))
            for tag, r, rev in [("base", (0, 0, 0), False), ("shift", SHIFT, True)]:
                c = shifted(piece_curve(n, j, nodes), r)
                if rev:
                    c = reverse(c)
                base = add(base_of(nodes), r)
                name = "n{}_j{}_{}_{}_{}".format(n, j, fam.replace("'", "p"), label(u).replace("/", "h").replace("-", "m"), tag)
                emit(name, c, [{"j": j, "family": fam, "w": label(u), "base": list(base), "poly": render(expected(j, fam, u, base))}])
    # 1-strings
    ones = [("II'", Fraction(k, 2)) for k in range(-4, 5)]
    ones += [("III'", Fraction(k, 2)) for k in range(-4, 5)]
    ones += [("V'", Fraction(0)), ("VI", Fraction(0))]
    for n in [2, 3]:
        for fam, u in ones:
            nodes = one(fam, u)
            for tag, r, rev in [("base", (0, 0, 0), False), ("shift", SHIFT, True)]:
                c = shifted(piece_curve(n, 1, nodes), r)
                if rev:
                    c = reverse(c)
                base = add(base_of(nodes), r)
                name = "n{}_j1_{}_{}_{}".format(n, fam.replace("'", "p"), label(u).replace("/", "h").replace("-", "m"), tag)
                emit(name, c, [{"j": 1, "family": fam, "w": label(u), "base": list(base), "poly": render(expected(1, fam, u, base))}])
    # full curves ending at punctures
    full = {
        # 0 -> d1 -> d2 -> 2
        "full_0_2": {
            "n": 2,
            "crossings": [{"line": 1, "mu": [0, 0, 0]}, {"line": 2, "mu": [1, 0, 0]}],
            "segments": [
                {"a": 0, "b": {"puncture": 0}, "region": 0},
                {"a": 0, "b": 1, "region": 1},
                {"a": 1, "b": {"puncture": 2}, "region": 2},
            ],
            "d0_pairs": [],
            "endpoints": [0, 2],
        },
        # 0 -> d1 -> d2 -> d3 -> 3
        "full_0_3": {
            "n": 3,
            "crossings": [{"line": 1, "mu": [0, 0, 0]}, {"line": 2, "mu": [1, 0, 0]}, {"line": 3, "mu": [2, 0, 0]}],
            "segments": [
                {"a": 0, "b": {"puncture": 0}, "region": 0},
                {"a": 0, "b": 1, "region": 1},
                {"a": 1, "b": 2, "region": 2},
                {"a": 2, "b": {"puncture": 3}, "region": 3},
            ],
            "d0_pairs": [],
            "endpoints": [0, 3],
        },
        # 2 -> d2 -> d1 -> around 0 -> d1 -> 1
        "full_e": {
            "n": 2,
            "crossings": [{"line": 2, "mu": [0, 0, 0]}, {"line": 1, "mu": [-1, 0, 0]}, {"line": 1, "mu": [-1, 0, 1]}],
            "segments": [
                {"a": 0, "b": {"puncture": 2}, "region": 2},
                {"a": 0, "b": 1, "region": 1},
                {"a": 1, "b": 2, "region": 0},
                {"a": 2, "b": {"puncture": 1}, "region": 1},
            ],
            "d0_pairs": [[1, 2]],
            "endpoints": [2, 1],
        },
    }
    for n in [2, 3]:
        for j in range(1, n + 1):
            full["basic_n{}_{}".format(n, j)] = piece_curve(n, j, [("P", None), ("C", (0, 0, 0)), ("Q", None)])
    for name, c in sorted(full.items()):
        for tag, r in [("base", (0, 0, 0)), ("shift", SHIFT)]:
            emit(name + "_" + tag, shifted(c, r), None)
    with open(os.path.join(OUT, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=1)
        f.write("\n")
    print(len(manifest), "curves")


if __name__ == "__main__":
    main()
