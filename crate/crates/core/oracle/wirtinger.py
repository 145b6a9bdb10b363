#!/usr/bin/env python3
"""Wirtinger-presentation oracle for the built-in link catalog.

Each link is given as closed polygons in R^3. The script projects them to a
generic plane, finds every crossing, builds the Wirtinger arcs and computes
longitude words by Milnor's iteration: arc generators start as the base
meridian of their component and are repeatedly re-expressed through the
crossing relations

    x_out = x_over^(-e) * x_in * x_over^(e)

where e = +1 when the under-strand passes from the right of the over-strand
to its left (viewer at +z). Reading a path: passing under an arc from its
right to its left contributes x_arc, the other direction x_arc^-1.

The longitude of component c is the product of x_over^(e) over the
under-crossings met when walking along c from its base point; every letter
of the component's own meridian is erased afterwards (the component is
deleted, so its meridians bound disks). Linking numbers are cross-checked
against a numerical Gauss integral on the same polygons.

Usage: python3 wirtinger.py > ../tests/fixtures/catalog_longitudes.json
"""

import json
import math
import sys


def rotation(a, b, c):
    ca, sa = math.cos(a), math.sin(a)
    cb, sb = math.cos(b), math.sin(b)
    cc, sc = math.cos(c), math.sin(c)
    rz = [[ca, -sa, 0], [sa, ca, 0], [0, 0, 1]]
    ry = [[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]]
    rx = [[1, 0, 0], [0, cc, -sc], [0, sc, cc]]

    def mul(p, q):
        return [[sum(p[i][k] * q[k][j] for k in range(3)) for j in range(3)] for i in range(3)]

    return mul(rz, mul(ry, rx))


def apply(m, p):
    return tuple(sum(m[i][k] * p[k] for k in range(3)) for i in range(3))


def sample(f, n):
    return [f(2 * math.pi * i / n) for i in range(n)]


# --------------------------------------------------------------------------
# geometry of the standard links


def hopf():
    a = sample(lambda t: (math.cos(t), math.sin(t), 0.0), 120)
    b = sample(lambda t: (1 + math.cos(t), 0.0, -math.sin(t)), 120)
    return [a, b]


def borromean():
    a = sample(lambda t: (2 * math.cos(t), math.sin(t), 0.0), 160)
    b = sample(lambda t: (0.0, 2 * math.cos(t), math.sin(t)), 160)
    c = sample(lambda t: (math.sin(t), 0.0, 2 * math.cos(t)), 160)
    return [a, b, c]


def whitehead():
    # component 1: unit circle in the xy-plane.
    # component 2: untwisted Whitehead double of a circle linking it once;
    # two parallel strands at radii 0.9 and 1.1 about (1,0,0) in the
    # xz-plane, joined by a clasp near (2,0,0).
    a = sample(lambda t: (math.cos(t), math.sin(t), 0.0), 160)

    def on_circle(rho, t):
        return (1 + rho * math.cos(t), 0.0, rho * math.sin(t))

    d, h, n = 0.3, 0.1, 120
    inner = [on_circle(0.9, d + (2 * math.pi - 2 * d) * i / n) for i in range(n + 1)]
    outer = [on_circle(1.1, -d - (2 * math.pi - 2 * d) * i / n) for i in range(n + 1)]
    hook_a = [(1.9, 0.0, 0.15), (2.1, 0.0, 0.15)]
    hook_b = [(2.05, -h, 0.25), (2.05, -h, -0.15), (1.95, h, -0.15), (1.95, h, 0.25)]
    b = inner + hook_a + outer + hook_b
    return [a, b]


# --------------------------------------------------------------------------
# crossings


def seg_intersection(p, q, r, s):
    """Proper intersection of 2D segments p->q and r->s; returns (t, u)."""
    d1 = (q[0] - p[0], q[1] - p[1])
    d2 = (s[0] - r[0], s[1] - r[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(den) < 1e-14:
        return None
    w = (r[0] - p[0], r[1] - p[1])
    t = (w[0] * d2[1] - w[1] * d2[0]) / den
    u = (w[0] * d1[1] - w[1] * d1[0]) / den
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    return None


def crossings(curves):
    segs = []
    for c, pts in enumerate(curves):
        n = len(pts)
        for i in range(n):
            segs.append((c, i, pts[i], pts[(i + 1) % n], n))
    out = []
    for x in range(len(segs)):
        for y in range(x + 1, len(segs)):
            ca, ia, p, q, na = segs[x]
            cb, ib, r, s, nb = segs[y]
            if ca == cb and (abs(ia - ib) <= 1 or abs(ia - ib) == na - 1):
                continue
            hit = seg_intersection(p, q, r, s)
            if hit is None:
                continue
            t, u = hit
            za = p[2] + t * (q[2] - p[2])
            zb = r[2] + u * (s[2] - r[2])
            assert abs(za - zb) > 1e-6, "curves meet in space"
            da = (q[0] - p[0], q[1] - p[1])
            db = (s[0] - r[0], s[1] - r[1])
            if za > zb:
                over, under, dover, dunder = (ca, ia + t), (cb, ib + u), da, db
            else:
                over, under, dover, dunder = (cb, ib + u), (ca, ia + t), db, da
            e = 1 if dover[0] * dunder[1] - dover[1] * dunder[0] > 0 else -1
            out.append({"over": over, "under": under, "e": e})
    return out


# --------------------------------------------------------------------------
# free-group words: lists of (generator, exponent +-1)


def reduce(word):
    out = []
    for g, s in word:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return out


def inv(word):
    return [(g, -s) for g, s in reversed(word)]


def power(word, e):
    return word if e > 0 else inv(word)


def wirtinger_longitudes(curves, iterations):
    xs = crossings(curves)
    ncomp = len(curves)
    unders = [sorted((x for x in xs if x["under"][0] == c), key=lambda x: x["under"][1]) for c in range(ncomp)]

    def arc_of(comp, pos):
        k = sum(1 for x in unders[comp] if x["under"][1] < pos)
        return 0 if k == len(unders[comp]) else k

    words = [[[(c, 1)] for _ in range(max(1, len(unders[c])))] for c in range(ncomp)]
    for _ in range(iterations):
        new = []
        for c in range(ncomp):
            arcs = [[(c, 1)]]
            for x in unders[c][:-1]:
                oc, opos = x["over"]
                xo = power(words[oc][arc_of(oc, opos)], x["e"])
                arcs.append(reduce(inv(xo) + arcs[-1] + xo))
            new.append(arcs)
        words = new

    longitudes = []
    linking = [[0] * ncomp for _ in range(ncomp)]
    for c in range(ncomp):
        lon = []
        for x in unders[c]:
            oc, opos = x["over"]
            lon += power(words[oc][arc_of(oc, opos)], x["e"])
            if oc != c:
                linking[c][oc] += x["e"]
        lon = reduce(lon)
        longitudes.append([(g, s) for g, s in lon if g != c])
    return longitudes, linking, len(xs)


def gauss_linking(a, b):
    total = 0.0
    for i in range(len(a)):
        p0, p1 = a[i], a[(i + 1) % len(a)]
        pm = [(p0[k] + p1[k]) / 2 for k in range(3)]
        dp = [p1[k] - p0[k] for k in range(3)]
        for j in range(len(b)):
            q0, q1 = b[j], b[(j + 1) % len(b)]
            qm = [(q0[k] + q1[k]) / 2 for k in range(3)]
            dq = [q1[k] - q0[k] for k in range(3)]
            r = [pm[k] - qm[k] for k in range(3)]
            cr = (dp[1] * dq[2] - dp[2] * dq[1], dp[2] * dq[0] - dp[0] * dq[2], dp[0] * dq[1] - dp[1] * dq[0])
            dist = math.sqrt(sum(v * v for v in r))
            total += sum(r[k] * cr[k] for k in range(3)) / dist ** 3
    return total / (4 * math.pi)


def fmt(word, names):
    parts = []
    for g, s in word:
        parts.append(names[g] + ("" if s > 0 else "'"))
    return " ".join(parts)


def main():
    rot = rotation(0.137, 0.291, 0.413)
    out = {}
    for name, build in [("hopf", hopf), ("borromean", borromean), ("whitehead", whitehead)]:
        curves = [[apply(rot, p) for p in c] for c in build()]
        n = len(curves)
        names = ["m%d" % (i + 1) for i in range(n)]
        lons, linking, ncross = wirtinger_longitudes(curves, n + 1)
        for i in range(n):
            for j in range(n):
                if i != j:
                    g = gauss_linking(curves[i], curves[j])
                    assert abs(g - linking[i][j]) < 0.05, (name, i, j, g, linking[i][j])
        out[name] = {
            "components": names,
            "crossings": ncross,
            "linking": linking,
            "longitudes": {names[i]: fmt(lons[i], names) for i in range(n)},
        }
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
