"""Regenerate the shipped curve fixtures and their auxiliary data.

Run from the repository root:  python3 tools/make_fixtures.py

Fixture 1 (g5_tetragonal_f3.model): a smooth intersection of three quadrics
in P^4, i.e. a canonical genus-5 curve.  Found by seeded random search over
coefficients in {-1,0,1,2}; the frozen quadrics below were verified smooth
mod 3, 5 and 7 by a Groebner-basis check (ideal of quadrics + all 3x3
Jacobian minors is the unit ideal in every affine chart).  Such a curve is
tetragonal, so beta_{2,2} = 3 != 0 makes it the nonvanishing control.

Fixture 2 (g10_veronese_f3.model): a smooth intersection of two cubics in
P^3 (genus 10, degree 9), canonically re-embedded in P^9 by the degree-2
Veronese map (the canonical class of a (3,3) complete intersection is the
restriction of O(2)).  Its 28 canonical quadrics are the kernel of
Sym^2(Sym^2) -> Sym^4 modulo the 8-dimensional space x_i * F_j.  The curve
has gonality > 4, so beta_{2,2} = 0 is expected; the script verifies it.
Auxiliary files: a closed-point pool (P^9 extensions are too large to
enumerate directly, so points are found on the P^3 model and pushed through
the Veronese map) and a hyperplane whose section splits into pool points
(the hyperplane pulls back to a product of two planes in P^3).
"""

import sys
from itertools import combinations, product
from pathlib import Path
from random import Random

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import sympy as sp

from modgon.fields import ff
from modgon.koszul import _monomials, betti_22, graded_pieces
from modgon.model import QuadricModel, format_model, parse_model, reduce_model, on_model
from modgon.points import frobenius_orbit

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "modgon" / "data" / "models"

G5_QUADRICS = (
    (((0, 2, 0, 0, 0), 2), ((0, 1, 0, 1, 0), 1), ((0, 0, 2, 0, 0), 1),
     ((0, 0, 0, 2, 0), 2), ((0, 0, 0, 1, 1), 2)),
    (((2, 0, 0, 0, 0), 2), ((1, 1, 0, 0, 0), 1), ((1, 0, 1, 0, 0), 1),
     ((1, 0, 0, 1, 0), 1), ((0, 2, 0, 0, 0), 1), ((0, 1, 0, 1, 0), 1),
     ((0, 1, 0, 0, 1), 2), ((0, 0, 1, 1, 0), 2), ((0, 0, 0, 1, 1), 1),
     ((0, 0, 0, 0, 2), 2)),
    (((2, 0, 0, 0, 0), 2), ((1, 1, 0, 0, 0), 1), ((1, 0, 1, 0, 0), -1),
     ((1, 0, 0, 1, 0), -1), ((0, 2, 0, 0, 0), 1), ((0, 1, 1, 0, 0), -1),
     ((0, 1, 0, 1, 0), 1), ((0, 1, 0, 0, 1), 1), ((0, 0, 1, 1, 0), 2),
     ((0, 0, 0, 2, 0), 2), ((0, 0, 0, 1, 1), 1)),
)


def smooth_ci(polys, nvars, codim, primes):
    """Groebner check: singular locus empty in every chart, for each p."""
    xs = sp.symbols(f"x0:{nvars}")
    exprs = [sp.expand(f) for f in polys]
    jac = sp.Matrix([[sp.diff(f, v) for v in xs] for f in exprs])
    minors = [jac[rows, cols].det()
              for rows in [tuple(range(codim))]
              for cols in combinations(range(nvars), codim)]
    for p in primes:
        for chart in range(nvars):
            subs = {xs[chart]: 1, **{xs[i]: 0 for i in range(chart)}}
            gens = [sp.expand(f.subs(subs)) for f in exprs + minors]
            if any(g.is_number and int(g) % p for g in gens):
                continue  # a unit lies in the chart ideal
            gens = [g for g in gens if not g.is_number]
            vs = [xs[i] for i in range(chart + 1, nvars)]
            if not vs or not gens:
                return False
            gb = sp.groebner(gens, *vs, modulus=p, order="grevlex")
            if list(gb.exprs) != [sp.Integer(1)]:
                return False
    return True


def cubic_monomials():
    return _monomials(4, 3)


def eval_poly(field, terms, pt):
    acc = field.zero
    for mono, c in terms:
        t = field.from_int(c)
        for i, e in enumerate(mono):
            for _ in range(e):
                t = field.mul(t, pt[i])
        acc = field.add(acc, t)
    return acc


def proj_points(field, n):
    """Normalised representatives of P^{n-1}(field)."""
    els = sorted(field.elements())
    one = field.one
    for lead in range(n):
        for tail in product(els, repeat=n - lead - 1):
            yield (field.zero,) * lead + (one,) + tail


def curve_points_p3(field, cubics):
    return [pt for pt in proj_points(field, 4)
            if all(field.is_zero(eval_poly(field, c, pt)) for c in cubics)]


def pick_cubics(seed=20240817):
    rng = Random(seed)
    monos = cubic_monomials()
    for trial in range(500):
        cubics = []
        for _ in range(2):
            terms = tuple((m, c) for m in monos
                          if (c := rng.choice((-1, 0, 0, 1, 1, 2))) != 0)
            cubics.append(terms)
        xs = sp.symbols("x0:4")
        exprs = []
        for terms in cubics:
            e = 0
            for mono, c in terms:
                t = c
                for i, a in enumerate(mono):
                    t *= xs[i] ** a
                e += t
            exprs.append(e)
        if not smooth_ci(exprs, 4, 2, (3,)):
            continue
        n1 = len(curve_points_p3(ff(3), cubics))
        if n1 < 3:
            continue
        print(f"trial {trial}: smooth mod 3, {n1} rational points")
        return cubics
    raise SystemExit("no smooth cubic pair found")


def veronese_model(cubics):
    """28 canonical quadrics of the 2-uple re-embedding, over Z."""
    zmon = _monomials(4, 2)                 # P^9 coordinates
    qmon = _monomials(4, 4)                 # degree-4 x-monomials
    qidx = {m: i for i, m in enumerate(qmon)}
    zz = _monomials(10, 2)                  # degree-2 z-monomials
    cols = []
    for e in zz:
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        m = tuple(x + y for x, y in zip(zmon[idx[0]], zmon[idx[1]]))
        col = [0] * len(qmon)
        col[qidx[m]] = 1
        cols.append(col)
    for i in range(4):
        for terms in cubics:
            col = [0] * len(qmon)
            for mono, c in terms:
                e = list(mono)
                e[i] += 1
                col[qidx[tuple(e)]] += c
            cols.append(col)
    a = sp.Matrix(cols).T  # 35 x 63
    null = a.nullspace()
    assert len(null) == 28, len(null)
    quadrics = []
    for v in null:
        denom = sp.lcm([sp.fraction(x)[1] for x in v[:55]] or [1])
        ints = [int(x * denom) for x in v[:55]]
        g = 0
        for x in ints:
            g = sp.igcd(g, x)
        ints = [x // max(g, 1) for x in ints]
        terms = tuple((zz[i], c) for i, c in enumerate(ints) if c)
        assert terms
        quadrics.append(terms)
    return quadrics


def veronese_image(field, pt):
    zmon = _monomials(4, 2)
    img = []
    for m in zmon:
        t = field.one
        for i, e in enumerate(m):
            for _ in range(e):
                t = field.mul(t, pt[i])
        img.append(t)
    lead = next(c for c in img if not field.is_zero(c))
    inv = field.inv(lead)
    return tuple(field.mul(inv, c) for c in img)


def build_pool(cubics, model3, max_degree=4):
    """Closed points of the canonical model, found on the P^3 model."""
    seen = {}
    for k in range(1, max_degree + 1):
        fk = ff(3, k)
        for pt in curve_points_p3(fk, cubics):
            img = veronese_image(fk, pt)
            orbit = frobenius_orbit(fk, img)
            if len(orbit) != k:
                continue  # not of exact degree k
            seen.setdefault((k, orbit[0]), orbit)
    out = []
    for (k, _), orbit in sorted(seen.items()):
        rep = orbit[0]
        fk = ff(3, k)
        assert on_model(fk, model3, rep)
        out.append((k, rep))
    return out


def split_planes(cubics, max_degree=4):
    """F_3-rational planes whose curve section is 9 distinct closed points
    of degree <= max_degree."""
    good = []
    pts_by_deg = {k: curve_points_p3(ff(3, k), cubics) for k in range(1, max_degree + 1)}
    for lead in range(4):
        for tail in product(range(3), repeat=3 - lead):
            L = (0,) * lead + (1,) + tail
            total = 0
            pts = []
            for k in range(1, max_degree + 1):
                fk = ff(3, k)
                Lf = [fk.from_int(c) for c in L]
                on_plane = []
                for pt in pts_by_deg[k]:
                    acc = fk.zero
                    for c, x in zip(Lf, pt):
                        acc = fk.add(acc, fk.mul(c, x))
                    if fk.is_zero(acc):
                        on_plane.append(pt)
                orbits = {frobenius_orbit(fk, p)[0]: frobenius_orbit(fk, p)
                          for p in on_plane}
                exact = [o for o in orbits.values() if len(o) == k]
                total += k * len(exact)
                pts.extend((k, o[0]) for o in exact)
            if total == 9:
                good.append((L, pts))
    return good


def hyperplane_from_planes(L1, L2):
    """Coefficients in P^9 of the quadric L1*L2 in P^3."""
    zmon = _monomials(4, 2)
    zidx = {m: i for i, m in enumerate(zmon)}
    h = [0] * 10
    for i, a in enumerate(L1):
        for j, b in enumerate(L2):
            if a and b:
                e = [0, 0, 0, 0]
                e[i] += 1
                e[j] += 1
                h[zidx[tuple(e)]] += a * b
    return tuple(h)


def main():
    DATA.mkdir(parents=True, exist_ok=True)

    g5 = QuadricModel("g5-tetra", 0, (), 5, (3, 5, 7), G5_QUADRICS)
    (DATA / "g5_tetragonal_f3.model").write_text(format_model(g5))
    print("g5 model written,", betti_22(reduce_model(g5, ff(3))))

    cubics = pick_cubics()
    print("cubics:", cubics)
    quadrics = veronese_model(cubics)
    g10 = QuadricModel("g10-veronese", 0, (), 10, (3,), quadrics)
    g10 = parse_model(format_model(g10))  # canonical term order for hashing
    m3 = reduce_model(g10, ff(3))
    gp = graded_pieces(m3)
    print("g10 graded dims:", gp.dim_r2, gp.dim_r3)
    res = betti_22(m3)
    print("g10", res)
    if res.beta22 != 0:
        raise SystemExit("beta_22 nonzero; pick different cubics")
    (DATA / "g10_veronese_f3.model").write_text(format_model(g10))

    pool = build_pool(cubics, m3)
    lines = [f"label {g10.label}", f"model_hash {m3.content_hash()}", "p 3"]
    for k, rep in pool:
        lines.append("point " + str(k) + " " + " ".join(str(c) for c in rep))
    (DATA / "g10_veronese_f3.points").write_text("\n".join(lines) + "\n")
    print("pool:", {k: sum(1 for d, _ in pool if d == k) for k in range(1, 5)})

    planes = split_planes(cubics)
    print(f"{len(planes)} split planes")
    pick = None
    for (L1, pts1), (L2, pts2) in combinations(planes, 2):
        if not set(pts1) & set(pts2):
            pick = (L1, L2)
            break
    if pick is None:
        raise SystemExit("no disjoint split plane pair")
    h = hyperplane_from_planes(*pick)
    print("planes", pick, "-> hyperplane", h)
    with open(DATA / "g10_veronese_f3.points", "a") as f:
        f.write("split_hyperplane " + " ".join(str(c) for c in h) + "\n")


if __name__ == "__main__":
    main()
