#!/usr/bin/env python3
"""Generate the frozen quadrature tables used by core/src/quadrature.cpp.

Gauss-Lobatto rules: nodes are the endpoints plus the roots of P'_{N-1},
weights w_i = 2 / (N (N-1) P_{N-1}(x_i)^2).  Stored in the standard
convention (weights sum to 2).

Triangle rules: fully symmetric (invariant under all six permutations of
the barycentric coordinates), positive weights, all points inside the
closed triangle, weights normalized to sum to 1.  Each rule is stored as a
list of orbits:
  orbit 1: centroid (1/3, 1/3, 1/3)
  orbit 3: (a, a, 1-2a) and permutations
  orbit 6: (a, b, 1-a-b) and permutations
Candidate orbit parameters are polished with a Gauss-Newton solve of the
moment equations and then verified for exactness against the closed-form
simplex moments  int x^p y^q = p! q! / (p+q+2)!  for every monomial up to
the stated degree.

Run from the repository root:  python3 scripts/gen_quadrature_tables.py
Output is written to stdout as C++ table fragments.
"""

import mpmath as mp

mp.mp.dps = 50


# ---------------------------------------------------------------- lobatto

def legendre(n, x):
    return mp.legendre(n, x)


def dlegendre(n, x):
    # (1-x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x))
    if x == 1 or x == -1:
        return mp.mpf(n) * (n + 1) / 2 * (1 if x == 1 else (-1) ** (n - 1))
    return n * (legendre(n - 1, x) - x * legendre(n, x)) / (1 - x * x)


def lobatto_rule(n):
    """Nodes/weights of the n-point Gauss-Lobatto rule on [-1, 1]."""
    assert n >= 2
    nodes = [mp.mpf(-1)]
    # interior nodes: roots of P'_{n-1}, isolated by sign changes on a fine
    # grid, then refined by bisection
    f = lambda t: dlegendre(n - 1, t)
    grid = [mp.mpf(-1) + mp.mpf(2) * k / 4096 for k in range(4097)]
    for lo, hi in zip(grid[:-1], grid[1:]):
        flo, fhi = f(lo), f(hi)
        if flo == 0 and lo != -1:
            nodes.append(lo)
            continue
        if flo * fhi < 0:
            for _ in range(220):
                mid = (lo + hi) / 2
                fm = f(mid)
                if fm == 0:
                    lo = hi = mid
                    break
                if flo * fm < 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            nodes.append((lo + hi) / 2)
    nodes.append(mp.mpf(1))
    nodes.sort()
    assert len(nodes) == n
    weights = [2 / (mp.mpf(n) * (n - 1) * legendre(n - 1, x) ** 2) for x in nodes]
    return nodes, weights


# --------------------------------------------------------------- triangle

def simplex_moment(p, q):
    return mp.factorial(p) * mp.factorial(q) / mp.factorial(p + q + 2)


def orbit_points(orbit):
    kind = orbit[0]
    if kind == 1:
        third = mp.mpf(1) / 3
        return [(third, third, third)]
    if kind == 3:
        a = orbit[1]
        c = 1 - 2 * a
        return [(c, a, a), (a, c, a), (a, a, c)]
    if kind == 6:
        a, b = orbit[1], orbit[2]
        c = 1 - a - b
        return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
    raise ValueError(kind)


def rule_points(orbits):
    pts = []
    for orb in orbits:
        w = orb[-1]
        for lam in orbit_points(orb):
            # vertices (0,0), (1,0), (0,1)
            pts.append((lam[1], lam[2], w))
    return pts


def moment_residuals(orbits, degree):
    res = []
    for d in range(degree + 1):
        for p in range(d + 1):
            q = d - p
            s = mp.mpf(0)
            for x, y, w in rule_points(orbits):
                s += w * x ** p * y ** q
            # rule weights sum to 1 and scale by |T| = 1/2 for the unit simplex
            res.append(s / 2 - simplex_moment(p, q))
    return res


def pack(orbits):
    vec = []
    for orb in orbits:
        if orb[0] == 1:
            vec.append(orb[-1])
        elif orb[0] == 3:
            vec.extend([orb[1], orb[-1]])
        else:
            vec.extend([orb[1], orb[2], orb[-1]])
    return vec


def unpack(vec, structure):
    orbits = []
    i = 0
    for kind in structure:
        if kind == 1:
            orbits.append((1, vec[i])); i += 1
        elif kind == 3:
            orbits.append((3, vec[i], vec[i + 1])); i += 2
        else:
            orbits.append((6, vec[i], vec[i + 1], vec[i + 2])); i += 3
    return orbits


def polish(orbits, degree):
    # Gauss-Newton least squares on the symmetry-reduced moment residuals
    # (p >= q only; the x<->y swap makes the rest redundant).
    structure = [o[0] for o in orbits]

    def residual(vec):
        orbs = unpack(vec, structure)
        r = []
        for d in range(degree + 1):
            for p in range(d, -1, -1):
                q = d - p
                if p < q:
                    break
                s = mp.mpf(0)
                for x, y, w in rule_points(orbs):
                    s += w * x ** p * y ** q
                r.append(s / 2 - simplex_moment(p, q))
        return r

    v = [mp.mpf(x) for x in pack(orbits)]
    h = mp.mpf(10) ** -17
    for _ in range(40):
        r = residual(v)
        if max(abs(x) for x in r) < mp.mpf(10) ** -40:
            break
        jac = mp.zeros(len(r), len(v))
        for j in range(len(v)):
            vp = list(v); vp[j] += h
            vm = list(v); vm[j] -= h
            rp, rm = residual(vp), residual(vm)
            for i in range(len(r)):
                jac[i, j] = (rp[i] - rm[i]) / (2 * h)
        # damped normal equations (qr_solve chokes on the redundant rows)
        n = len(v)
        gram = mp.zeros(n, n)
        rhs = mp.zeros(n, 1)
        for a in range(n):
            for c in range(n):
                gram[a, c] = sum(jac[i, a] * jac[i, c] for i in range(len(r)))
            rhs[a] = -sum(jac[i, a] * r[i] for i in range(len(r)))
        lam = mp.mpf(10) ** -60 * max(gram[a, a] for a in range(n))
        for a in range(n):
            gram[a, a] += lam
        step = mp.lu_solve(gram, rhs)
        v = [v[j] + step[j] for j in range(n)]
    return unpack(v, structure)


def verify_points(pts, degree):
    worst = mp.mpf(0)
    for d in range(degree + 1):
        for p in range(d + 1):
            q = d - p
            s = sum(w * x ** p * y ** q for x, y, w in pts)
            worst = max(worst, abs(s / 2 - simplex_moment(p, q)))
    wmin = min(w for _, _, w in pts)
    inside = all(x >= 0 and y >= 0 and x + y <= 1 for x, y, _ in pts)
    return worst, wmin, inside


def verify(orbits, degree):
    return verify_points(rule_points(orbits), degree)


# candidate orbit parameters (to be polished and verified)
TRI_RULES = {
    1: [(1, mp.mpf(1))],
    2: [(3, mp.mpf(1) / 6, mp.mpf(1) / 3)],
    4: [(3, mp.mpf("0.445948490915965"), mp.mpf("0.223381589678011")),
        (3, mp.mpf("0.091576213509771"), mp.mpf("0.109951743655322"))],
    5: [(1, mp.mpf(9) / 40),
        (3, mp.mpf("0.470142064105115"), mp.mpf("0.132394152788506")),
        (3, mp.mpf("0.101286507323456"), mp.mpf("0.125939180544827"))],
    6: [(3, mp.mpf("0.249286745170910"), mp.mpf("0.116786275726379")),
        (3, mp.mpf("0.063089014491502"), mp.mpf("0.050844906370207")),
        (6, mp.mpf("0.310352451033785"), mp.mpf("0.636502499121399"),
         mp.mpf("0.082851075618374"))],
    8: [(1, mp.mpf("0.144315607677787")),
        (3, mp.mpf("0.459292588292723"), mp.mpf("0.095091634413246")),
        (3, mp.mpf("0.170569307751760"), mp.mpf("0.103217370534718")),
        (3, mp.mpf("0.050547228317031"), mp.mpf("0.032458497623198")),
        (6, mp.mpf("0.263112829634638"), mp.mpf("0.728492392955404"),
         mp.mpf("0.027230314174435"))],
    # the two 3-orbits are tabulated by their distinct coordinate; the
    # repeated one is (1 - distinct)/2
    10: [(1, mp.mpf("0.090817990382754")),
         (3, (1 - mp.mpf("0.028844733232685")) / 2, mp.mpf("0.036725957756467")),
         (3, (1 - mp.mpf("0.781036849029926")) / 2, mp.mpf("0.045321059435528")),
         (6, mp.mpf("0.141707219414880"), mp.mpf("0.307939838764121"),
          mp.mpf("0.072757916845420")),
         (6, mp.mpf("0.025003534762686"), mp.mpf("0.246672560639903"),
          mp.mpf("0.028327242531057")),
         (6, mp.mpf("0.009540815400299"), mp.mpf("0.066803251012200"),
          mp.mpf("0.009421666963733"))],
}


def fmt(x):
    return mp.nstr(x, 21, strip_zeros=False)


def main():
    print("// ---- Gauss-Lobatto rules (weights sum to 2) ----")
    for n in range(2, 11):
        nodes, weights = lobatto_rule(n)
        s = sum(weights)
        assert abs(s - 2) < mp.mpf(10) ** -30
        print(f"// N = {n}")
        print("{" + ", ".join(fmt(x) for x in nodes) + "},")
        print("{" + ", ".join(fmt(w) for w in weights) + "},")

    print()
    print("// ---- symmetric triangle rules (weights sum to 1) ----")
    for deg in sorted(TRI_RULES):
        orbits = TRI_RULES[deg]
        if deg > 2:
            orbits = polish(orbits, deg)
        worst, wmin, inside = verify(orbits, deg)
        npts = sum(o[0] for o in orbits)
        print(f"// degree {deg}: {npts} points, residual {mp.nstr(worst, 3)}, "
              f"min weight {mp.nstr(wmin, 6)}, inside={inside}")
        assert worst < mp.mpf(10) ** -30, (deg, worst)
        assert wmin > 0 and inside, deg
        for orb in orbits:
            if orb[0] == 1:
                print(f"{{1, 0.0, 0.0, {fmt(orb[-1])}}},   // degree {deg}")
            elif orb[0] == 3:
                print(f"{{3, {fmt(orb[1])}, 0.0, {fmt(orb[2])}}},   // degree {deg}")
            else:
                print(f"{{6, {fmt(orb[1])}, {fmt(orb[2])}, {fmt(orb[3])}}},   // degree {deg}")

    print()
    print("// ---- reference values for tests ----")
    for x in ["0.25", "0.5", "1", "2", "5", "10", "14", "15", "16", "20", "30", "50", "100"]:
        xv = mp.mpf(x)
        print(f"// I1({x}) = {mp.nstr(mp.besseli(1, xv), 20)}   "
              f"e^-x I1 = {mp.nstr(mp.exp(-xv) * mp.besseli(1, xv), 20)}")


if __name__ == "__main__":
    main()
