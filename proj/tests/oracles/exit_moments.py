"""Independent exact oracles for the frozen values in the unit tests.

Exit-time moments come from the Laplace transform of tau: with
u(x) = E^x[exp(-theta tau)], first-step analysis gives

    u = diag(exp(-theta / w_V)) (T u + e),   e = one-step exit probability,

and E^x[tau^k] = (-1)^k d^k u / d theta^k at theta = 0. The Poisson
spectrum is sum W_V * (k! L^{-k} 1) in exact rationals. Nothing here shares
code or recursions with the C++ library.

Run: python3 tests/oracles/exit_moments.py
"""

import sympy as sp


def domain_from_path(conductances, vertex_weights, domain):
    """Path 0..n-1 with symmetric conductances c[i] on edge (i, i+1),
    W_E(x, y) = c / W_V(x). Returns interior list and exact matrices."""
    n = len(vertex_weights)
    WE = {}
    for i, c in enumerate(conductances):
        WE[(i, i + 1)] = sp.Rational(c) / vertex_weights[i]
        WE[(i + 1, i)] = sp.Rational(c) / vertex_weights[i + 1]
    nbrs = {x: [y for y in range(n) if (x, y) in WE] for x in range(n)}
    interior = [x for x in domain if all(y in domain for y in nbrs[x])]
    w = {x: sum(WE[(x, y)] for y in nbrs[x]) for x in range(n)}
    m = len(interior)
    T = sp.zeros(m, m)
    e = sp.zeros(m, 1)
    for i, x in enumerate(interior):
        for y in nbrs[x]:
            p = WE[(x, y)] / w[x]
            if y in interior:
                T[i, interior.index(y)] = p
            else:
                e[i] += p
    WV = sp.Matrix([sp.Rational(vertex_weights[x]) for x in interior])
    aux = sp.Matrix([w[x] for x in interior])
    return interior, T, e, WV, aux


def exit_moments(T, e, aux, kmax):
    theta = sp.symbols("theta")
    m = T.shape[0]
    D = sp.diag(*[sp.exp(-theta / aux[i]) for i in range(m)])
    u = (sp.eye(m) - D * T).LUsolve(D * e)
    out = []
    for k in range(kmax + 1):
        out.append([sp.nsimplify(sp.simplify((-1) ** k * sp.diff(u[i], theta, k).subs(theta, 0)))
                    for i in range(m)])
    return out


def report(name, conductances, vertex_weights, domain, kmax):
    interior, T, e, WV, aux = domain_from_path(conductances, vertex_weights, domain)
    f = exit_moments(T, e, aux, kmax)
    L = sp.diag(*aux) * (sp.eye(T.shape[0]) - T)
    A1 = [sum(WV[i] * f[k][i] for i in range(len(interior))) for k in range(kmax + 1)]
    A2 = []
    g = sp.ones(len(interior), 1)
    for k in range(kmax + 1):
        if k > 0:
            g = k * L.LUsolve(g)
        A2.append(sp.nsimplify((WV.T * g)[0]))
    print(name, "interior", interior)
    print("  f_k(first interior) =", [f[k][0] for k in range(kmax + 1)])
    print("  A1 =", A1)
    print("  A2 =", A2)


if __name__ == "__main__":
    # fixture A: unit path 0..4, domain {1,2,3}
    report("A", [1] * 4, [1] * 5, [1, 2, 3], 3)
    # fixture B: unit path 0..5, domain {1,2,3,4}
    report("B", [1] * 5, [1] * 6, [1, 2, 3, 4], 3)
    # unit path 0..7, domain {1..6}
    report("P8", [1] * 7, [1] * 8, list(range(1, 7)), 5)
    # non-regular weighted path 0..6, domain {1..5}
    report("W", [1, 2, 1, 3, 1, 2], [1, 2, 1, 3, 1, 2, 1], [1, 2, 3, 4, 5], 4)
    # Stirling spot values
    from sympy.functions.combinatorial.numbers import stirling
    print("S(20,10) =", stirling(20, 10, kind=2))
    print("s(20,10) =", stirling(20, 10, kind=1, signed=True))
    print("s(20,1) =", stirling(20, 1, kind=1, signed=True))
    print("S(8,3) =", stirling(8, 3, kind=2), " s(8,3) =", stirling(8, 3, kind=1, signed=True))
