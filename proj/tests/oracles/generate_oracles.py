#!/usr/bin/env python3
"""High-precision reference values frozen into the C++ unit tests.

Run once with mpmath; the printed literals are pasted into tests/*.cpp.
Everything here is independent of the C++ code paths: Airy/Scorer values come
from mpmath's own implementations, G(x) from a 30-digit quadrature of the
vertical-line contour integral, and the Tracy-Widom values from an mpmath
Gauss-Legendre discretisation of the Fredholm determinants.
"""
import mpmath as mp

mp.mp.dps = 30


def show(name, v):
    if isinstance(v, mp.mpc):
        print(f"{name}: ({mp.nstr(v.real, 20)}, {mp.nstr(v.imag, 20)})")
    else:
        print(f"{name}: {mp.nstr(v, 20)}")


def airy_points():
    pts = [0, 1 + 2j, 10, -5 + 3j, 3 - 4j, 5 * mp.exp(1j * mp.pi / 4), -8, 12j,
           -2.5, 4, 7 + 0.5j, -6 - 6j, 1.7 + 1.1j, 20 * mp.exp(0.9j * mp.pi)]
    for z in pts:
        z = mp.mpc(z)
        show(f"Ai({z})", mp.airyai(z))
        show(f"Ai'({z})", mp.airyai(z, derivative=1))


def hi_points():
    pts = [0, 2 + 1j, 30, 5 + 7j, -4, -10 + 2j, 50, 0.5, 3.5 + 0.2j, -1 + 20j,
           2 + 40j, 8 + 3j, -30 - 5j]
    for z in pts:
        z = mp.mpc(z)
        show(f"Hi({z})", mp.scorerhi(z))


def e1_points():
    for x in [1, 0.1, 0.5, 2, 5, 20, 1e-4]:
        show(f"E1({x})", mp.e1(x))


def g_contour(x, deriv=False):
    a = mp.cbrt(2) * x
    off = a / 3

    def f(b):
        z = off + 1j * b
        w = z + a
        r = mp.scorerhi(z) / mp.airyai(z)
        if deriv:
            r *= mp.cbrt(2) * mp.airyai(w, derivative=1)
            return -r.real
        return (r * mp.airyai(w)).real

    pts = [0, a / 2, a, 2 * a, 4 * a, 8 * a, 16 * a, 32 * a, 64 * a, 128 * a,
           256 * a, 512 * a, 1024 * a, 4096 * a]
    # The integrand decays like exp(-a sqrt(b/2)); small x needs a long tail.
    pts += [4096 * a * 2**k for k in range(1, 9)]
    return mp.quad(f, pts)


def groeneboom_points():
    for x in [0.5, 1, 1.5, 2, 5, 10]:
        show(f"G({x})", g_contour(mp.mpf(x)))
    for x in [1, 5]:
        show(f"-G'({x})", g_contour(mp.mpf(x), deriv=True))


def gl(n, a, b):
    xs, ws = [], []
    for x, w in zip(*mp.gauss_quadrature(n, "legendre")):
        xs.append((b - a) / 2 * x + (a + b) / 2)
        ws.append((b - a) / 2 * w)
    return xs, ws


def tw_points():
    n = 60
    for s in [-3, -2, 0, 2]:
        xs, ws = gl(n, mp.mpf(s), mp.mpf(s) + 16)

        def k(x, y):
            if x == y:
                return mp.airyai(x, 1) ** 2 - x * mp.airyai(x) ** 2
            return (mp.airyai(x) * mp.airyai(y, 1) - mp.airyai(x, 1) * mp.airyai(y)) / (x - y)

        m = mp.matrix(n, n)
        for i in range(n):
            for j in range(n):
                m[i, j] = (1 if i == j else 0) - mp.sqrt(ws[i] * ws[j]) * k(xs[i], xs[j])
        show(f"F_GUE({s})", mp.det(m))
    for s in [-3, -1, 0, 1]:
        xs, ws = gl(n, mp.mpf(0), mp.mpf(32))
        m = mp.matrix(n, n)
        for i in range(n):
            for j in range(n):
                m[i, j] = (1 if i == j else 0) - mp.sqrt(ws[i] * ws[j]) * mp.airyai((xs[i] + xs[j]) / 2 + s) / 2
        show(f"F_GOE({s})", mp.det(m))


if __name__ == "__main__":
    airy_points()
    hi_points()
    e1_points()
    tw_points()
    groeneboom_points()
