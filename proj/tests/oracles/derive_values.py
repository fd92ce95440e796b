"""Independent reference values frozen into the C++ unit tests.

Everything here is computed without the library: plain itertools
enumeration with exact fractions, mpmath fixed-point iteration and
quadrature at 30 digits, and numpy linear algebra. Run with
`python3 tests/oracles/derive_values.py` to regenerate.
"""

import itertools
from fractions import Fraction

import mpmath as mp
import numpy as np

mp.mp.dps = 30


def wigner_even_count(n, k):
    hits = 0
    for t in itertools.product(range(n), repeat=k):
        mult = {}
        for i in range(k):
            e = tuple(sorted((t[i], t[(i + 1) % k])))
            mult[e] = mult.get(e, 0) + 1
        if all(m % 2 == 0 for m in mult.values()):
            hits += 1
    return hits


def mp_even_count(p, n, k):
    hits = 0
    for s in itertools.product(range(p), repeat=k):
        for t in itertools.product(range(n), repeat=k):
            mult = {}
            for i in range(k):
                for e in ((s[i], t[i]), (s[(i + 1) % k], t[i])):
                    mult[e] = mult.get(e, 0) + 1
            if all(m % 2 == 0 for m in mult.values()):
                hits += 1
    return hits


def section(title):
    print()
    print("==", title)


section("exact expected moments, Wigner k=4, n=4..12")
for n in range(4, 13):
    v = Fraction(wigner_even_count(n, 4), n ** 3)
    print(n, v, float(abs(v - 2) * n))

section("exact expected moments, Wigner k=6, n=2..5")
for n in range(2, 6):
    print(n, Fraction(wigner_even_count(n, 6), n ** 4))

section("exact expected moments, MP")
for (p, n, k) in [(1, 1, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3)]:
    print(p, n, k, Fraction(mp_even_count(p, n, k), p * n ** k))

section("Stieltjes fixed points")


def semicircle_fp(z):
    m = mp.mpc(0, 1)
    for _ in range(20000):
        m = 0.5 * m + 0.5 / (-z - m)
    return m


def mp_fp(y, z):
    m = mp.mpc(0, 1)
    for _ in range(20000):
        m = 0.5 * m + 0.5 / (1 - z - y - y * z * m)
    return m


for z in [mp.mpc(0, 1), mp.mpc(0.5, 0.1), mp.mpc(-1.5, 2)]:
    print("sc", z, semicircle_fp(z))
for y, z in [(1, mp.mpc(0, 1)), (0.25, mp.mpc(1, 0.5)), (4, mp.mpc(2, 0.3))]:
    print("mp", y, z, mp_fp(mp.mpf(y), z))

section("sqrt(-1-4i) with Im >= 0")
s = mp.sqrt(mp.mpc(-1, -4))
if s.imag < 0:
    s = -s
print(s)

section("CDF values")
print("sc(1)  ", mp.quad(lambda x: mp.sqrt(4 - x * x) / (2 * mp.pi), [-2, 1]))
print("sc(-0.5)", mp.quad(lambda x: mp.sqrt(4 - x * x) / (2 * mp.pi), [-2, -0.5]))
for y, x in [(0.5, 1.0), (2.0, 1.0), (0.25, 0.6)]:
    y = mp.mpf(y)
    lo, hi = (1 - mp.sqrt(y)) ** 2, (1 + mp.sqrt(y)) ** 2
    f = lambda t: mp.sqrt((hi - t) * (t - lo)) / (2 * mp.pi * t * y)
    atom = 1 - 1 / y if y > 1 else 0
    print("mp", y, x, atom + mp.quad(f, [lo, x]))

section("2x2 Omega, Wigner, W = [[0.3, -0.7], [-0.7, 1.1]], z = 0.2 + 0.9i")
W = np.array([[0.3, -0.7], [-0.7, 1.1]])
z = 0.2 + 0.9j
n = 2
s_n = np.trace(np.linalg.inv(W - z * np.eye(n))) / n
for k in range(n):
    idx = [i for i in range(n) if i != k]
    g = np.linalg.inv(W[np.ix_(idx, idx)] - z * np.eye(n - 1))
    x = np.sqrt(n) * W[idx, k]
    omega = W[k, k] + s_n - x @ g @ x / n
    print(k, repr(omega))
print("s_n", repr(s_n))

section("MP Omega, X 2x3 explicit, z = -0.4 + 0.7i")
X = np.array([[1.0, -1.0, 0.5], [0.25, 2.0, -1.5]])
z = -0.4 + 0.7j
p, n = X.shape
V = X @ X.T / n
s_n = np.trace(np.linalg.inv(V - z * np.eye(p))) / p
y = p / n
for k in range(p):
    alpha = X[k]
    Xk = np.delete(X, k, axis=0)
    G = np.linalg.inv(Xk @ Xk.T / n - z * np.eye(p - 1))
    omega = alpha @ alpha / n - 1 - alpha @ Xk.T @ G @ Xk @ alpha / n ** 2 + y + y * z * s_n
    print(k, repr(omega))
print("s_n", repr(s_n))

section("d_M: delta_0 vs delta_3, single item x^2 phi_4^5")
g3 = 9 * 1.0
print(Fraction(1, 2) * Fraction(9, 10))
section("d_M: delta_0 vs delta_3, single item x^2 phi_2^4")
g3 = Fraction(9) * Fraction(4 - 3, 4 - 2)
print(Fraction(1, 2) * g3 / (1 + g3))
