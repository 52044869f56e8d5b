"""Brute-force oracle for the Max-ARMA weight sequence and extremal measures.

Enumerates every (j, a_1..a_p) with sum(i*a_i) + j == tau directly (no DP),
so it is independent of the C++ recursion. Used to freeze expected values in
the unit tests.
"""
import itertools
from fractions import Fraction


def gamma_tau(alpha, beta, tau):
    p, q = len(alpha), len(beta) - 1
    best = 0.0
    ranges = [range(0, tau // (i + 1) + 1) if alpha[i] > 0 else range(0, 1) for i in range(p)]
    for a in itertools.product(*ranges):
        s = sum((i + 1) * ai for i, ai in enumerate(a))
        j = tau - s
        if j < 0 or j > q:
            continue
        prod = beta[j]
        for i, ai in enumerate(a):
            if ai:
                prod *= alpha[i] ** ai
        best = max(best, prod)
    return best


def measures(alpha, beta, N=100, kmax=3, tail=None):
    tail = tail or N + kmax
    g = [gamma_tau(alpha, beta, t) for t in range(tail + 1)]
    gamma = 1.0 / sum(g[: N + 1])
    theta = gamma * max(beta)
    chi = [gamma * sum(min(g[d], g[d + k]) for d in range(N + 1)) for k in range(1, kmax + 1)]
    return gamma, theta, chi


if __name__ == "__main__":
    series = {
        1: ([0.85, 0.77, 0.7], [1.0]),
        2: ([0.3, 0.0, 0.1], [1.0]),
        3: ([0.85, 0.77, 0.7], [1.0, 2.0, 1.0, 0.9]),
        4: ([0.85, 0.77, 0.7], [1.0, 50.0, 10.0, 5.0]),
    }
    for k, (a, b) in series.items():
        g, th, chi = measures(a, b, N=60 if k != 2 else 100)
        print(k, repr(g), repr(th), [repr(c) for c in chi])
