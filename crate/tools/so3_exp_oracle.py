#!/usr/bin/env python3
"""Brute-force rotation exponential via truncated matrix power series.

Sums sum_{k<=20} [v]_x^k / k! for v = (0.3, -0.2, 0.1) and prints the nine
entries row-major. Used to freeze the expected matrix in the so3 unit tests.
"""
import math


def hat(v):
    x, y, z = v
    return [[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def matadd(a, b):
    return [[a[i][j] + b[i][j] for j in range(3)] for i in range(3)]


def matscale(a, s):
    return [[a[i][j] * s for j in range(3)] for i in range(3)]


def exp_series(v, terms=20):
    acc = [[1.0 if i == j else 0.0 for j in range(3)] for i in range(3)]
    power = [[1.0 if i == j else 0.0 for j in range(3)] for i in range(3)]
    h = hat(v)
    for k in range(1, terms + 1):
        power = matmul(power, h)
        acc = matadd(acc, matscale(power, 1.0 / math.factorial(k)))
    return acc


def main():
    v = (0.3, -0.2, 0.1)
    m = exp_series(v)
    for i in range(3):
        for j in range(3):
            print(f"exp_m{i}{j} = {m[i][j]:.17e}")


if __name__ == "__main__":
    main()
