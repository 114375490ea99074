#!/usr/bin/env python3
"""Brute-force Gaussian RBF evaluations for the network unit tests.

Prints:
  * a single activation for x=(0,0) against center (-0.5,-5) with width 2,
  * the all-ones-weights network output at x=(0,0) for the axis-1 slice
    (centers (-1,-10),(-0.5,-5),(0,0),(0.5,5),(1,10), widths all 2).
"""
import math

AXIS1_CENTERS = [(-1.0, -10.0), (-0.5, -5.0), (0.0, 0.0), (0.5, 5.0), (1.0, 10.0)]
AXIS1_WIDTH = 2.0


def activation(x, c, b):
    d2 = (x[0] - c[0]) ** 2 + (x[1] - c[1]) ** 2
    return math.exp(-d2 / (2.0 * b * b))


def main():
    single = activation((0.0, 0.0), (-0.5, -5.0), 2.0)
    print(f"activation_origin_c2 = {single:.17e}")

    total = sum(activation((0.0, 0.0), c, AXIS1_WIDTH) for c in AXIS1_CENTERS)
    print(f"axis1_ones_sum = {total:.17e}")


if __name__ == "__main__":
    main()
