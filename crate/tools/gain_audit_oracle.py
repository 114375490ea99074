#!/usr/bin/env python3
"""Gain-audit arithmetic oracle.

For k_R = 100, k_Omega = 80, c_R = 0.6, psi_R = 1 computes the admissible
c_R bound and the eigenvalues of the three 2x2 audit matrices with the plain
quadratic formula. Freezes the expected values for the stability unit tests.
"""
import math

K_R = 100.0
K_OMEGA = 80.0
C_R = 0.6
PSI = 1.0


def eig2(a, b, d):
    """Eigenvalues of the symmetric matrix [[a, b], [b, d]], ascending."""
    mean = 0.5 * (a + d)
    rad = math.sqrt((0.5 * (a - d)) ** 2 + b * b)
    return mean - rad, mean + rad


def main():
    bound = min(
        K_R * K_OMEGA / (K_OMEGA**2 + K_R),
        math.sqrt(K_R),
        math.sqrt(2.0 * K_R / (2.0 - PSI)),
        K_OMEGA,
    )
    print(f"c_r_bound = {bound:.17e}")

    lo, hi = eig2(K_R / 2.0, -C_R / 2.0, 0.5)
    print(f"m_r1_min = {lo:.17e}")
    print(f"m_r1_max = {hi:.17e}")

    lo, hi = eig2(K_R / (2.0 - PSI), C_R / 2.0, 0.5)
    print(f"m_r2_min = {lo:.17e}")
    print(f"m_r2_max = {hi:.17e}")

    lo, hi = eig2(K_R * C_R / 2.0, -K_OMEGA * C_R / 2.0, (K_OMEGA - C_R) / 2.0)
    print(f"big_m_min = {lo:.17e}")
    print(f"big_m_max = {hi:.17e}")
    print(f"big_m_det = {(K_R * C_R / 2.0) * ((K_OMEGA - C_R) / 2.0) - (K_OMEGA * C_R / 2.0) ** 2:.17e}")


if __name__ == "__main__":
    main()
