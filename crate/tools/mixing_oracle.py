#!/usr/bin/env python3
"""Standalone X-quad mixing oracle.

Builds the nominal 4x4 mixing matrix B mapping rotor thrusts to the wrench
(f, Mx, My, Mz), inverts it by plain Gaussian elimination (no closed form),
pushes the desired wrench through perturbed coefficients, and prints the
realized wrench deviation Delta_M. Freezes the expected values for the
allocation unit tests.

Geometry (matches the simulator defaults):
  arm length L = 0.2 m, rotor offset d = L/sqrt(2),
  rotors: 1 front-right (+x,+y), 2 back-left (-x,-y),
          3 front-left (+x,-y), 4 back-right (-x,+y),
  rotors 1,2 produce +z reaction torque, rotors 3,4 produce -z,
  torque/thrust ratio c = 0.016, nominal thrust coefficient 1.0.
"""
import math

ARM = 0.2
D = ARM / math.sqrt(2.0)
C = 0.016


def mixing_matrix():
    # rows: f, Mx, My, Mz; columns: rotors 1..4
    return [
        [1.0, 1.0, 1.0, 1.0],
        [-D, D, D, -D],
        [D, -D, D, -D],
        [C, C, -C, -C],
    ]


def solve(a, b):
    """Gaussian elimination with partial pivoting, Ax = b."""
    n = len(b)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        m[col], m[piv] = m[piv], m[col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c in range(col, n + 1):
                m[r][c] -= f * m[col][c]
    x = [0.0] * n
    for r in range(n - 1, -1, -1):
        x[r] = (m[r][n] - sum(m[r][c] * x[c] for c in range(r + 1, n))) / m[r][r]
    return x


def realized(fd, md, thrust_pert, torque_pert, clamp=8.0):
    b = mixing_matrix()
    t_des = solve(b, [fd, md[0], md[1], md[2]])
    t_cl = [min(max(t, 0.0), clamp) for t in t_des]
    t_real = [(1.0 + thrust_pert[i]) * t_cl[i] for i in range(4)]
    c_real = [C * (1.0 + torque_pert[i]) for i in range(4)]
    f = sum(t_real)
    mx = D * (-t_real[0] + t_real[1] + t_real[2] - t_real[3])
    my = D * (t_real[0] - t_real[1] + t_real[2] - t_real[3])
    mz = (
        c_real[0] * t_real[0]
        + c_real[1] * t_real[1]
        - c_real[2] * t_real[2]
        - c_real[3] * t_real[3]
    )
    return f, (mx - md[0], my - md[1], mz - md[2])


def main():
    # all four thrust coefficients +10%, pure thrust demand
    f, dm = realized(16.0, (0.0, 0.0, 0.0), [0.1] * 4, [0.0] * 4)
    print(f"sym_f = {f:.17e}")
    for k, v in zip("xyz", dm):
        print(f"sym_dm_{k} = {v:.17e}")

    # rotor 1 thrust coefficient +10% only, roll demand
    f, dm = realized(16.0, (0.1, 0.0, 0.0), [0.1, 0.0, 0.0, 0.0], [0.0] * 4)
    print(f"r1_f = {f:.17e}")
    for k, v in zip("xyz", dm):
        print(f"r1_dm_{k} = {v:.17e}")


if __name__ == "__main__":
    main()
