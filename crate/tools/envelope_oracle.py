#!/usr/bin/env python3
"""Synthetic-envelope generator and reference fit.

Generates two synthetic ||z_R(t)|| traces and fits the exponential envelope
  ||z(t)|| ~= alpha * ||z(0)|| * exp(-beta t) + eps
with the same estimator contract as the simulator analysis:

  * eps_hat  = max ||z|| over the final tail fraction,
  * fit window = contiguous prefix of samples with
        ||z|| >= max(1.5 eps_hat, min(50 eps_hat, 0.5 ||z(0)||)),
  * least squares on log(||z|| - 0.99 eps_hat) against t.

Prints beta_hat / eps_hat / alpha_hat / residual for both cases so the Rust
fit can be cross-checked against an independent implementation.
"""
import math

RATE_HZ = 400.0


def fit(zs, dt, tail_fraction):
    n = len(zs)
    tail_start = n - max(1, int(n * tail_fraction))
    eps = max(zs[tail_start:])
    z0 = zs[0]
    if z0 <= eps:
        raise ValueError("no transient")
    cutoff = max(1.5 * eps, min(50.0 * eps, 0.5 * z0))
    floor = 0.99 * eps
    ts, ys = [], []
    for i, z in enumerate(zs):
        if z < cutoff or z - floor <= 0.0:
            break
        ts.append(i * dt)
        ys.append(math.log(z - floor))
    if len(ts) < 8:
        raise ValueError("window too short")
    m = len(ts)
    tbar = sum(ts) / m
    ybar = sum(ys) / m
    sxx = sum((t - tbar) ** 2 for t in ts)
    sxy = sum((t - tbar) * (y - ybar) for t, y in zip(ts, ys))
    slope = sxy / sxx
    intercept = ybar - slope * tbar
    res = math.sqrt(
        sum((y - (intercept + slope * t)) ** 2 for t, y in zip(ts, ys)) / m
    )
    beta = -slope
    alpha = math.exp(intercept) / z0
    return beta, eps, alpha, res


def emit(prefix, zs, dt, tail_fraction=0.25):
    beta, eps, alpha, res = fit(zs, dt, tail_fraction)
    print(f"{prefix}_beta = {beta:.17e}")
    print(f"{prefix}_eps = {eps:.17e}")
    print(f"{prefix}_alpha = {alpha:.17e}")
    print(f"{prefix}_residual = {res:.17e}")


def main():
    dt = 1.0 / RATE_HZ

    # decaying transient onto a 0.01 floor, 5 s
    n = int(5.0 * RATE_HZ)
    zs = [2.0 * math.exp(-3.0 * i * dt) + 0.01 for i in range(n)]
    emit("floor", zs, dt)

    # pure exponential decay, no floor, 10 s
    n = int(10.0 * RATE_HZ)
    zs = [math.exp(-1.0 * i * dt) for i in range(n)]
    emit("pure", zs, dt)


if __name__ == "__main__":
    main()
