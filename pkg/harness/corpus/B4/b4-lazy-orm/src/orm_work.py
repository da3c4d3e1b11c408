"""Deterministic CPU work for this scenario (calibrated in iterations)."""


def spin(n):
    acc = 1469598103934665603
    for i in range(n):
        acc = (acc ^ i) * 1099511628211 % (1 << 64)
    return acc
