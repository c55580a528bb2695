#!/usr/bin/env python3
"""Regenerates include/zmoment/detail/constants_data.hpp.

Stieltjes constants come from mpmath.stieltjes; the Riemann-Siegel correction
polynomials C0..C3 are obtained from the Taylor series of
Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) about p = 1/2, computed by a
Cauchy integral on a circle of radius 1 at high precision.
"""
import sys
import mpmath as mp

mp.mp.dps = 60
PI = mp.pi


def psi(p):
    return mp.cos(2 * PI * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * PI * p)


def psi_taylor(degree, points=512, radius=1):
    vals = [psi(mp.mpf(1) / 2 + radius * mp.expjpi(2 * mp.mpf(j) / points))
            for j in range(points)]
    coeffs = []
    for k in range(degree + 1):
        acc = mp.fsum(vals[j] * mp.expjpi(-2 * mp.mpf(j * k) / points)
                      for j in range(points))
        coeffs.append(mp.re(acc) / points / radius ** k)
    return coeffs


def derivative(c, order):
    out = list(c)
    for _ in range(order):
        out = [out[k + 1] * (k + 1) for k in range(len(out) - 1)]
    return out


def combine(terms, length):
    out = [mp.mpf(0)] * length
    for weight, series in terms:
        for k in range(min(length, len(series))):
            out[k] += weight * series[k]
    return out


def trim(c, tol=mp.mpf('1e-22')):
    last = 0
    for k, v in enumerate(c):
        if abs(v) * mp.mpf(0.5) ** k > tol:
            last = k
    return c[:last + 1]


def main():
    base = psi_taylor(110)
    L = 90
    d = lambda n: derivative(base, n)
    c0 = combine([(1, d(0))], L)
    c1 = combine([(-1 / (96 * PI ** 2), d(3))], L)
    c2 = combine([(1 / (18432 * PI ** 4), d(6)), (1 / (64 * PI ** 2), d(2))], L)
    c3 = combine([(-1 / (64 * PI ** 2), d(1)), (-1 / (3840 * PI ** 4), d(5)),
                  (-1 / (5308416 * PI ** 6), d(9))], L)
    stieltjes = [mp.stieltjes(k) for k in range(41)]

    def arr(name, values):
        body = ",\n".join("    " + mp.nstr(v, 30, min_fixed=-5, max_fixed=5)
                          for v in values)
        return f"inline constexpr double {name}[] = {{\n{body}}};\n"

    out = sys.stdout
    out.write("// Generated by tools/gen_constants.py. Do not edit.\n")
    out.write("#pragma once\n\nnamespace zmoment::detail {\n\n")
    out.write("// Stieltjes constants gamma_k, k = 0..40.\n")
    out.write(arr("kStieltjes", stieltjes))
    out.write("\n// Riemann-Siegel corrections C_k(p) as polynomials in (p - 1/2).\n")
    for name, c in (("kRsC0", c0), ("kRsC1", c1), ("kRsC2", c2), ("kRsC3", c3)):
        out.write(arr(name, trim(c)))
    out.write("\n}  // namespace zmoment::detail\n")


if __name__ == "__main__":
    main()
