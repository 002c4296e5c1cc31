#!/usr/bin/env python3
"""Generate src/constants_table.inc.

Emits exact rational values, rounded to double, for
  * a_n with ln I0(s) = sum_n a_n s^n / n!, n = 0..32
  * Bernoulli numbers B_0..B_64
"""
from fractions import Fraction
from math import factorial
import pathlib

N_MAX = 32
B_MAX = 64


def log_i0_coefficients(n_max):
    # I0(s) = sum_k f_k x^k with x = s^2, f_k = 1 / (4^k (k!)^2)
    kmax = n_max // 2
    f = [Fraction(1, 4**k * factorial(k) ** 2) for k in range(kmax + 1)]
    g = [Fraction(0)] * (kmax + 1)
    # (ln f)' f = f'  =>  k g_k = k f_k - sum_{j=1}^{k-1} j g_j f_{k-j}
    for k in range(1, kmax + 1):
        acc = k * f[k]
        for j in range(1, k):
            acc -= j * g[j] * f[k - j]
        g[k] = acc / k
    a = [Fraction(0)] * (n_max + 1)
    for k in range(1, kmax + 1):
        a[2 * k] = g[k] * factorial(2 * k)
    return a


def bernoulli(n_max):
    b = [Fraction(0)] * (n_max + 1)
    b[0] = Fraction(1)
    for m in range(1, n_max + 1):
        b[m] = -sum(Fraction(factorial(m + 1), factorial(k) * factorial(m + 1 - k)) * b[k]
                    for k in range(m)) / (m + 1)
    return b


def emit(name, values):
    lines = [f"inline constexpr double {name}[{len(values)}] = {{"]
    for i, v in enumerate(values):
        lines.append(f"    {float(v)!r},  // [{i}] = {v.numerator}/{v.denominator}")
    lines.append("};")
    return "\n".join(lines)


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "src" / "constants_table.inc"
    text = [
        "// Generated by tools/gen_constants.py. Do not edit.",
        "#pragma once",
        "",
        "namespace qstats::detail {",
        "",
        emit("kLogI0Coefficients", log_i0_coefficients(N_MAX)),
        "",
        emit("kBernoulli", bernoulli(B_MAX)),
        "",
        "}  // namespace qstats::detail",
        "",
    ]
    out.write_text("\n".join(text))


if __name__ == "__main__":
    main()
