#!/usr/bin/env python3
"""Regenerate src/rs_coeffs.inc.

Taylor tables (in u = p - 1/2, |u| <= 1/2) for the Riemann-Siegel remainder:
C0 is the shifted-cosine ratio cos(2pi(p^2 - p - 1/16)) / cos(2pi p) expanded
about p = 1/2, and C1..C4 are the standard derivative combinations giving the
next four correction orders. Coefficients are computed in 60-digit arithmetic
via a power-series division and trimmed where a term can no longer move the
sum by 1e-24 anywhere on |u| <= 1/2.

Usage: python3 tools/gen_rs_coeffs.py [output-path]
Requires mpmath.
"""

import sys

import mpmath as mp

mp.mp.dps = 60
PI = mp.pi
ORDER = 72
TRIM = mp.mpf("1e-24")


def build_tables():
    # Numerator cos(2pi(u^2/ something)): expand cos(5pi/8 + ...) pieces on the
    # quarter-split parities; denominator is cos(2pi p) about p = 1/2.
    cc = mp.cos(5 * PI / 8)
    sc = mp.sin(5 * PI / 8)
    num = [mp.mpf(0)] * (ORDER + 1)
    j = 0
    while 4 * j <= ORDER:
        num[4 * j] += cc * (-1) ** j * (2 * PI) ** (2 * j) / mp.factorial(2 * j)
        j += 1
    j = 0
    while 4 * j + 2 <= ORDER:
        num[4 * j + 2] += sc * (-1) ** j * (2 * PI) ** (2 * j + 1) / mp.factorial(2 * j + 1)
        j += 1
    num = [-x for x in num]
    den = [mp.mpf(0)] * (ORDER + 1)
    j = 0
    while 2 * j <= ORDER:
        den[2 * j] = (-1) ** j * (2 * PI) ** (2 * j) / mp.factorial(2 * j)
        j += 1
    # Power-series division num / den.
    q = [mp.mpf(0)] * (ORDER + 1)
    for n in range(ORDER + 1):
        s = num[n]
        for k in range(1, n + 1):
            s -= den[k] * q[n - k]
        q[n] = s
    psi = q

    def deriv(series, times):
        for _ in range(times):
            series = [series[j + 1] * (j + 1) for j in range(len(series) - 1)] + [mp.mpf(0)]
        return series

    def combine(terms):
        out = [mp.mpf(0)] * (ORDER + 1)
        for coef, series in terms:
            for j in range(ORDER + 1):
                out[j] += coef * series[j]
        return out

    c0 = psi
    c1 = combine([(-1 / (96 * PI**2), deriv(psi, 3))])
    c2 = combine([(1 / (64 * PI**2), deriv(psi, 2)),
                  (1 / (18432 * PI**4), deriv(psi, 6))])
    c3 = combine([(-1 / (64 * PI**2), deriv(psi, 1)),
                  (-1 / (3840 * PI**4), deriv(psi, 5)),
                  (-1 / (5308416 * PI**6), deriv(psi, 9))])
    c4 = combine([(1 / (128 * PI**2), psi),
                  (mp.mpf(19) / (24576 * PI**4), deriv(psi, 4)),
                  (mp.mpf(11) / (5898240 * PI**6), deriv(psi, 8)),
                  (1 / (2038431744 * PI**8), deriv(psi, 12))])
    return [c0, c1, c2, c3, c4]


def trim_order(series):
    cut = ORDER
    while cut > 0 and abs(series[cut]) * mp.mpf(0.5) ** cut < TRIM:
        cut -= 1
    return cut


def emit(tables, path):
    lines = [
        "// Taylor coefficients (in u = p - 1/2, |u| <= 1/2) of the shifted-cosine",
        "// ratio driving the Riemann-Siegel remainder terms, and of its derivative",
        "// combinations for the next four correction orders.",
        "// Generated by tools/gen_rs_coeffs.py; do not edit by hand.",
    ]
    for k, series in enumerate(tables):
        cut = trim_order(series)
        arr = [mp.nstr(series[j], 21, strip_zeros=False) for j in range(cut + 1)]
        lines.append(f"static const double kRsC{k}[] = {{")
        for j in range(0, len(arr), 3):
            cells = [x if ("e" in x or "." in x) else x + ".0" for x in arr[j : j + 3]]
            lines.append("    " + ", ".join(cells) + ",")
        lines.append("};")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def verify(tables):
    """Evaluate the trimmed double tables against the full-order 60-digit
    series across |u| <= 1/2; the drop must stay below 1e-21."""
    worst_all = mp.mpf(0)
    for series in tables:
        cut = trim_order(series)
        dbl = [mp.mpf(float(x)) for x in series[: cut + 1]]
        for i in range(101):
            u = mp.mpf(-0.5) + mp.mpf(i) / 100
            full = mp.mpf(0)
            for x in reversed(series):
                full = full * u + x
            trimmed = mp.mpf(0)
            for x in reversed(dbl):
                trimmed = trimmed * u + x
            worst_all = max(worst_all, abs(trimmed - full))
    if worst_all > mp.mpf("1e-21"):
        raise SystemExit(f"table verification failed: drop {mp.nstr(worst_all, 5)}")
    return worst_all


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "src/rs_coeffs.inc"
    tables = build_tables()
    worst = verify(tables)
    emit(tables, out)
    orders = [trim_order(s) for s in tables]
    print(f"wrote {out}: orders {orders}, trim residual {mp.nstr(worst, 3)}")


if __name__ == "__main__":
    main()
