"""Taylor coefficients of the Riemann-Siegel correction terms C0..C4.

Each C_k(p) is expanded in z = 2p - 1 around p = 1/2 and printed as Rust
arrays. Run with `python3 scripts/rs_coeffs.py > crates/core/src/zeta/rs_coeffs.rs`.
"""
import mpmath as mp

mp.mp.dps = 80
NTERMS = 60
pi = mp.pi


def psi_z(z):
    p = (z + 1) / 2
    return mp.cos(2 * pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * pi * p)


# Taylor series of Psi in z; derivatives in p are (2 d/dz)^k.
def taylor_cauchy(f, n, radius=mp.mpf(1), samples=512):
    # trapezoid rule on a circle; Psi is entire so aliasing decays geometrically
    pts = [radius * mp.expjpi(2 * mp.mpf(k) / samples) for k in range(samples)]
    vals = [f(z) for z in pts]
    out = []
    for j in range(n):
        acc = mp.mpf(0)
        for z, v in zip(pts, vals):
            acc += v / z**j
        out.append(mp.re(acc) / samples)
    return out


tay = taylor_cauchy(psi_z, NTERMS + 14)


def dpsi(k):
    # series (in z) of d^k Psi / dp^k
    out = []
    for j in range(NTERMS):
        i = j + k
        c = tay[i] * mp.factorial(i) / mp.factorial(j) * mp.mpf(2) ** k
        out.append(c)
    return out


def comb(terms):
    out = [mp.mpf(0)] * NTERMS
    for coef, k in terms:
        d = dpsi(k)
        for j in range(NTERMS):
            out[j] += coef * d[j]
    return out


C = [
    comb([(1, 0)]),
    comb([(-1 / (96 * pi**2), 3)]),
    comb([(1 / (18432 * pi**4), 6), (1 / (64 * pi**2), 2)]),
    comb([(-1 / (5308416 * pi**6), 9), (-1 / (3840 * pi**4), 5), (-1 / (64 * pi**2), 1)]),
    comb([
        (1 / (2038431744 * pi**8), 12),
        (11 / (5898240 * pi**6), 8),
        (19 / (24576 * pi**4), 4),
        (1 / (128 * pi**2), 0),
    ]),
]


def trim(c):
    n = len(c)
    while n > 1 and abs(c[n - 1]) < mp.mpf(10) ** -20:
        n -= 1
    return c[:n]


if __name__ == "__main__":
    print("// Generated by scripts/rs_coeffs.py. Do not edit by hand.")
    print("//")
    print("// Taylor coefficients in z = 2p - 1 of the Riemann-Siegel correction")
    print("// functions C0..C4, p the fractional part of sqrt(t / 2pi).")
    print()
    for k, c in enumerate(C):
        c = [v if abs(v) > mp.mpf(10) ** -40 else mp.mpf(0) for v in trim(c)]
        print(f"pub(crate) const C{k}: [f64; {len(c)}] = [")
        for v in c:
            print(f"    {mp.nstr(v, 20, min_fixed=-1, max_fixed=-1) if v != 0 else '0.0'},")
        print("];")
        print()
