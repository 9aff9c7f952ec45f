#!/usr/bin/env python3
"""Generate high-precision reference values for the Mittag-Leffler function.

Evaluates E_beta(z) = sum_j z^j / Gamma(beta*j + 1) with mpmath at a working
precision at least 50 digits past the largest series term, so the heavy
cancellation for arg(z) near pi is fully resolved.  The double-precision
implementation in crates/tfqs is tested against these values.

Usage:
    python3 scripts/gen_mlf_reference.py grid  > crates/tfqs/tests/data/mlf_reference_grid.txt
    python3 scripts/gen_mlf_reference.py spots

`grid` writes rows "beta re_z im_z re_E im_E" (16 significant digits) over
rays arg(z) in {0, +-pi*beta/2, pi - pi*beta/2, pi} for beta in 0.2..1.0.
Points are kept only where the value is comfortably representable in f64
(1e-6 <= |E| <= 1e6) and the series exponent |z|^(1/beta) stays below 2000,
which bounds both the oracle cost and the double-precision phase
conditioning of the value being tested.

`spots` prints Rust constant tuples for a handful of hand-picked arguments,
ready to freeze into unit tests.
"""

import sys
import time

from mpmath import mp, mpf, mpc, fabs, gamma, arg, exp, erfc, cos, sin, pi

LADDER = [0.25, 0.75, 1.5, 2.5, 3.5, 4.75, 5.25, 6.5, 9.0, 12.5, 17.0, 23.0, 31.0, 40.0]
BETAS = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
X_CAP = 2000.0          # cap on |z|^(1/beta): oracle cost + f64 conditioning
LOG_E_WINDOW = 13.8     # keep points with |log |E|| below ~ln(1e6)


def ml_series(beta, z, digits=50):
    """E_beta(z) by direct summation at adaptive precision."""
    beta = mpf(beta)
    z = mpc(z)
    if z == 0:
        return mpc(1)
    x = float(fabs(z)) ** (1.0 / float(beta))
    guard = int(x / 2.302585) + digits + 30
    with mp.workdps(guard):
        total = mpc(0)
        zj = mpc(1)
        j = 0
        j_peak = x / float(beta)
        floor = mpf(10) ** (-(digits + 15))
        while True:
            term = zj / gamma(beta * j + 1)
            total += term
            j += 1
            zj *= z
            if j > j_peak and fabs(term) <= floor * (fabs(total) + floor):
                break
            if j > 2_000_000:
                raise RuntimeError("series did not converge")
        return mpc(total)


def self_check():
    """Compare against exp and erfc closed forms to ~1e-45."""
    with mp.workdps(80):
        for z in [mpc(3, 4), mpc(-7, 0), mpc(10, 0), mpc(0, -12)]:
            got = ml_series(1.0, z, digits=70)
            want = exp(z)
            rel = fabs(got - want) / fabs(want)
            assert rel < mpf(10) ** -45, (z, rel)
        for z in [mpc(2, 1), mpc(-4, 0), mpc(0, 3), mpc(4, 0), mpc(-1, 0)]:
            got = ml_series(0.5, z, digits=70)
            want = exp(z * z) * erfc(-z)
            rel = fabs(got - want) / fabs(want)
            assert rel < mpf(10) ** -45, (z, rel)


def log_mag_estimate(beta, r, theta):
    """Rough log|E_beta(z)| for pre-filtering expensive points."""
    import math
    x = r ** (1.0 / beta)
    alg = -math.log(max(r, 1e-3)) - math.lgamma(1.0 - beta) if beta < 1.0 else -1e9
    if abs(theta) < math.pi * beta:
        return max(x * math.cos(theta / beta), alg)
    if beta == 1.0 and abs(theta) >= math.pi:
        return -r
    return alg


def f64(x):
    return float(mpf(x))


def gen_grid(out):
    mp.dps = 50
    t0 = time.time()
    rows = []
    for beta in BETAS:
        rays = []
        for theta in [0.0, pi * beta / 2, -pi * beta / 2, pi - pi * beta / 2, pi]:
            t = float(theta)
            if not any(abs(t - u) < 1e-12 for u in rays):
                rays.append(t)
        for theta in rays:
            for r in LADDER:
                if r ** (1.0 / beta) > X_CAP:
                    continue
                est = log_mag_estimate(beta, r, theta)
                if abs(est) > LOG_E_WINDOW + 3.0:
                    continue
                # round the input to f64 first, then evaluate exactly there
                zr = f64(r * cos(theta))
                zi = f64(r * sin(theta))
                val = ml_series(beta, mpc(zr, zi))
                import math
                m = fabs(val)
                if m < 1e-6 or m > 1e6:
                    continue
                rows.append((beta, zr, zi, val))
        print(f"beta={beta}: {sum(1 for row in rows if row[0] == beta)} points, "
              f"{time.time() - t0:.1f}s elapsed", file=sys.stderr)
    out.write("# Mittag-Leffler reference values: E_beta(z), 50-digit series\n")
    out.write("# columns: beta re_z im_z re_E im_E (16 significant digits)\n")
    for beta, zr, zi, val in rows:
        out.write("%.17g %.17g %.17g %s %s\n" % (
            beta, zr, zi,
            mp.nstr(val.real, 16, strip_zeros=False),
            mp.nstr(val.imag, 16, strip_zeros=False)))
    print(f"total {len(rows)} points in {time.time() - t0:.1f}s", file=sys.stderr)
    assert len(rows) >= 200, len(rows)


def gen_spots():
    mp.dps = 50
    spots = [
        (0.5, mpc(-1, 0)),
        (0.5, mpc(4, 0)),
        (0.5, 2 * exp(mpc(0, -pi / 4))),
        (0.5, exp(mpc(0, -pi / 4))),
        (0.6, 10 * exp(mpc(0, -mpf(3) * pi / 10))),
        (0.8, mpc(0, -12)),
        (0.3, mpc(-2, 0)),
        (0.6, mpc(-5, 0)),
        (0.9, mpc(-5, 0)),
        (0.4, mpc(2, 2)),
        (0.7, mpc(-8, 0.5)),
        (0.2, mpc(0, 1.5)),
        (1.0, mpc(-3, 7)),
    ]
    for beta, z in spots:
        zr, zi = f64(z.real), f64(z.imag)
        val = ml_series(beta, mpc(zr, zi))
        print("    (%.17g, %.17g, %.17g, %.17g, %.17g)," % (
            beta, zr, zi, f64(val.real), f64(val.imag)))


def main():
    self_check()
    print("closed-form self checks passed", file=sys.stderr)
    mode = sys.argv[1] if len(sys.argv) > 1 else "grid"
    if mode == "grid":
        gen_grid(sys.stdout)
    elif mode == "spots":
        gen_spots()
    else:
        raise SystemExit(f"unknown mode {mode!r}")


if __name__ == "__main__":
    main()
