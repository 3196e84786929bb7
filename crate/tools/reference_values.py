#!/usr/bin/env python3
"""Generate high-precision reference values for the test suites.

Everything is computed with mpmath at 50 significant digits and printed as
17-digit literals ready to paste into Rust tests. Quotients of Bessel
functions are evaluated from the functions themselves (via the standard
derivative recurrences), which is an evaluation route completely independent
of the truncated-series implementation in the crate.

Usage: python3 tools/reference_values.py
"""

import mpmath as mp

mp.mp.dps = 50


def c17(x):
    """Format a complex mpmath number as a Rust Complex64 constructor."""
    x = mp.mpmathify(x)
    return f"Complex64::new({mp.nstr(x.real, 17, strip_zeros=False)}, {mp.nstr(x.imag, 17, strip_zeros=False)})"


def r17(x):
    return mp.nstr(mp.mpmathify(x).real, 17, strip_zeros=False)


# ---------------------------------------------------------------------------
# Bessel quotients
# ---------------------------------------------------------------------------

def kquot(nu, z):
    """K'_nu(z)/K_nu(z) via the recurrence K' = -(K_{nu-1}+K_{nu+1})/2."""
    k = mp.besselk(nu, z)
    kp = -(mp.besselk(nu - 1, z) + mp.besselk(nu + 1, z)) / 2
    return kp / k


def iquot(nu, z):
    """I'_nu(z)/I_nu(z) via I' = (I_{nu-1}+I_{nu+1})/2."""
    i = mp.besseli(nu, z)
    ip = (mp.besseli(nu - 1, z) + mp.besseli(nu + 1, z)) / 2
    return ip / i


def h2quot_principal(n, x):
    """H2'_n(x)/H2_n(x) for arg x in (-pi, pi]."""
    h = mp.hankel2(n, x)
    hp = (mp.hankel2(n - 1, x) - mp.hankel2(n + 1, x)) / 2
    return hp / h


def h2quot_continued(n, x_upper):
    """H2'/H2 on the sheet arg in (-2pi, -pi), parametrised by x_upper.

    The point on the lower sheet is x = x_upper * e^{-i pi}.  Analytic
    continuation gives H2_n(z e^{-i pi}) = -e^{i n pi} H1_n(z), hence the
    logarithmic derivative at the continued point equals -H1'_n/H1_n at
    x_upper.
    """
    h = mp.hankel1(n, x_upper)
    hp = (mp.hankel1(n - 1, x_upper) - mp.hankel1(n + 1, x_upper)) / 2
    return -hp / h


def jquot(n, x):
    j = mp.besselj(n, x)
    jp = (mp.besselj(n - 1, x) - mp.besselj(n + 1, x)) / 2
    return jp / j


# ---------------------------------------------------------------------------
# Resonance residuals (cusp-cone and funnel-cone)
# ---------------------------------------------------------------------------

def nu_of_lambda(lam, b):
    """nu = -i sqrt(lam^2/b^2 - 1/4) with the principal square root."""
    return -1j * mp.sqrt(lam * lam / (b * b) - mp.mpf(1) / 4)


def residual_cusp(lam, a, b, m):
    """K'_nu(m/b)/K_nu(m/b) - [lam*H2q(m/a, lam/a)/m - b/(2m)].

    The argument lam/a of the Hankel quotient lies on the sheet
    arg in (-3pi/2, -pi/2), reached from lam/|a| by e^{-i pi}; the
    continuation identity H2_n(z e^{-i pi}) = -e^{i n pi} H1_n(z) turns the
    quotient into -H1'_n/H1_n at lam/|a|, which is principal-branch there.
    """
    nu = nu_of_lambda(lam, b)
    lhs = kquot(nu, mp.mpf(m) / b)
    n = mp.mpf(m) / a
    hq = h2quot_continued(n, lam / abs(mp.mpf(a)))
    rhs = lam * hq / m - mp.mpf(b) / (2 * m)
    return lhs - rhs


def residual_funnel(lam, a, b, m):
    nu = nu_of_lambda(lam, b)
    lhs = iquot(nu, mp.mpf(m) / b)
    rhs = lam * jquot(mp.mpf(m) / a, lam / a) / m - mp.mpf(b) / (2 * m)
    return lhs - rhs


def lambert_nu_tilde(zeta):
    """Solve nt*log(nt) = zeta with Re nt > 1 (principal Lambert W)."""
    w = mp.lambertw(zeta)
    return zeta / w


def seed_cusp(k, a, b, m):
    z = mp.mpf(m) / b
    j = 2 if a + b == 0 else 1
    zeta = 2 * mp.pi * k / (mp.e * z)
    nt = lambert_nu_tilde(zeta)
    return (b * mp.e * z * nt - 1j * b * j) / 2


def seed_funnel(k, a, b, m):
    j = 2 if a + b == 0 else 1
    return mp.pi * a * k - 1j * j * a * mp.log(k) / 2


def damped_newton(fun, x0, step_cap, max_iter=60):
    """Newton with a central-difference derivative and a step-length cap,
    mirroring the crate's polishing iteration so the frozen roots are the
    ones its basins select."""
    x = mp.mpc(x0)
    for it in range(max_iter):
        f = fun(x)
        h = mp.mpf("1e-20") * (1 + abs(x))
        fp = (fun(x + h) - fun(x - h)) / (2 * h)
        step = f / fp
        if abs(step) > step_cap:
            step *= step_cap / abs(step)
        x = x - step
        if abs(step) < mp.mpf("1e-30") * (1 + abs(x)):
            return x
    return x


def find_root_cusp(k, a, b, m):
    s = seed_cusp(k, a, b, m)
    return damped_newton(lambda t: residual_cusp(t, a, b, m), s, mp.pi * b / mp.log(k) / 2)


def find_root_funnel(k, a, b, m):
    s = seed_funnel(k, a, b, m)
    return damped_newton(lambda t: residual_funnel(t, a, b, m), s, mp.pi * a / 2)


def main():
    print("== log_gamma (canonical branch, mpmath.loggamma) ==")
    for z in [mp.mpc(0.5, 3), mp.mpc(42, 0.5), mp.mpc(0.6, 700), mp.mpc(0.5, -1000),
              mp.mpc(1.5, -300), mp.mpc(2, -3), mp.mpc(1e-3, 0.9)]:
        print(f"  loggamma({z}) = {c17(mp.loggamma(z))}")
    print("  exp-check points (left half-plane, only exp matters)")
    for z in [mp.mpc(-2.5, 4), mp.mpc(-0.3, -2), mp.mpc(-7.2, 1.5)]:
        print(f"  gamma({z}) = {c17(mp.gamma(z))}")

    print("\n== gamma_ratio g-data ==")
    nu = mp.mpc(2, -3)
    ratio = mp.gamma(nu) / mp.gamma(-nu)
    print(f"  gamma(2-3i)/gamma(-2+3i) = {c17(ratio)}  |.|={r17(abs(ratio))}")

    print("\n== lambert nu*log(nu) = zeta ==")
    for zeta in [mp.mpf(200) * mp.pi / mp.e, mp.mpf(10), mp.mpf(1e6), mp.mpc(50, 30)]:
        nt = lambert_nu_tilde(zeta)
        print(f"  zeta={zeta} -> nu_tilde = {c17(nt)} (resid {mp.nstr(abs(nt*mp.log(nt)-zeta)/abs(zeta), 3)})")

    print("\n== kquot oracle grid ==")
    nus = [mp.mpc(1, 1), mp.mpc(2, -3), mp.mpc(0.5, 0.5), mp.mpc(-3, 4), mp.mpc(6, -8), mp.mpc(12, 16)]
    for nu in nus:
        for z in [mp.mpf("0.5"), mp.mpf(1), mp.mpf(2)]:
            print(f"  kquot({nu}, {z}) = {c17(kquot(nu, z))}")

    print("\n== iquot oracle grid ==")
    for nu in nus:
        for z in [mp.mpf("0.5"), mp.mpf(1), mp.mpf(2)]:
            print(f"  iquot({nu}, {z}) = {c17(iquot(nu, z))}")
    print(f"  iquot(3-4i, -1) = {c17(iquot(mp.mpc(3, -4), -1))}")
    print(f"  iquot(3-4i, +1) = {c17(iquot(mp.mpc(3, -4), 1))}")

    print("\n== remainders spot values ==")
    # 1+R1 at (nu=2, z=1): I_2(1) * Gamma(3) / (1/2)^2
    i21 = mp.besseli(2, 1)
    print(f"  I_2(1) = {r17(i21)}")
    print(f"  one_plus_r1(2,1) = {r17(i21 * mp.gamma(3) / mp.mpf('0.25'))}")

    print("\n== hquot reference points ==")
    print(f"  hquot(1, 1000) = {c17(h2quot_principal(1, 1000))}")
    print(f"  hquot(2, 40*e^-3pi i/4) = {c17(h2quot_principal(2, 40 * mp.exp(-3j * mp.pi / 4)))}")
    print(f"  hquot(1, -30i) = {c17(h2quot_principal(1, mp.mpc(0, -30)))}")
    x_up = 100 * mp.exp(-1j * mp.pi / 4)
    print(f"  hquot_cont(2, 100*e^-5pi i/4) = {c17(h2quot_continued(2, x_up))}")
    print(f"  hquot_cont(1, 31.4*e^-i pi) = {c17(h2quot_continued(1, mp.mpf('31.4')))}")

    print("\n== jquot reference points ==")
    print(f"  jquot(1, 100) = {c17(jquot(1, 100))}")
    print(f"  jquot(1, 100-5i) = {c17(jquot(1, mp.mpc(100, -5)))}")
    print(f"  jquot(0.5, 12) = {c17(jquot(mp.mpf('0.5'), 12))}  (cot 12 - 1/24 = {r17(mp.cot(12) - mp.mpf(1)/24)})")

    print("\n== upper half plane / off-line residual floors ==")
    vals = []
    for re in mp.linspace(1, 100, 20):
        for im in mp.linspace(0.5, 10, 20):
            vals.append(abs(residual_cusp(mp.mpc(re, im), -1, 1, 1)))
    print(f"  min |F| over 20x20 UHP grid (-1,1,1): {mp.nstr(min(vals), 6)}")
    vals = [abs(residual_cusp(mp.mpc(re, -5), -1, 1, 1)) for re in mp.linspace(20, 50, 16)]
    print(f"  min |F| on Re in [20,50], Im=-5 (-1,1,1): {mp.nstr(min(vals), 6)}")
    print(f"  |F(5i)| (-1,1,1) = {mp.nstr(abs(residual_cusp(mp.mpc(0, 5), -1, 1, 1)), 6)}")

    print("\n== cusp resonances (a,b,m; k): nearest root, seed, |root-seed| ==")
    cusp_roots = {}
    for (a, b) in [(-1, 1), (-2, 1), (-1, 2), (-2, 2)]:
        for k in [10, 20, 50, 100, 200, 500, 1000]:
            s = seed_cusp(k, a, b, 1)
            r = find_root_cusp(k, a, b, 1)
            cusp_roots[(a, b, k)] = r
            res = abs(residual_cusp(r, a, b, 1))
            sp = mp.pi * b / mp.log(k)
            print(f"  ({a},{b},1;k={k}): root={c17(r)} seed=({mp.nstr(s.real, 10)},{mp.nstr(s.imag, 10)}) "
                  f"|d|={mp.nstr(abs(r - s), 6)} d/sp={mp.nstr(abs(r - s)/sp, 4)} resid={mp.nstr(res, 3)}")

    print("\n== funnel resonances ==")
    for (a, b) in [(1, -1), (1, -2)]:
        for k in [10, 20, 50, 100, 200, 500, 1000]:
            s = seed_funnel(k, a, b, 1)
            r = find_root_funnel(k, a, b, 1)
            res = abs(residual_funnel(r, a, b, 1))
            print(f"  ({a},{b},1;k={k}): root={c17(r)} seed=({mp.nstr(s.real, 10)},{mp.nstr(s.imag, 10)}) "
                  f"|d|={mp.nstr(abs(r - s), 6)} |dRe|={mp.nstr(abs(r.real - s.real), 6)} resid={mp.nstr(res, 3)}")

    print("\n== criterion margins (from nearest roots) ==")
    for (a, b) in [(-1, 1), (-2, 1), (-1, 2), (-2, 2)]:
        j = 2 if a + b == 0 else 1
        r100 = cusp_roots[(a, b, 100)]
        r1000 = cusp_roots[(a, b, 1000)]
        lim = -mp.mpf(b) * j / 2
        print(f"  ({a},{b}): Im100={mp.nstr(r100.imag, 8)} Im1000={mp.nstr(r1000.imag, 8)} lim={lim} "
              f"|d100|={mp.nstr(abs(r100.imag - lim), 4)} |d1000|={mp.nstr(abs(r1000.imag - lim), 4)}")
    r100 = cusp_roots[(-1, 1, 100)]
    r1000 = cusp_roots[(-1, 1, 1000)]
    q100 = r100.real / (mp.pi * 100 / mp.log(100))
    q1000 = r1000.real / (mp.pi * 1000 / mp.log(1000))
    print(f"  (-1,1) Re-ratio: k=100 {mp.nstr(q100, 8)}  k=1000 {mp.nstr(q1000, 8)}")


if __name__ == "__main__":
    main()
