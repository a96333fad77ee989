"""Independent reference implementations used only by the tests.

These deliberately avoid the package's own evaluation routes: the series
reference runs in adaptive extended precision, and the gamma reference is a
Weierstrass product with an analytic tail, cross-checkable against library
gamma implementations.
"""

import mpmath as mp


def ml_ref(a, b, z, extra_dps=20):
    """Two-parameter Mittag-Leffler reference by plain series summation.

    Precision is scaled with |z|**(1/a) so the large intermediate terms
    cancel exactly; usable up to moderately large arguments.
    """
    R = abs(z) ** (1.0 / a) if z != 0 else 0.0
    if R > 400.0:
        raise ValueError("reference series capped at |z|**(1/a) <= 400")
    dps = 40 + extra_dps + int(0.45 * R)
    with mp.workdps(dps):
        am = mp.mpf(a)
        bm = mp.mpf(b)
        zm = mp.mpmathify(z)
        s = mp.mpc(0)
        zp = mp.mpc(1)
        tiny = mp.mpf(10) ** (-dps - 10)
        for k in range(200000):
            t = zp * mp.rgamma(am * k + bm)
            s += t
            zp *= zm
            if k > 4 and abs(t) < tiny * max(1, abs(s)):
                return complex(s)
    raise RuntimeError("reference series did not converge")


def gamma_weierstrass(x, n_terms=200, dps=50):
    """Gamma via the Weierstrass product with an exact Hurwitz-zeta tail.

    log(1/Gamma(x)) = log x + euler*x + sum_{n<=N} [log(1+x/n) - x/n] + tail,
    tail = sum_{k>=2} (-x)^k zeta(k, N+1) / k.
    """
    with mp.workdps(dps):
        xm = mp.mpf(x)
        acc = mp.log(xm) + mp.euler * xm
        for n in range(1, n_terms + 1):
            acc += mp.log(1 + xm / n) - xm / n
        tail = mp.mpf(0)
        k = 2
        while True:
            term = -((-xm) ** k) * mp.zeta(k, n_terms + 1) / k
            tail += term
            if abs(term) < mp.mpf(10) ** (-dps - 5):
                break
            k += 1
        return 1 / mp.exp(acc + tail)
