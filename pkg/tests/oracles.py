"""Independent arbitrary-precision evaluations used to freeze expected values.

Nothing here imports dkpo_lab; each function transcribes a formula directly
into mpmath at 50 digits.
"""
import mpmath as mp

mp.mp.dps = 50


def laguerre_series(n, k, x):
    """sum_j (-1)^j C(n+k, n-j) x^j / j!"""
    n, k, x = int(n), mp.mpf(k), mp.mpf(x)
    return mp.fsum((-1) ** j * mp.binomial(n + k, n - j) * x ** j / mp.factorial(j)
                   for j in range(n + 1))


def scalar_energy(hbar_omega, delta, n, l, flip_omega=False):
    w = mp.mpf(hbar_omega)
    wt = mp.mpf(delta) * w
    w0 = mp.sqrt(w ** 2 + wt ** 2)
    sw = -w if flip_omega else w
    return mp.sqrt(1 - 2 * (abs(l) * wt + sw) + w0 * (4 * n + 2 * (abs(l) + 1)))


def closed_form_Z(gamma, delta):
    g, d = mp.mpf(gamma), mp.mpf(delta)
    f1 = 2 * mp.exp(-g * mp.sqrt(2 + d)) * ((2 + d) * g ** 2 + 3 * mp.sqrt(2 + d) * g + 3) / (
        (1 + d) ** 2 * g ** 4)
    f2 = mp.exp(-g * mp.sqrt(d)) * (mp.sqrt(d) * g * ((1 - d) * g ** 2 + 6) + (1 - d) * g ** 2
                                    + 2 * d * g ** 2 + 6) / ((1 - d) ** 2 * g ** 4)
    return f1 * f2


def pdf(alpha, n, l, xi, compact=False):
    u = mp.mpf(alpha) * mp.mpf(xi) ** 2
    k = abs(l)
    if compact:
        return u ** k * mp.exp(-u) * laguerre_series(n, 2 * k, u)
    return u ** k * mp.exp(-u) * laguerre_series(n, k, u) ** 2
