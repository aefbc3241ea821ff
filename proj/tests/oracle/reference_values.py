"""Independent 50-digit evaluation of the decoherence coefficients.

Produces the frozen reference values used by the C++ unit tests.
Run: python3 tests/oracle/reference_values.py
"""
from mpmath import mp, mpf, sqrt, pi, asin, tan

mp.dps = 50

KB = mpf("1.380649e-23")
HBAR = mpf("1.054571817e-34")
NA = mpf("6.02214076e23")
BOHR = mpf("5.29177210903e-11")


def gas(T, n_cm3, m_gmol, M_gmol):
    m = mpf(m_gmol) / 1000 / NA
    M = mpf(M_gmol) / 1000 / NA
    return dict(T=mpf(T), n=mpf(n_cm3) * mpf(10) ** 6, m=m, M=M,
                mstar=m * M / (m + M), r=m / M)


def coeffs(g, aa, ba, ab, bb):
    n, m, ms, r = g["n"], g["m"], g["mstar"], g["r"]
    d2 = (ab - aa) ** 2 + (bb - ba) ** 2
    C = mpf(2) ** mpf(2.5) * sqrt(pi) * n * sqrt(KB / ms)
    xi1 = -C * d2
    xi21 = 12 * pi * n * KB * r ** mpf(1.5) * (bb + ba) * d2 / HBAR
    br = 3 * sqrt(2 * r + 1) + (1 + 2 * r + 3 * r * r) / r * asin(r / (r + 1)) - 4 * (1 + r)
    xi22 = (32 * pi ** 3 * n * n * KB / ms + 8 * pi * KB * n * n / m * br) * d2 ** 2 \
        - 64 * pi * KB * n * n / m * br * (bb * bb + ba * ba + bb * ba) * d2
    z0 = -4 * pi * HBAR * n / ms * (ba + bb) / 2
    z1 = C * ((ba + bb) ** 2 - (aa - ab) ** 2)
    return dict(C=C, xi1=xi1, xi21=xi21, xi22=xi22, zeta0=z0, zeta1=z1)


if __name__ == "__main__":
    g = gas("1e-6", "1e11", "24.3", "15.0")
    print("reduced_mass", mp.nstr(g["mstar"], 20), "r", g["r"])
    c = coeffs(g, 0, 0, 100 * BOHR, 0)
    print("xi1(dalpha=100 bohr)", mp.nstr(c["xi1"], 20))
    print("R = sqrt(T) xi1", mp.nstr(sqrt(g["T"]) * c["xi1"], 20))
    c = coeffs(g, 0, 10 * BOHR, 0, 10 * BOHR)
    print("zeta0(beta=10,10)", mp.nstr(c["zeta0"], 20), "efold", mp.nstr(-1 / c["zeta0"], 20))
    print("C", mp.nstr(c["C"], 20))
    c = coeffs(g, 30 * BOHR, 5 * BOHR, -20 * BOHR, 40 * BOHR)
    for k, v in c.items():
        print(k, mp.nstr(v, 20))
    for kr in (1, 1.5):
        print("square well kR=%g" % kr, mp.nstr(10 * (1 - tan(mpf(kr)) / kr), 20), "bohr")
    print("100 bohr in m", mp.nstr(100 * BOHR, 20))
