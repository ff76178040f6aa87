"""Independent high-precision evaluation of the closed-form values frozen into
the unit tests. Run with `python3 closed_form_oracles.py`; it only depends on
mpmath and never imports the C++ library."""
from mpmath import mp, mpf, sqrt, sin, cos, pi, asin, atan, diff, quad

mp.dps = 40
g = mpf("1.4")


def chi(M, beta):
    return (g - 1) / (g + 1) + 2 / ((g + 1) * M**2 * sin(beta) ** 2)


def p_inf(M):
    return 1 / (g * M**2)


def p_hat(M, beta):
    return p_inf(M) + (1 - chi(M, beta)) * sin(beta) ** 2


def pitot_ratio(M):
    # Rayleigh pitot formula p02/p1
    a = ((g + 1) ** 2 * M**2 / (4 * g * M**2 - 2 * (g - 1))) ** (g / (g - 1))
    b = (1 - g + 2 * g * M**2) / (g + 1)
    return a * b


def u_bracket(M, beta_s, p, ph, beta_h):
    k = (g - 1) / g
    return sqrt(cos(beta_s) ** 2 + (2 / ((g - 1) * M**2) + sin(beta_s) ** 2)
                * (1 - (p * sin(beta_h) ** 2 / (ph * sin(beta_s) ** 2)) ** k))


def moeckel_r(M, z0, z):
    return sqrt((z + z0) ** 2 - z0**2) / sqrt(M**2 - 1)


if __name__ == "__main__":
    for M in ["3.5", "3.8", "3.9", "4", "5", "6", "7", "8"]:
        print("chi(90deg) M=%s:" % M, mp.nstr(chi(mpf(M), pi / 2), 12))
    print("p_hat M=4 90deg:", mp.nstr(p_hat(4, pi / 2), 15))
    print("pitot M=4:", mp.nstr(pitot_ratio(4) * p_inf(4), 15), "ratio", mp.nstr(pitot_ratio(4), 10))
    print("pitot M=5:", mp.nstr(pitot_ratio(5) * p_inf(5), 15), "ratio", mp.nstr(pitot_ratio(5), 10))
    for M in range(4, 9):
        d = pitot_ratio(M) * p_inf(M) - p_hat(M, pi / 2)
        print("pitot defect / (chi/2) M=%d:" % M, mp.nstr(d / (chi(M, pi / 2) / 2), 8))
    print("u M=4 beta*=90 P=0.9 P_hat:",
          mp.nstr(u_bracket(4, pi / 2, mpf("0.9") * p_hat(4, pi / 2), p_hat(4, pi / 2), pi / 2), 15))
    print("Moeckel r z0=17.615 M=4 z=1:", mp.nstr(moeckel_r(4, mpf("17.615"), 1), 15))
    f1 = moeckel_r(4, mpf("17.615"), 1)
    print("poly2 r z=1:", mp.nstr(mpf("0.998") * f1 - mpf("0.045") * f1**2, 15))
    print("kappa vertex Moeckel:", mp.nstr(mpf(15) / mpf("17.615"), 15))
    print("mach angle M=4 deg:", mp.nstr(asin(mpf(1) / 4) * 180 / pi, 10))
    # curvature at z=1 of Moeckel by finite differences of r(z)
    r = lambda z: moeckel_r(4, mpf("17.615"), z)
    r1, r2 = diff(r, 1, 1), diff(r, 1, 2)
    print("kappa Moeckel z=1:", mp.nstr(abs(r2) / (1 + r1**2) ** mpf(1.5), 15))
    print("beta Moeckel z=1:", mp.nstr(atan(r1), 15))
