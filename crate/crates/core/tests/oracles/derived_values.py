"""Arbitrary-precision reference values frozen into the Rust tests.

Run with `python3 derived_values.py`; the printed numbers are pasted into
`tests/derived_values.rs`. Nothing here shares code with the crate.
"""
from mpmath import mp, mpf, sqrt, pi, log10, besseljzero

mp.dps = 50

# CODATA 2018 exact / recommended values
m_e = mpf("9.1093837015e-31")
e = mpf("1.602176634e-19")
k_b = mpf("1.380649e-23")
eps0 = mpf("8.8541878128e-12")
c = mpf("299792458")

u_i = mpf("15.76")
sigma = mpf("1.1e-19")


def mfp(t, p):
    return k_b * t / (sqrt(2) * p * sigma)


def nu_c(t, p):
    return 4 * p * sigma / sqrt(m_e * pi * k_b * t)


def omega(f_ghz):
    return 2 * pi * mpf(f_ghz) * mpf("1e9")


w = omega("2.45")
T, P, E = mpf(300), mpf(100), mpf(3000)
d = mpf("0.23")
lam = d / pi

l = mfp(T, P)
nu = nu_c(T, P)
e_eff = E * nu / sqrt(nu**2 + w**2)
du = e * E**2 / (m_e * (nu**2 + w**2))
n_i = u_i / du
n_d = 2 * lam**2 / (3 * l**2)
ratio = 3 * l**2 * m_e * u_i * (w**2 + nu**2) / (2 * e * E**2 * lam**2)
printed = mpf("2.6e-17") * T / E**2 + 20800 * T**2 / (E**2 * P**2)
printed_first = mpf("2.6e-17") * T / E**2

a_coef = 12 * k_b * u_i / (pi * e * lam**2)
b_coef = 3 * k_b**2 * m_e * u_i * w**2 / (4 * sigma**2 * e * lam**2)

j01 = besseljzero(0, 1)
cyl = 1 / sqrt((pi / mpf("0.10"))**2 + (j01 / mpf("0.115"))**2)

n_e = mpf("1e18")
w_p = sqrt(n_e * e**2 / (m_e * eps0))
alpha = (w / c) * sqrt((w_p / w)**2 - 1)

rows = [
    ("j01", j01),
    ("omega_2p45", w),
    ("lambda_headline", lam),
    ("lambda_cyl_lowest", cyl),
    ("mfp_300_100", l),
    ("nu_c_300_100", nu),
    ("nu_over_omega", nu / w),
    ("e_eff_headline", e_eff),
    ("delta_u_headline", du),
    ("n_i_headline", n_i),
    ("n_d_headline", n_d),
    ("ratio_headline", ratio),
    ("log10_ratio_headline", log10(ratio)),
    ("printed_headline", printed),
    ("printed_first_term", printed_first),
    ("coef_a", a_coef),
    ("coef_b", b_coef),
    ("mb_mean_speed_300", sqrt(8 * k_b * T / (pi * m_e))),
    ("omega_p_1e18", w_p),
    ("omega_p_over_2pi_ghz", w_p / (2 * pi) / mpf("1e9")),
    ("skin_depth_1e18_2p45", 1 / alpha),
    ("ratio_e30", 3 * l**2 * m_e * u_i * (w**2 + nu**2) / (2 * e * 30**2 * lam**2)),
]
for name, v in rows:
    print(f"{name:24s} {mp.nstr(v, 17)}")


def full_ratio(E, P):
    l = mfp(T, P)
    nu = nu_c(T, P)
    return 3 * l**2 * m_e * u_i * (w**2 + nu**2) / (2 * e * E**2 * lam**2)


print()
for E in (100, 1000, 10000):
    for P in (mpf("0.1"), 10, 1000):
        print(f"({E}.0, {mp.nstr(P, 3)}, {mp.nstr(full_ratio(mpf(E), P), 17)}),")
