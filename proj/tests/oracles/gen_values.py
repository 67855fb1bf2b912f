"""Regenerates tests/unit/frozen_values.hpp from mpmath at 40 digits."""
import mpmath as mp

mp.mp.dps = 40

chi_m4 = [0, 1, 0, -1]
chi_5 = [0, 1, -1, -1, 1]


def chi_m20():
    out = []
    for n in range(20):
        out.append(int(mp.re(mp.mpf(chi_m4[n % 4] * chi_5[n % 5]))))
    return out


def zeta_k(s, chi):
    return mp.zeta(s) * mp.dirichlet(s, chi)


def eps_m4(s):
    return 4 * zeta_k(s, chi_m4)


def eps_m20(s):
    # E(1,0,5) = zeta_K + L(chi_-4) L(chi_5); E(2,2,3) = zeta_K - L(chi_-4) L(chi_5); w = 2
    zk = zeta_k(s, chi_m20())
    g = mp.dirichlet(s, chi_m4) * mp.dirichlet(s, chi_5)
    return zk + g, zk - g


def c(z):
    z = mp.mpc(z)
    return "{%s, %s}" % (mp.nstr(z.real, 17, min_fixed=-1, max_fixed=-1) if z.real != 0 else "0.0",
                         mp.nstr(z.imag, 17, min_fixed=-1, max_fixed=-1) if z.imag != 0 else "0.0")


lines = ["#pragma once", "", "// Generated by tests/oracles/gen_values.py (mpmath, 40 digits).", "",
         "#include <complex>", "", "namespace frozen {", "",
         "using cplx = std::complex<double>;", "",
         "struct Pair { cplx s; cplx value; };",
         "struct IncGamma { cplx s; cplx z; cplx value; };",
         "struct Pair2 { cplx s; cplx v1; cplx v2; };", ""]

lg = [2.5, mp.mpc(0.5, 14), mp.mpc(-3.3, 2), mp.mpc(0.8, 1000), mp.mpc(-0.5, -40), mp.mpc(30, 7), mp.mpc(1e-3, 0.1)]
lines.append("inline const Pair log_gamma[] = {")
for s in lg:
    lines.append("    {%s, %s}," % (c(s), c(mp.loggamma(s))))
lines.append("};\n")

ig = [(mp.mpc(0.8, 10), 0.5), (mp.mpc(2.5, 0), 3.0), (mp.mpc(-0.7, 3), 1.2), (mp.mpc(0.5, 100), 40.0),
      (mp.mpc(1.5, -20), mp.mpc(2, 5)), (mp.mpc(0.3, 300), mp.mpc(0.01, 250)), (mp.mpc(-2.2, 1), mp.mpc(4, -1)),
      (mp.mpc(0.7, 50), mp.mpc(60, 1))]
lines.append("/// g(s, z) = z^{-s} Gamma(s, z).")
lines.append("inline const IncGamma tail[] = {")
for s, z in ig:
    v = mp.power(z, -s) * mp.gammainc(s, z)
    lines.append("    {%s, %s, %s}," % (c(s), c(z), c(v)))
lines.append("};\n")

pts = [2, mp.mpc(0.5, 14), mp.mpc(0.8, 10), mp.mpc(1.5, -30), mp.mpc(0.3, 100), mp.mpc(0.75, 500),
       mp.mpc(-0.5, 5), mp.mpc(2.5, 1000)]
lines.append("/// E(s, x^2 + y^2) = 4 zeta(s) beta(s).")
lines.append("inline const Pair sum_two_squares[] = {")
for s in pts:
    lines.append("    {%s, %s}," % (c(s), c(eps_m4(s))))
lines.append("};\n")
lines.append("/// E(s, (1,0,5)) and E(s, (2,2,3)).")
lines.append("inline const Pair2 disc_m20[] = {")
for s in pts[:6]:
    a, b = eps_m20(s)
    lines.append("    {%s, %s, %s}," % (c(s), c(a), c(b)))
lines.append("};\n")
lines.append("}  // namespace frozen")

open("frozen_values.hpp", "w").write("\n".join(lines) + "\n")
