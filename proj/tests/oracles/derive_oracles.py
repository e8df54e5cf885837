"""Independent reference values frozen into the C++ unit tests.

Finite-dimensional values use density-matrix formulas (numpy/scipy), never
the relative modular operator. Ray and wedge values use direct quadrature
(mpmath/scipy) of the defining integrals. Run: python3 derive_oracles.py
"""
import mpmath as mp
import numpy as np
from scipy import integrate
from scipy.linalg import fractional_matrix_power as fpow, logm, sqrtm

np.set_printoptions(precision=17)

# fixed instance shared with test_divergences.cpp
rho = np.array([[0.6, 0.1 + 0.2j], [0.1 - 0.2j, 0.4]])
m = np.array([[1.0, 0.5j], [0.3, 2.0]])
x = sqrtm(rho) @ m.T                       # Ψ = (1⊗m)Ω, Ω = vec(ρ^{1/2})
x = x / np.linalg.norm(x)
rho_psi = x @ x.conj().T


def petz(a):
    return np.log(np.trace(fpow(rho_psi, a) @ fpow(rho, 1 - a)).real) / (a - 1)


def sandwiched(a):
    s = fpow(rho, (1 - a) / (2 * a))
    return np.log(np.trace(fpow(s @ rho_psi @ s, a)).real) / (a - 1)


s_rel = np.trace(rho_psi @ (logm(rho_psi) - logm(rho))).real
print("S_rel", repr(s_rel))
for a in (0.5, 1.5, 2.0, 3.0):
    print("petz", a, repr(petz(a)))
for a in (1.25, 2.0, 3.0):
    print("sandwiched", a, repr(sandwiched(a)))
# ‖Ψ‖_4 with the normalized m: D_2 = 4 ln ‖Ψ‖_4
print("l4", repr(np.exp(sandwiched(2.0) / 4)))

# light ray, exp-monomial α = 1: sqrt(n/π)∫e^{−n(s−t)²−2πs}(α − ipe^{−2πs})^{−2} ds
mp.mp.dps = 30


def smeared(n, t, p):
    f = lambda s: mp.exp(-n * (s - t) ** 2 - 2 * mp.pi * s) / (1 - 1j * p * mp.exp(-2 * mp.pi * s)) ** 2
    return mp.sqrt(n / mp.pi) * mp.quad(f, [-mp.inf, -2, -1, 0, 1, 2, mp.inf])


for n, t, p in ((100, 0, 1.0), (16, 0.25j, 1.0), (4, -0.75j, 0.4), (16, 0.3, 2.0)):
    v = smeared(n, t, p)
    print("smeared", n, t, p, mp.nstr(v.real, 17), mp.nstr(v.imag, 17))

# (1/4π)∫₀^∞ p|𝓕f_n|² dp at n = 100, by nested scipy quadrature
def fn(p, n=100.0):
    g = lambda s, part: (np.sqrt(n / np.pi) * np.exp(-n * s * s - 2 * np.pi * s)
                         / (1 - 1j * p * np.exp(-2 * np.pi * s)) ** 2)
    re = integrate.quad(lambda s: g(s, 0).real, -3, 3, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    im = integrate.quad(lambda s: g(s, 0).imag, -3, 3, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    return re + 1j * im


jfn = integrate.quad(lambda p: p * abs(fn(p)) ** 2, 0, np.inf, epsabs=1e-14, epsrel=1e-12, limit=400)[0] / (4 * np.pi)
print("jfn100", repr(jfn))

# wedge: (𝓕f)(ω, p¹) = ∫ f(x)e^{i(−ωx⁰+p¹x¹)} d²x, f = u₊e^{−u₊}·u₋e^{−u₋}, m = 1
for p1 in (0.0, 0.7):
    w = np.hypot(p1, 1.0)
    f = lambda x0, x1: (x0 + x1) * (x1 - x0) * np.exp(-2 * x1)
    re = integrate.dblquad(lambda x0, x1: f(x0, x1) * np.cos(-w * x0 + p1 * x1), 0, 30, lambda x1: -x1,
                           lambda x1: x1, epsabs=1e-13, epsrel=1e-12)[0]
    im = integrate.dblquad(lambda x0, x1: f(x0, x1) * np.sin(-w * x0 + p1 * x1), 0, 30, lambda x1: -x1,
                           lambda x1: x1, epsabs=1e-13, epsrel=1e-12)[0]
    print("wedge2d", p1, repr(re), repr(im))
