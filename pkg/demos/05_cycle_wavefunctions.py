"""Single-cycle wave functions: localization, flattening, phases.

The normalized wave function of one n-cycle through a point y on the
torus [0, L)^d has two equal closed forms: a product of theta-weighted
plane waves and a periodized Gaussian image sum.  Short cycles are
thermal wave packets localized at y; as n grows the packet width
sqrt(n) lambda overtakes the box and the state flattens into the
constant condensate mode L^{-d/2}.  A center-of-mass shift adds a plane
wave phase without changing the flattening.

Run with:  python3 demos/05_cycle_wavefunctions.py
"""

import numpy as np

from bosecycles import (
    CycleWaveParams,
    psi_gaussian_form,
    psi_planewave_form,
    psi_shifted,
    wave_profile,
)

L, lam = 4.0, 1.0

print("=" * 72)
print("1. two closed forms, one function")
print("=" * 72)

params = CycleWaveParams(n=6, L=L, lam=lam, y=(1.0, 2.5))
x = (1.3, 2.1)
pw = psi_planewave_form(params, x)
ga = psi_gaussian_form(params, x)
print(f"\nn = 6 cycle at y = {params.y} in d = 2, evaluated at x = {x}:")
print(f"  theta-weighted plane waves : {pw.real:.15f}")
print(f"  periodized Gaussian sum    : {ga:.15f}")
print(f"  difference                 : {abs(pw - ga):.2e}")

print("""
Reading: the plane-wave form is the Fourier series of the Gaussian
image sum (Poisson summation), so the two evaluations agree to rounding
and cross-validate each other; the first is cheap for n lambda^2 >~ L^2,
the second for n lambda^2 <~ L^2, and both dispatch on that ratio.
""")

print("=" * 72)
print("2. localization against cycle length")
print("=" * 72)

print(f"\nd = 1, L = {L}, lambda = {lam}; packet width sqrt(n) lambda vs box:")
print(f"{'n':>6} {'|psi(y)|':>12} {'|psi(y+L/2)|':>14} {'contrast':>12}")
for n in (1, 4, 16, 64, 256):
    p = CycleWaveParams(n=n, L=L, lam=lam, y=(0.0,))
    peak = abs(psi_planewave_form(p, (0.0,)))
    trough = abs(psi_planewave_form(p, (L / 2.0,)))
    print(f"{n:>6} {peak:>12.6f} {trough:>14.6f} {peak / trough:>12.4f}")

print(f"\nuniform condensate value L^(-1/2) = {L ** -0.5:.6f}")

print("""
Reading: a 1-cycle is a thermal packet of width lambda with a huge
peak-to-trough contrast; by n lambda^2 >> L^2 both columns collapse to
the constant L^{-1/2}.  Long cycles ARE the condensate mode in real
space, which is why macroscopic cycles and macroscopic zero-mode
occupation are the same phenomenon.
""")

print("=" * 72)
print("3. a center-of-mass shift only adds phase")
print("=" * 72)

n = 256
base = CycleWaveParams(n=n, L=L, lam=lam, y=(0.5,))
shifted = CycleWaveParams(n=n, L=L, lam=lam, y=(0.5,), xbar=(0.3,))
for t in (0.0, 1.0, 2.0):
    a = psi_shifted(base, (t,))
    b = psi_shifted(shifted, (t,))
    print(f"  x = {t:.1f}: |psi| unshifted {abs(a):.8f}, shifted {abs(b):.8f}, "
          f"shifted phase {np.angle(b):+.4f} rad")

print("""
Reading: at this n the modulus is flat to a few parts in 10^8 and the
shifted and unshifted columns agree at that level; what the shift adds
is the position-dependent phase, the real-space fingerprint of a moving
condensate.
""")

print("=" * 72)
print("4. profile export")
print("=" * 72)

p = CycleWaveParams(n=4, L=L, lam=lam, y=(1.0,))
rows = wave_profile(p, axis=0, num=33)
print(f"\n|psi|^2 for a 4-cycle, sampled at offsets t from y (33 samples):")
peak = max(r[3] for r in rows)
for t, re, im, a2 in rows[::2]:
    bar = "#" * int(40 * a2 / peak)
    print(f"  t = {t:>6.3f}  |psi|^2 = {a2:.6f}  {bar}")

norm = np.trapezoid([r[3] for r in rows] + [rows[0][3]], dx=L / 33)
print(f"\nperiodic trapezoid norm of |psi|^2 over [0, L): {norm:.9f}")

print("""
Reading: the exported rows are (offset along the axis, Re psi, Im psi,
|psi|^2); the packet peaks at t = 0 (the point y), wraps periodically
across the boundary, and integrates to 1 over one period, which the
closing trapezoid confirms.
""")
