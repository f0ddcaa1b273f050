#!/usr/bin/env python3
"""Quantum geometric tensor of parametrized eigenstates: the two-level
sphere family, an avoided crossing, and the finite-difference oracle."""

import numpy as np

from qpt import (
    HamiltonianFamily,
    bloch_family,
    finite_difference_qgt,
    landau_zener_family,
    qgt_tensor,
    spectral_state_derivative,
)

np.set_printoptions(precision=6, suppress=True)

# Ground state of n(theta, phi) . sigma.  The metric is the round sphere
# of radius 1/2: Re(h) = diag(1, sin^2 theta) / 4.
fam = bloch_family()
theta, phi = 1.0, 0.6
res = qgt_tensor(fam, [theta, phi], a=0)
print("sphere point (theta, phi) =", (theta, phi))
print("Re(h):\n", res.metric)
print("expected:\n", 0.25 * np.diag([1.0, np.sin(theta) ** 2]))
print("Im(h) [Berry-curvature part]:\n", res.h.imag)
print("gap:", res.gap, "\n")

# The independent oracle: phase-aligned finite differences of eigenvectors.
fd = finite_difference_qgt(fam, [theta, phi], a=0, step=1e-5)
print("spectral vs finite-difference max deviation:",
      np.abs(res.h - fd.h).max(), "\n")

# Avoided crossing lam * sz + delta * sx: the tensor at lam = 0 is
# delta^2 / (4 delta^4) and quadruples when the gap is halved.
for delta in (1.0, 0.5):
    lz = landau_zener_family(delta)
    h00 = qgt_tensor(lz, [0.0], a=0).h[0, 0]
    print(f"delta = {delta}: h_ll(0) = {h00.real:.6f}"
          f"   (closed form {delta**2 / (4 * delta**4):.6f})")

# The eigenstate derivative itself, from the spectral sum.
d = spectral_state_derivative(fam, [theta, phi], a=0, mu=0)
print("\n|d_theta psi| =", np.linalg.norm(d), " (1/2 for a two-level system)")

# Arbitrary families work through a callable plus finite differences.
w = 0.7
fam_custom = HamiltonianFamily.from_callable(
    lambda lam: np.array(
        [[np.cos(w * lam[0]), np.sin(w * lam[0])],
         [np.sin(w * lam[0]), -np.cos(w * lam[0])]],
        dtype=complex,
    ),
    param_dim=1,
)
print("custom family h_00 at lam=0.3:",
      qgt_tensor(fam_custom, [0.3], a=0).h[0, 0].real,
      " (w^2/4 =", w**2 / 4, ")")
