"""A binary unitary channel: correctable does not imply unitarily correctable.

E(rho) = p rho + (1-p) U rho U^dag with U having four distinct
eigenvalues exp(i theta_j).  The fixed-point algebra of E^dag ∘ E is
four one-dimensional sectors, so only classical information survives
passively.  Yet the channel has a genuine qubit code: where the chords
[l1, l3] and [l2, l4] of the unit circle intersect, the two
superpositions built from matching eigenvector pairs span a correctable
subspace.  Recovery needs a genuinely larger output subsystem
(dim C = 2 > dim A = 1), which is exactly why no single unitary can
correct it.
"""

import numpy as np

from subrec import (
    DemoSpec,
    check_correctable,
    compose,
    construct_recovery,
    demo_build,
    dual,
    embed_product,
    enumerate_noiseless,
)
from subrec.demos import intersect_chords
from subrec.linalg import dagger, operator_basis

p = 0.4
thetas = (0.3, 1.2, 2.5, 4.0)
channel, code = demo_build(DemoSpec(name="binary-unitary", p=p, thetas=thetas, seed=7))

s, t, lam = intersect_chords(thetas)
print(f"chord intersection: s = {s:.4f}, t = {t:.4f}, lambda = {lam:.4f} "
      f"(|lambda| = {abs(lam):.4f})")

u = channel.kraus[1] / np.sqrt(1 - p)
p_ab = code.p_ab
print(f"compression identity ||P U P - lambda P|| = "
      f"{np.linalg.norm(p_ab @ u @ p_ab - lam * p_ab):.2e}")

# Passive protection: nothing quantum survives E^dag ∘ E.
found = enumerate_noiseless(compose(dual(channel), channel), seed=0)
print(f"\nE^dag ∘ E fixed-point blocks (m_k, n_k): {found.structure.blocks}")
print(f"quantum noiseless subsystems: {len(found.subsystems)}; "
      f"classical sectors: {len(found.structure.classical_sectors)}")

# Active protection: the chord code is correctable, with a unitary recovery
# into a two-dimensional output subsystem C.
cert = check_correctable(channel, code)
print(f"\nchord code correctable: {cert.passed} (residual {cert.residual:.2e})")
result = construct_recovery(channel, code, cert)
print(f"recovery residual {result.residual:.2e}; dim C = {result.dim_c} "
      f"vs dim A = {code.d_a}")

# After recovery the code qubit rides along a fixed output state omega_C.
w_c = result.c_subsystem.w
sigma_b = operator_basis(2)[0]
out = result.u_recovery @ channel.apply(
    embed_product(code, np.eye(1), sigma_b)) @ dagger(result.u_recovery)
omega = dagger(w_c) @ out @ w_c
omega = np.einsum("ikjk->ij", omega.reshape(2, 2, 2, 2))
print(f"omega_C spectrum: {np.round(np.linalg.eigvalsh(omega), 6)} (trace "
      f"{np.trace(omega).real:.6f})")
