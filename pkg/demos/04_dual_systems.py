"""Dual systems for K-frames: reconstruction on range(K), not the whole space.

For an ordinary frame the canonical dual reconstructs every vector.  For a
K-frame only vectors in range(K) are recoverable; the dual is built from the
pseudo-inverse of K and a factorization K = F G*.

Run with:  python3 demos/04_dual_systems.py
"""

import numpy as np

from framekit import (
    FrameSequence,
    haar_unitary,
    interchange_dual,
    parseval_frame,
    synthesis,
)

rng = np.random.default_rng(19)
d = 5

# A Parseval generating family G and a rank-3 operator K.
G = parseval_frame(rng, d, 11)
U = haar_unitary(rng, d)
K = (U[:, :3] * np.array([1.0, 0.7, 0.4])) @ haar_unitary(rng, d)[:, :3].conj().T
print(f"K has rank 3 on C^{d}; G is Parseval with {G.count} vectors")

# With F = {K g_n} the factorization K = F G* holds because S_G = I.
H = interchange_dual(G, K)
F = FrameSequence(K @ G.matrix)
print(f"dual system has {H.count} vectors (one per generator)")

# Both orderings reconstruct on range(K)...
f = K @ (rng.normal(size=d) + 1j * rng.normal(size=d))
rec_dual = synthesis(F, H.matrix.conj().T @ f)
rec_frame = synthesis(H, F.matrix.conj().T @ f)
print(f"residuals for f in range(K):  {np.linalg.norm(f - rec_dual):.3e} "
      f"/ {np.linalg.norm(f - rec_frame):.3e}")

# ... but not outside it: the pair only sees the range.
g = U[:, 4]                       # orthogonal to range(K)
rec = synthesis(F, H.matrix.conj().T @ g)
print(f"for g orthogonal to range(K) the reconstruction returns "
      f"|rec| = {np.linalg.norm(rec):.3e} (the projection of g: zero)")

# Identity K: the construction degenerates to the canonical dual of G itself.
H_id = interchange_dual(G, np.eye(d))
print(f"K = I on a Parseval frame: |H - G| = "
      f"{np.linalg.norm(H_id.matrix - G.matrix):.3e} (self-dual)")
