"""Frames in C^d: synthesis, analysis, the frame operator, optimal bounds.

Run with:  python3 demos/02_frames_and_bounds.py
"""

import numpy as np

from framekit import (
    FrameSequence,
    analysis,
    frame_bounds,
    frame_operator,
    parseval_frame,
    random_frame,
    synthesis,
)

rng = np.random.default_rng(11)

# Three unit vectors at 120 degrees: the classic tight frame for R^2.
angles = np.array([0.0, 2 * np.pi / 3, 4 * np.pi / 3])
mercedes = FrameSequence(np.vstack([np.cos(angles), np.sin(angles)]))
fb = frame_bounds(mercedes)
print(f"three equiangular unit vectors in R^2: bounds "
      f"({fb.lower:.6f}, {fb.upper:.6f}) — tight, S = 1.5 I")

# A generic random frame: bounds are the extreme eigenvalues of S = F F*.
frame = random_frame(rng, 4, 9)
S = frame_operator(frame)
fb = frame_bounds(frame)
w = np.linalg.eigvalsh(S)
print(f"random frame (9 vectors in C^4): bounds ({fb.lower:.6f}, {fb.upper:.6f})")
print(f"  agree with eigenvalues of S: ({w[0]:.6f}, {w[-1]:.6f})")

# Analysis then synthesis applies S.
f = rng.normal(size=4) + 1j * rng.normal(size=4)
print(f"  |T T* f - S f| = {np.linalg.norm(synthesis(frame, analysis(frame, f)) - S @ f):.3e}")

# Parseval frames reconstruct with their own coefficients.
pf = parseval_frame(rng, 4, 10)
rec = synthesis(pf, analysis(pf, f))
print(f"Parseval frame: |f - T T* f| = {np.linalg.norm(f - rec):.3e} (S = I)")

# A family that spans too little is only a Bessel sequence.
deficient = FrameSequence(np.array([[1.0, 0.5], [0.0, 0.0], [0.0, 0.0]]))
fb = frame_bounds(deficient)
print(f"two collinear vectors in C^3: lower bound {fb.lower} "
      f"(no frame), upper bound {fb.upper:.6f} (still Bessel)")
