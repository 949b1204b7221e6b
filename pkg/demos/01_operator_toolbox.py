"""Tour of the dense-operator layer: roots, bounds, pseudo-inverses, order.

Run with:  python3 demos/01_operator_toolbox.py
"""

import numpy as np

from framekit import (
    inverse_bounds,
    operator_leq,
    operator_sqrt,
    positive_definite_bounds,
    pseudo_inverse,
    random_positive_operator,
)

rng = np.random.default_rng(7)

# A positive invertible operator and its certified spectral bounds.
T = random_positive_operator(rng, 5, spread=(0.5, 4.0))
b = positive_definite_bounds(T)
print(f"positive operator on C^5: bounds ({b.lower:.6f}, {b.upper:.6f}), "
      f"condition {b.condition:.3f}")

R = operator_sqrt(T)
print(f"square-root defect |R@R - T| = {np.linalg.norm(R @ R - T):.3e}")

ib = inverse_bounds(b)
print(f"inverse bounds ({ib.lower:.6f}, {ib.upper:.6f}) "
      f"— reciprocals of the originals, swapped")

# Loewner order: T <= upper * I and lower * I <= T, with numerical slack.
eye = np.eye(5)
print("order checks:",
      operator_leq(b.lower * eye, T), operator_leq(T, b.upper * eye))

# Pseudo-inverse of a rank-deficient map: the reconstruction projector.
U = np.zeros((4, 4), dtype=complex)
U[:3, :3] = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
P = pseudo_inverse(U)
x = U @ rng.normal(size=4)          # a vector in range(U)
print(f"U U^+ x = x on range(U): residual {np.linalg.norm(U @ P @ x - x):.3e}")
y = rng.normal(size=4) + 1j * rng.normal(size=4)
proj = U @ P                          # orthogonal projector onto range(U)
print(f"projector idempotency |(UU^+)^2 - UU^+| = "
      f"{np.linalg.norm(proj @ proj - proj):.3e}")
