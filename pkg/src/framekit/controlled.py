"""Controlled K-frames: a positive invertible controller ``C`` commuting with
``K`` reweights the frame inequality through the form ``<C S f, f>``.

The controlled operator is the one-sided product ``L = C S`` — deliberately
not symmetrized.  When ``C`` commutes with ``S`` the product is Hermitian and
the form is real; when it does not, the Hermiticity check fails loudly rather
than silently averaging away the defect.  The lower inequality compares the
form against ``||C^{1/2} K* f||^2 = <K C K* f, f>``, so the certified optimum
is a generalized eigenvalue problem for the pencil ``(C S, K C K*)`` on
``range(K)``, exactly parallel to the uncontrolled case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CommutationError,
    NonHermitianComparisonError,
    NonRealFormError,
)
from .frames import FrameSequence, frame_operator
from .kframes import _pencil_minimum
from .operators import (
    DEFAULT_TOL,
    OperatorBounds,
    Tolerances,
    as_operator,
    as_vector,
    hermitian_part,
    is_hermitian,
    operator_leq,
    operator_norm,
    positive_definite_bounds,
    range_basis,
)

__all__ = [
    "Controller",
    "ControlledReport",
    "make_controller",
    "identity_controller",
    "commutes",
    "controlled_operator",
    "controlled_form",
    "controlled_kframe_check",
    "controlled_operator_inequality",
    "sandwich_inequality_check",
    "bounds_to_kframe",
    "bounds_to_controlled",
    "interchange_identity_check",
]


@dataclass(frozen=True)
class Controller:
    """A certified positive invertible operator with cached spectral kin.

    ``sqrt``, ``inv`` and ``inv_sqrt`` are assembled from one eigendecomposition
    so they commute with ``matrix`` to rounding and stay mutually consistent.
    ``bounds`` are the extreme eigenvalues.
    """

    matrix: np.ndarray
    sqrt: np.ndarray
    inv: np.ndarray
    inv_sqrt: np.ndarray
    bounds: OperatorBounds

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def condition(self) -> float:
        return self.bounds.condition


def make_controller(C, tol: Tolerances = DEFAULT_TOL) -> Controller:
    """Validate ``C`` as Hermitian positive definite and cache its roots."""
    M = as_operator(C)
    bounds = positive_definite_bounds(M, tol)
    w, Q = np.linalg.eigh(hermitian_part(M))
    Qh = Q.conj().T
    return Controller(
        matrix=M,
        sqrt=hermitian_part((Q * np.sqrt(w)) @ Qh),
        inv=hermitian_part((Q * (1.0 / w)) @ Qh),
        inv_sqrt=hermitian_part((Q * (1.0 / np.sqrt(w))) @ Qh),
        bounds=bounds,
    )


def identity_controller(dim: int) -> Controller:
    eye = np.eye(dim, dtype=np.complex128)
    return Controller(matrix=eye, sqrt=eye, inv=eye, inv_sqrt=eye, bounds=OperatorBounds(1.0, 1.0))


def commutes(ctrl: Controller, K, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether ``||C K - K C||_F <= rel_eq * ||C||_F * ||K||_F``."""
    Kop = as_operator(K, dim=ctrl.dim)
    defect = np.linalg.norm(ctrl.matrix @ Kop - Kop @ ctrl.matrix)
    scale = np.linalg.norm(ctrl.matrix) * np.linalg.norm(Kop)
    return bool(defect <= tol.rel_eq * max(1.0, scale))


def controlled_operator(frame: FrameSequence, ctrl: Controller) -> np.ndarray:
    """``L = C S``, one-sided by design; Hermiticity is checked, never imposed."""
    return ctrl.matrix @ frame_operator(frame)


def controlled_form(frame: FrameSequence, ctrl: Controller, f, tol: Tolerances = DEFAULT_TOL) -> float:
    """The quadratic form ``<C S f, f>``, required to be real.

    Equals the coefficient pairing ``sum_n <f, f_n> conj(<f, C f_n>)``.  The
    imaginary part must stay below ``rel_eq * ||C|| * ||S|| * ||f||^2``;
    a larger one means ``C S`` is materially non-Hermitian and the controlled
    theory does not apply to the pair.
    """
    v = as_vector(f, dim=frame.dim)
    S = frame_operator(frame)
    value = complex(np.vdot(v, ctrl.matrix @ (S @ v)))
    limit = tol.rel_eq * ctrl.bounds.upper * operator_norm(S) * float(np.vdot(v, v).real)
    if abs(value.imag) > max(limit, np.finfo(float).tiny):
        raise NonRealFormError(
            f"form has imaginary part {value.imag:.3e} beyond the admissible {limit:.3e}; "
            "C S is not Hermitian for this pair"
        )
    return float(value.real)


@dataclass(frozen=True)
class ControlledReport:
    """Verdict and certified constants for one ``(family, K, C)`` triple.

    Mirrors the uncontrolled report: ``lower_opt`` is the minimal quotient
    ``<C S f, f> / ||C^{1/2} K* f||^2`` over ``range(K)``; ``upper_opt`` is
    ``lambda_max(C S)``.  ``vacuous`` marks rank-zero ``K``.
    """

    commutes_with_k: bool
    form_is_real: bool
    is_controlled_kframe: bool
    lower_opt: float
    upper_opt: float
    rank_k: int
    vacuous: bool


def _require_real_product(frame: FrameSequence, ctrl: Controller, tol: Tolerances) -> np.ndarray:
    L = controlled_operator(frame, ctrl)
    if not is_hermitian(L, tol):
        defect = np.linalg.norm(L - L.conj().T) / max(1.0, np.linalg.norm(L))
        raise NonRealFormError(
            f"C S is not Hermitian (relative defect {defect:.3e}); "
            "the controlled form would not be real-valued"
        )
    return L


def controlled_kframe_check(frame: FrameSequence, K, ctrl: Controller, tol: Tolerances = DEFAULT_TOL) -> ControlledReport:
    """Decide the controlled K-frame property and certify optimal constants.

    Requires ``C K = K C`` and ``C S`` Hermitian; failing either is an error,
    not a negative verdict, because the controlled inequality is not even
    well-posed then.  The lower constant comes from the pencil
    ``(Q* C S Q, Q* K C K* Q)`` on an orthonormal basis ``Q`` of ``range(K)``.
    Scaling ``C`` by ``c > 0`` scales ``upper_opt`` by ``c`` and leaves
    ``lower_opt`` and the verdict unchanged.
    """
    Kop = as_operator(K, dim=frame.dim)
    if not commutes(ctrl, Kop, tol):
        raise CommutationError("controller does not commute with K within tolerance")
    L = _require_real_product(frame, ctrl, tol)
    upper = float(np.linalg.eigvalsh(hermitian_part(L))[-1])
    Q = range_basis(Kop, tol)
    rank = Q.shape[1]
    if rank == 0:
        return ControlledReport(
            commutes_with_k=True, form_is_real=True, is_controlled_kframe=True,
            lower_opt=0.0, upper_opt=upper, rank_k=0, vacuous=True,
        )
    weight = Kop @ ctrl.matrix @ Kop.conj().T          # <weight f, f> = ||C^(1/2) K* f||^2
    lower, _ = _pencil_minimum(hermitian_part(L), weight, Q)
    verdict = lower > tol.psd_slack * max(1.0, upper)
    return ControlledReport(
        commutes_with_k=True, form_is_real=True, is_controlled_kframe=bool(verdict),
        lower_opt=lower, upper_opt=upper, rank_k=rank, vacuous=False,
    )


def controlled_operator_inequality(frame: FrameSequence, K, ctrl: Controller, A: float, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Operator-inequality verdict: ``A * C K K* <= C S`` in the Loewner order.

    Both sides must be Hermitian — true whenever ``C`` commutes with ``K`` and
    with ``S`` — otherwise the comparison is refused.
    """
    Kop = as_operator(K, dim=frame.dim)
    left = A * (ctrl.matrix @ Kop @ Kop.conj().T)
    right = controlled_operator(frame, ctrl)
    if not is_hermitian(left, tol) or not is_hermitian(right, tol):
        raise NonHermitianComparisonError(
            "A * C K K* and C S must both be Hermitian for the Loewner comparison"
        )
    return operator_leq(hermitian_part(left), hermitian_part(right), tol)


def sandwich_inequality_check(frame: FrameSequence, K, ctrl: Controller, A: float, B: float, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Two-sided operator inequality ``A * K C K* <= C S <= B * I``.

    This is the operator form of the controlled frame inequality: the weight
    ``K C K*`` reproduces ``||C^{1/2} K* f||^2`` as a quadratic form.  With the
    certified optimal ``(A, B)`` from :func:`controlled_kframe_check` both
    comparisons hold with equality attained at the extremal directions.
    """
    Kop = as_operator(K, dim=frame.dim)
    L = controlled_operator(frame, ctrl)
    if not is_hermitian(L, tol):
        raise NonHermitianComparisonError("C S must be Hermitian for the sandwich comparison")
    Lh = hermitian_part(L)
    weight = hermitian_part(Kop @ ctrl.matrix @ Kop.conj().T)
    eye = np.eye(frame.dim, dtype=np.complex128)
    return operator_leq(A * weight, Lh, tol) and operator_leq(Lh, B * eye, tol)


def bounds_to_kframe(A: float, B: float, ctrl: Controller) -> tuple[float, float]:
    """Transfer controlled bounds ``(A, B)`` to uncontrolled K-frame bounds.

    Returns ``(A / ||C^{1/2}||^2, B * ||C^{-1/2}||^2)`` using the operator
    norms of the cached roots.  The upper transfer is always valid.  The lower
    transfer divides by ``lambda_max(C)``, so it is a valid (not optimal)
    lower K-frame bound whenever ``lambda_max(C) >= 1``; the commuting-family
    generator normalizes controllers to satisfy that, and callers supplying
    their own controllers with ``||C|| < 1`` should rescale first — scaling
    ``C`` never changes the controlled verdict.
    """
    return (
        A / operator_norm(ctrl.sqrt) ** 2,
        B * operator_norm(ctrl.inv_sqrt) ** 2,
    )


def bounds_to_controlled(
    A_prime: float,
    B_prime: float,
    ctrl: Controller,
    K=None,
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[float, float]:
    """Transfer K-frame bounds ``(A', B')`` to controlled bounds ``(A', B' * ||C||)``.

    Pass ``K`` to have the commutation hypothesis checked; the arithmetic
    itself needs only the controller.
    """
    if K is not None and not commutes(ctrl, K, tol):
        raise CommutationError("controller does not commute with K within tolerance")
    return (A_prime, B_prime * operator_norm(ctrl.matrix))


def interchange_identity_check(frame: FrameSequence, ctrl: Controller, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether the controller may change sides in the weighted sum.

    The two weighted synthesis sums are the actions of ``C S`` and ``S C``, so
    the identity is exactly commutation:
    ``||C S - S C||_F <= rel_eq * ||C||_F * ||S||_F``.  Requires the form to
    be real-valued in the first place (``C S`` Hermitian); a materially
    non-Hermitian product raises instead of returning a verdict, because then
    neither sum defines a controlled frame expression.
    """
    S = frame_operator(frame)
    L = ctrl.matrix @ S
    if not is_hermitian(L, tol):
        raise NonRealFormError("C S is not Hermitian; the interchange identity is not applicable")
    defect = np.linalg.norm(L - S @ ctrl.matrix)
    scale = np.linalg.norm(ctrl.matrix) * np.linalg.norm(S)
    return bool(defect <= tol.rel_eq * max(1.0, scale))
