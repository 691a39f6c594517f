"""Closed-form bounds on the extreme eigenvalues of a bordered matrix.

All functions take scalar summaries (top eigenvalue of ``M``, the corner ``c``,
norms of the border vector, ...) and return plain floats or a
:class:`BoundReport`. A bound that is undefined for the given inputs is
returned as ``None`` rather than raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import InputError
from .linalg import (
    BorderedSpec,
    assemble_bordered,
    jacobi_eigen,
    leading_projection_norm,
)

__all__ = [
    "BoundReport",
    "LiLiInputs",
    "IpsenNadlerInputs",
    "OpNormBounds",
    "lili_radius",
    "lili_two_sided",
    "lili_literature_form",
    "weyl_arrowhead",
    "mathias_arrowhead",
    "weyl_rank_one",
    "smallest_nonzero_lower",
    "smallest_nonzero_corollaries",
    "opnorm_bounds",
    "ipsen_nadler",
    "ipsen_nadler_inputs",
    "lili_inputs",
    "bordered_bounds",
]

# |lambda_1 - c| at or below this (times 1 + |lambda_1| + |c|) makes Mathias undefined
MATHIAS_RTOL = 1e-12


@dataclass(frozen=True)
class BoundReport:
    method: str
    lower: float | None = None
    upper: float | None = None
    exact: float | None = None

    @property
    def slack_lower(self) -> float | None:
        if self.lower is None or self.exact is None:
            return None
        return self.exact - self.lower

    @property
    def slack_upper(self) -> float | None:
        if self.upper is None or self.exact is None:
            return None
        return self.upper - self.exact

    def with_exact(self, exact: float) -> "BoundReport":
        return replace(self, exact=float(exact))

    def holds(self, atol: float = 0.0) -> bool:
        """True when every present bound brackets ``exact`` up to ``atol``."""
        if self.exact is None:
            return True
        lo, up = self.slack_lower, self.slack_upper
        return (lo is None or lo >= -atol) and (up is None or up >= -atol)

    def to_dict(self) -> dict:
        out = {"method": self.method}
        for key in ("lower", "upper", "exact", "slack_lower", "slack_upper"):
            val = getattr(self, key)
            if val is not None:
                out[key] = float(val)
        return out


@dataclass(frozen=True)
class LiLiInputs:
    lambda1: float
    c: float
    a_norm: float
    a_dot_v1: float

    def __post_init__(self):
        if self.a_norm < 0.0:
            raise InputError("a_norm must be nonnegative")
        if abs(self.a_dot_v1) > self.a_norm + 1e-12 * (1.0 + self.a_norm):
            raise InputError("|<a, V1>| exceeds ||a|| (Cauchy-Schwarz violated)")


@dataclass(frozen=True)
class IpsenNadlerInputs:
    lambda1: float
    lambda2: float
    x_norm_sq: float
    proj12_sq: float
    proj2_sq: float
    proj_rest_sq: float

    def __post_init__(self):
        tol = 1e-12 * (1.0 + self.x_norm_sq)
        if self.lambda1 < self.lambda2:
            raise InputError("lambda1 must be >= lambda2")
        if min(self.proj2_sq, self.proj12_sq, self.proj_rest_sq) < -tol:
            raise InputError("projection norms must be nonnegative")
        if self.proj2_sq > self.proj12_sq + tol or self.proj12_sq > self.x_norm_sq + tol:
            raise InputError("need proj2_sq <= proj12_sq <= x_norm_sq")
        if self.proj_rest_sq > self.x_norm_sq + tol:
            raise InputError("need proj_rest_sq <= x_norm_sq")


def lili_radius(eta: float, s: float) -> float:
    """``2 s / (eta + sqrt(eta^2 + 4 s))`` with the 0/0 case set to 0.

    ``s`` is a squared norm, ``eta >= 0`` a gap. Equals
    ``(sqrt(eta^2 + 4 s) - eta) / 2`` without the cancellation.
    """
    if s <= 0.0:
        return 0.0
    return 2.0 * s / (eta + math.sqrt(eta * eta + 4.0 * s))


def lili_two_sided(inp: LiLiInputs) -> BoundReport:
    top = max(inp.c, inp.lambda1)
    eta = abs(inp.c - inp.lambda1)
    lower = top + lili_radius(eta, inp.a_dot_v1 ** 2)
    upper = top + lili_radius(eta, inp.a_norm ** 2)
    return BoundReport("lili", lower=lower, upper=upper)


def lili_literature_form(lambda1: float, c: float, a_norm: float) -> float:
    """Radius of the symmetric interval around ``max(c, lambda1)``."""
    return lili_radius(abs(c - lambda1), a_norm * a_norm)


def weyl_arrowhead(lambda1: float, c: float, a_norm: float) -> float:
    return max(c, lambda1) + a_norm


def _gap_available(lam, c):
    return abs(lam - c) > MATHIAS_RTOL * (1.0 + abs(lam) + abs(c))


def mathias_arrowhead(lambda1: float, c: float, a_norm: float) -> float | None:
    if not _gap_available(lambda1, c):
        return None
    return max(c, lambda1) + a_norm * a_norm / abs(lambda1 - c)


def weyl_rank_one(lambda1_m: float, x_norm_sq: float) -> float:
    if x_norm_sq < 0.0:
        raise InputError("x_norm_sq must be nonnegative")
    return lambda1_m + x_norm_sq


def smallest_nonzero_lower(lambda_r: float, c: float, a_norm: float, r: int) -> float:
    """Lower bound on ``lambda_{r+1}(A)`` when ``M`` is PSD of rank ``r``.

    ``lambda_r`` is the smallest nonzero eigenvalue of ``M``.
    """
    if lambda_r <= 0.0:
        raise InputError("lambda_r must be the (positive) smallest nonzero eigenvalue")
    if r < 1:
        raise InputError("rank r must be at least 1")
    return min(c, lambda_r) - lili_radius(abs(c - lambda_r), a_norm * a_norm)


def smallest_nonzero_corollaries(lambda_r: float, c: float, a_norm: float):
    """``(weyl, mathias)`` lower bounds on ``lambda_{r+1}(A)``; mathias may be None."""
    if lambda_r <= 0.0:
        raise InputError("lambda_r must be the (positive) smallest nonzero eigenvalue")
    base = min(c, lambda_r)
    weyl = base - a_norm
    mathias = base - a_norm * a_norm / abs(c - lambda_r) if _gap_available(lambda_r, c) else None
    return weyl, mathias


class OpNormBounds(NamedTuple):
    b1: float
    b2: float | None
    b3: float


def opnorm_bounds(m_norm: float, c: float, a_norm: float, lambda1_m: float) -> OpNormBounds:
    """Three upper bounds on ``||A||`` from ``||M||``, ``c`` and ``||a||``.

    For ``c >= 0`` these are exactly the textbook forms. The corner enters
    through ``|c|`` because ``||A||`` also controls ``-lambda_min(A)``, which
    the ``-A`` half of the argument bounds with ``-c`` in place of ``c``.
    ``b2`` requires ``c <= lambda_1(M)`` and ``|c| < ||M||``.
    """
    if m_norm <= 0.0:
        raise InputError("||M|| must be positive (b3 divides by it)")
    if a_norm < 0.0:
        raise InputError("a_norm must be nonnegative")
    s = a_norm * a_norm
    ac = abs(c)
    b1 = max(ac, m_norm) + a_norm
    b2 = None
    if c <= lambda1_m and _gap_available(m_norm, ac) and m_norm > ac:
        b2 = m_norm + s / (m_norm - ac)
    b3 = m_norm + ac / 2.0 + (s + c * c / 8.0) / m_norm
    return OpNormBounds(b1, b2, b3)


def ipsen_nadler(inp: IpsenNadlerInputs) -> BoundReport:
    gap = inp.lambda1 - inp.lambda2

    def delta(head, tail_sq):
        disc = (gap + head) ** 2 - 4.0 * gap * tail_sq
        if disc < 0.0:
            if disc < -1e-12 * (1.0 + (gap + head) ** 2):
                raise InputError(f"negative discriminant {disc!r}")
            disc = 0.0
        return 0.5 * (head - gap + math.sqrt(disc))

    lower = inp.lambda1 + delta(inp.proj12_sq, inp.proj2_sq)
    upper = inp.lambda1 + delta(inp.x_norm_sq, inp.proj_rest_sq)
    return BoundReport("ipsen_nadler", lower=lower, upper=upper)


def ipsen_nadler_inputs(mt, x) -> IpsenNadlerInputs:
    """Projection norms of ``x`` in the eigenbasis of ``mt`` (``d >= 2``)."""
    sp = jacobi_eigen(mt)
    x = np.asarray(x, dtype=float)
    if sp.dim < 2:
        raise InputError("need dimension >= 2 for a second eigenvalue")
    coef = sp.eigenvectors.T @ x
    sq = coef * coef
    return IpsenNadlerInputs(
        lambda1=float(sp.eigenvalues[0]),
        lambda2=float(sp.eigenvalues[1]),
        x_norm_sq=float(x @ x),
        proj12_sq=float(sq[0] + sq[1]),
        proj2_sq=float(sq[1]),
        proj_rest_sq=float(sq[1:].sum()),
    )


def lili_inputs(spec: BorderedSpec, spectrum=None) -> LiLiInputs:
    """Scalar summaries of ``spec`` for :func:`lili_two_sided`.

    When the top eigenvalue of ``M`` is repeated, ``a_dot_v1`` is the norm of
    the projection of ``a`` onto the whole top eigenspace.
    """
    sp = spectrum if spectrum is not None else jacobi_eigen(spec.m)
    a_norm = float(np.linalg.norm(spec.a))
    proj = min(leading_projection_norm(sp, spec.a), a_norm)
    return LiLiInputs(float(sp.eigenvalues[0]), spec.c, a_norm, proj)


def bordered_bounds(spec: BorderedSpec, exact: bool = True) -> dict[str, BoundReport]:
    """Every applicable bound for the bordered matrix of ``spec``.

    Keys: ``lili``, ``weyl``, ``mathias`` (if defined), ``lili_literature``,
    ``opnorm_b1``/``b2``/``b3`` and, for PSD ``M`` with a positive smallest
    nonzero eigenvalue, ``smallest_nonzero``/``_weyl``/``_mathias``. With
    ``exact`` the Jacobi oracle fills in the exact values.
    """
    sp = jacobi_eigen(spec.m)
    lam = sp.eigenvalues
    li = lili_inputs(spec, sp)
    top = max(spec.c, li.lambda1)
    out = {"lili": lili_two_sided(li)}
    out["weyl"] = BoundReport("weyl", upper=weyl_arrowhead(li.lambda1, spec.c, li.a_norm))
    mat = mathias_arrowhead(li.lambda1, spec.c, li.a_norm)
    if mat is not None:
        out["mathias"] = BoundReport("mathias", upper=mat)
    rad = lili_literature_form(li.lambda1, spec.c, li.a_norm)
    out["lili_literature"] = BoundReport("lili_literature", lower=top - rad, upper=top + rad)

    m_norm = float(max(abs(lam[0]), abs(lam[-1])))
    if m_norm > 0.0:
        ob = opnorm_bounds(m_norm, spec.c, li.a_norm, li.lambda1)
        for name, val in ob._asdict().items():
            if val is not None:
                out[f"opnorm_{name}"] = BoundReport(f"opnorm_{name}", upper=val)

    zero_tol = 1e-9 * (1.0 + abs(lam[0]))
    r = int(np.count_nonzero(lam > zero_tol))
    psd = lam[-1] >= -zero_tol
    if psd and r >= 1:
        lam_r = float(lam[r - 1])
        snl = smallest_nonzero_lower(lam_r, spec.c, li.a_norm, r)
        weyl_r, mathias_r = smallest_nonzero_corollaries(lam_r, spec.c, li.a_norm)
        out["smallest_nonzero"] = BoundReport("smallest_nonzero", lower=snl)
        out["smallest_nonzero_weyl"] = BoundReport("smallest_nonzero_weyl", lower=weyl_r)
        if mathias_r is not None:
            out["smallest_nonzero_mathias"] = BoundReport("smallest_nonzero_mathias", lower=mathias_r)

    if exact:
        lam_a = jacobi_eigen(assemble_bordered(spec)).eigenvalues
        a_norm_exact = float(max(abs(lam_a[0]), abs(lam_a[-1])))
        for key, rep in out.items():
            if key.startswith("opnorm"):
                out[key] = rep.with_exact(a_norm_exact)
            elif key.startswith("smallest_nonzero"):
                out[key] = rep.with_exact(float(lam_a[r]))
            else:
                out[key] = rep.with_exact(float(lam_a[0]))
    return out
