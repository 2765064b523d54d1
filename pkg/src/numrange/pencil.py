"""The pencil determinant p(y) and the planar LMI set F(A).

Everything lives in the affine chart y0 = 1, where the origin is interior by
construction (F at the origin is the identity).  Boundary points are found by
ray shooting: along direction d the set is left where the smallest eigenvalue
of d1*A1 + d2*A2 hits -1/t.  Unboundedness is an explicit marker, never a
large float.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactpoly import (
    GaussianRational,
    TriPoly,
    det_poly_matrix,
    sturm_real_root_count,
    uni_squarefree,
)
from .hermitian import HermitianPencil, NonHermitianError

__all__ = [
    "PencilCurve",
    "RayExit",
    "CurveSample",
    "CurveSampleSet",
    "pencil_det",
    "lmi_member",
    "ray_exit",
    "boundary_F",
    "boundary_csv",
    "hyperbolicity_check",
    "HyperbolicityReport",
    "LmiPolytope",
    "lmi_polytope_vertices",
    "restrict_to_line",
    "line_roots_from_eigs",
]

YVARS = ("y0", "y1", "y2")

BOUNDARY_TOL = 1e-9          # |lambda_min| window declaring a point "on" the boundary
UNBOUNDED_CUT = 1e-12        # lambda_min above -cut*scale counts as non-negative


@dataclass(frozen=True)
class PencilCurve:
    """The determinant form p(y) of a Hermitian pencil, p(1,0,0) = 1."""

    p: TriPoly
    pencil: HermitianPencil

    def __post_init__(self):
        if self.p.eval((Fraction(1), Fraction(0), Fraction(0))) != 1:
            raise ValueError("pencil determinant must satisfy p(1,0,0) = 1")
        if not self.p.is_homogeneous() or self.p.total_degree() != self.pencil.n:
            raise ValueError("pencil determinant must be homogeneous of degree n")

    @property
    def degree(self) -> int:
        return self.pencil.n


@dataclass(frozen=True)
class RayExit:
    direction: tuple[float, float]
    t_exit: float                      # math.inf marks an unbounded direction
    point: tuple[float, float] | None  # (t*d1, t*d2) when finite
    lambda_min_at_exit: float | None   # lambda_min(F(1, point)), ~0 when finite

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.t_exit)


@dataclass(frozen=True)
class CurveSample:
    theta: float
    point: tuple[float, float] | None
    lambda_min: float | None = None
    root_index: int | None = None
    singular: bool = False


@dataclass
class CurveSampleSet:
    """Ordered affine samples of a curve or boundary, with chart metadata."""

    chart: str
    samples: list[CurveSample] = field(default_factory=list)
    all_unbounded: bool = False

    def finite_points(self) -> list[tuple[float, float]]:
        return [s.point for s in self.samples if s.point is not None]


def pencil_det(pencil: HermitianPencil) -> PencilCurve:
    """Exact det(y0*I + y1*A1 + y2*A2); imaginary parts must cancel exactly."""
    n = pencil.n
    a1, a2 = pencil.A1.entries, pencil.A2.entries
    real_input = pencil.A1.is_real() and pencil.A2.is_real()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {}
            if i == j:
                terms[(1, 0, 0)] = Fraction(1)
            if real_input:
                if a1[i][j]:
                    terms[(0, 1, 0)] = a1[i][j].re
                if a2[i][j]:
                    terms[(0, 0, 1)] = a2[i][j].re
            else:
                if i == j:
                    terms[(1, 0, 0)] = GaussianRational.ONE
                if a1[i][j]:
                    terms[(0, 1, 0)] = a1[i][j]
                if a2[i][j]:
                    terms[(0, 0, 1)] = a2[i][j]
            row.append(TriPoly(YVARS, terms))
        rows.append(row)
    det = det_poly_matrix(rows)
    if det.has_gaussian_coeffs():
        re, im = det.real_imag()
        if not im.is_zero():
            raise NonHermitianError(
                "pencil determinant has a nonzero imaginary residue; pencil is not Hermitian")
        det = re
    return PencilCurve(det, pencil)


def lmi_member(pencil: HermitianPencil, y: tuple[float, float],
               tol: float = BOUNDARY_TOL) -> bool:
    """Membership y in F(A): lambda_min(F(1, y1, y2)) >= -tol."""
    f1, f2 = pencil.float_parts()
    F = np.eye(pencil.n) + float(y[0]) * f1 + float(y[1]) * f2
    w = np.linalg.eigvalsh(F)
    return bool(w[0] >= -tol)


def ray_exit(pencil: HermitianPencil, direction: tuple[float, float]) -> RayExit:
    """Exit of the ray t*(d1,d2), t >= 0, from F(A)."""
    d1, d2 = float(direction[0]), float(direction[1])
    nrm = math.hypot(d1, d2)
    if abs(nrm - 1.0) > 1e-12:
        raise ValueError(f"direction must be a unit vector (got norm {nrm!r})")
    H = pencil.combo(d1, d2)
    w = np.linalg.eigvalsh(H)
    lam_min = float(w[0])
    scale = max(1.0, float(np.abs(w).max()))
    if lam_min >= -UNBOUNDED_CUT * scale:
        return RayExit((d1, d2), math.inf, None, None)
    t = -1.0 / lam_min
    point = (t * d1, t * d2)
    F = np.eye(pencil.n) + point[0] * pencil.float_parts()[0] + point[1] * pencil.float_parts()[1]
    lam_at = float(np.linalg.eigvalsh(F)[0])
    return RayExit((d1, d2), t, point, lam_at)


def boundary_F(pencil: HermitianPencil, N: int) -> CurveSampleSet:
    """Polygonal boundary of F(A): N ray exits at equally spaced angles."""
    if N < 3:
        raise ValueError("need at least 3 angles")
    f1, f2 = pencil.float_parts()
    if pencil.A1.is_zero() and pencil.A2.is_zero():
        return CurveSampleSet(chart="y0=1", samples=[], all_unbounded=True)
    thetas = [2.0 * math.pi * k / N for k in range(N)]
    stack = np.array([math.cos(t) * f1 + math.sin(t) * f2 for t in thetas])
    w = np.linalg.eigvalsh(stack)
    lam_min = w[:, 0]
    scale = np.maximum(1.0, np.abs(w).max(axis=1))
    samples = []
    finite_pts = []
    for k, th in enumerate(thetas):
        lm = float(lam_min[k])
        if lm >= -UNBOUNDED_CUT * float(scale[k]):
            samples.append(CurveSample(theta=th, point=None, lambda_min=None))
            continue
        t = -1.0 / lm
        pt = (t * math.cos(th), t * math.sin(th))
        finite_pts.append((k, pt))
        samples.append(CurveSample(theta=th, point=pt, lambda_min=None))
    # lambda_min at all finite exit points in one batch
    if finite_pts:
        Fs = np.array([np.eye(pencil.n) + p[0] * f1 + p[1] * f2 for _, p in finite_pts])
        lams = np.linalg.eigvalsh(Fs)[:, 0]
        for (k, _), lam in zip(finite_pts, lams):
            s = samples[k]
            samples[k] = CurveSample(theta=s.theta, point=s.point, lambda_min=float(lam))
    return CurveSampleSet(chart="y0=1", samples=samples,
                          all_unbounded=not finite_pts)


def boundary_csv(samples: CurveSampleSet) -> str:
    """CSV per the boundary interface: theta,y1,y2,lambda_min ('inf' when unbounded)."""
    lines = ["theta,y1,y2,lambda_min"]
    for s in samples.samples:
        if s.point is None:
            lines.append(f"{s.theta:.12g},inf,inf,inf")
        else:
            lines.append(f"{s.theta:.12g},{s.point[0]:.12g},{s.point[1]:.12g},{s.lambda_min:.12g}")
    return "\n".join(lines) + "\n"


def restrict_to_line(p: TriPoly, d1: Fraction, d2: Fraction) -> list[Fraction]:
    """Exact coefficients of t -> p(1, t*d1, t*d2), ascending."""
    deg = max(0, p.total_degree())
    coeffs = [Fraction(0)] * (deg + 1)
    for (a, b, c), coef in p.terms.items():
        coeffs[b + c] += coef * d1**b * d2**c
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def line_roots_from_eigs(eigs: np.ndarray) -> list[tuple[int, float]]:
    """Real roots t = -1/lambda of det(I + t*H), tagged by eigenvalue index."""
    out = []
    scale = max(1.0, float(np.abs(eigs).max())) if len(eigs) else 1.0
    for idx, lam in enumerate(eigs):
        if abs(lam) > 1e-14 * scale:
            out.append((idx, -1.0 / float(lam)))
    return out


@dataclass(frozen=True)
class LineCheck:
    direction: tuple[Fraction, Fraction]
    degree: int
    distinct_real_roots: int
    distinct_roots_expected: int
    all_real: bool
    eig_residual_max: float
    imag_residue_max: float


@dataclass
class HyperbolicityReport:
    lines: list[LineCheck]

    @property
    def ok(self) -> bool:
        return all(l.all_real for l in self.lines)

    @property
    def max_imag_residue(self) -> float:
        return max((l.imag_residue_max for l in self.lines), default=0.0)

    @property
    def max_eig_residual(self) -> float:
        return max((l.eig_residual_max for l in self.lines), default=0.0)


def hyperbolicity_check(curve: PencilCurve, trials: int = 24,
                        seed: int = 20259) -> HyperbolicityReport:
    """Real-zero check: every line through the origin meets p = 0 in real points only.

    Verified two ways per line: Sturm root counting on the exact restriction,
    and residuals of the roots predicted by pencil eigenvalues.
    """
    if trials < 1:
        raise ValueError("need at least one trial line")
    rng = random.Random(seed)
    f1, f2 = curve.pencil.float_parts()
    checks = []
    for _ in range(trials):
        while True:
            d1 = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            d2 = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            if d1 or d2:
                break
        coeffs = restrict_to_line(curve.p, d1, d2)
        sf = uni_squarefree(coeffs)
        deg_sf = len(sf) - 1
        distinct = sturm_real_root_count(coeffs)
        all_real = distinct == deg_sf
        # eigenvalue cross-check
        H = float(d1) * f1 + float(d2) * f2
        eigs = np.linalg.eigvalsh(H)
        fl = [float(c) for c in coeffs]
        resid = 0.0
        for _, t in line_roots_from_eigs(eigs):
            val = 0.0
            mag = 0.0
            for k, c in enumerate(fl):
                term = c * t**k
                val += term
                mag = max(mag, abs(term))
            resid = max(resid, abs(val) / max(mag, 1e-300))
        roots = np.roots(fl[::-1]) if len(fl) > 1 else np.array([])
        imag_max = float(np.abs(roots.imag).max()) if roots.size else 0.0
        rel_imag = imag_max / max(1.0, float(np.abs(roots).max())) if roots.size else 0.0
        checks.append(LineCheck(
            direction=(d1, d2), degree=len(coeffs) - 1,
            distinct_real_roots=distinct, distinct_roots_expected=deg_sf,
            all_real=all_real, eig_residual_max=resid, imag_residue_max=rel_imag))
    return HyperbolicityReport(checks)


@dataclass(frozen=True)
class LmiPolytope:
    """Exact chart-plane structure of {y : each linear factor >= 0}.

    `vertices` are the true vertices of the feasible region (which may be
    unbounded); `facet_line_vertices` are all pairwise intersections of the
    non-redundant boundary lines, the triangle-like frame the facets sit on.
    """

    vertices: tuple[tuple[Fraction, Fraction], ...]
    bounded: bool
    facet_line_vertices: tuple[tuple[Fraction, Fraction], ...]


def _ccw_sorted(verts: list[tuple[Fraction, Fraction]]):
    if len(verts) > 2:
        cx = sum(v[0] for v in verts) / len(verts)
        cy = sum(v[1] for v in verts) / len(verts)
        verts = sorted(verts, key=lambda v: math.atan2(float(v[1] - cy), float(v[0] - cx)))
    return tuple(verts)


def _line_is_facet(i: int, lines) -> bool:
    """Does line i carry a one-dimensional face of the feasible set?"""
    c0, c1, c2 = lines[i]
    if c1 == 0 and c2 == 0:
        return False
    # base point on the line and a direction along it
    if c1:
        p0 = (-c0 / c1, Fraction(0))
    else:
        p0 = (Fraction(0), -c0 / c2)
    d = (-c2, c1)
    lo, hi = None, None  # None = unbounded on that side
    for j, (b0, b1, b2) in enumerate(lines):
        if j == i:
            continue
        alpha = b0 + b1 * p0[0] + b2 * p0[1]
        beta = b1 * d[0] + b2 * d[1]
        if beta == 0:
            if alpha < 0:
                return False
            continue
        bound = -alpha / beta
        if beta > 0:
            if lo is None or bound > lo:
                lo = bound
        else:
            if hi is None or bound < hi:
                hi = bound
    if lo is not None and hi is not None and lo >= hi:
        return False
    return True


def _recession_nontrivial(lines) -> bool:
    """Is there a direction d != 0 with all linear parts non-negative along d?"""
    normals = [(c1, c2) for _, c1, c2 in lines if c1 or c2]
    if not normals:
        return True
    for n1, n2 in normals:
        for d in ((-n2, n1), (n2, -n1)):
            if all(a * d[0] + b * d[1] >= 0 for a, b in normals):
                return True
    return False


def lmi_polytope_vertices(factors: list[TriPoly]) -> LmiPolytope:
    """Exact vertex structure of the polyhedral LMI set cut out by linear factors.

    Factors are homogeneous linear forms, sign-normalized to be positive at
    the origin (which the LMI set always contains); vertices come out
    counter-clockwise.
    """
    lines = []
    for f in factors:
        if f.is_zero() or f.total_degree() != 1:
            raise ValueError("factors must be nonzero linear forms")
        c0 = f.terms.get((1, 0, 0), Fraction(0))
        c1 = f.terms.get((0, 1, 0), Fraction(0))
        c2 = f.terms.get((0, 0, 1), Fraction(0))
        if c0 < 0:
            c0, c1, c2 = -c0, -c1, -c2
        elif c0 == 0:
            raise ValueError("factor line passes through the origin; chart vertex set undefined")
        lines.append((c0, c1, c2))
    facet_idx = [i for i in range(len(lines)) if _line_is_facet(i, lines)]
    verts: list[tuple[Fraction, Fraction]] = []
    frame: list[tuple[Fraction, Fraction]] = []
    for ii, i in enumerate(facet_idx):
        a0, a1, a2 = lines[i]
        for j in facet_idx[ii + 1:]:
            b0, b1, b2 = lines[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            y1 = (-a0 * b2 + a2 * b0) / det
            y2 = (-a1 * b0 + a0 * b1) / det
            if (y1, y2) not in frame:
                frame.append((y1, y2))
            feasible = all(c0 + c1 * y1 + c2 * y2 >= 0 for c0, c1, c2 in lines)
            if feasible and (y1, y2) not in verts:
                verts.append((y1, y2))
    return LmiPolytope(vertices=_ccw_sorted(verts),
                       bounded=not _recession_nontrivial(lines),
                       facet_line_vertices=_ccw_sorted(frame))
