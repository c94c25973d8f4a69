"""Signed sums of relative-interior indicators and the identities they satisfy.

Every indicator is evaluated at an argument that is a linear function of
the pair z = (H, T) in V x V.  A cell therefore stores an n x 2n matrix
alongside its cone.  All cell conditions are homogeneous linear
(in)equalities in z, which lets a batch of rational sample points be
scaled to integers and evaluated exactly with numpy.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import linalg as la
from .cones import Cone, Face, Subspace, angle_cone, dual_cone, eps, intersect

ArgMap = tuple  # n x 2n rational matrix acting on z = (H, T)


# argument maps ---------------------------------------------------------------

def h_map(n: int, m=None) -> ArgMap:
    """z -> m H (m defaults to the identity)."""
    m = la.identity(n) if m is None else m
    return tuple(tuple(m[i]) + la.zeros(n) for i in range(n))


def t_map(n: int, m=None) -> ArgMap:
    """z -> m T."""
    m = la.identity(n) if m is None else m
    return tuple(la.zeros(n) + tuple(m[i]) for i in range(n))


def map_add(a: ArgMap, b: ArgMap) -> ArgMap:
    return tuple(la.add(r, s) for r, s in zip(a, b))


def map_sub(a: ArgMap, b: ArgMap) -> ArgMap:
    return tuple(la.sub(r, s) for r, s in zip(a, b))


def map_neg(a: ArgMap) -> ArgMap:
    return tuple(la.neg(r) for r in a)


def map_compose(p, a: ArgMap) -> ArgMap:
    """z -> p (a z) for an n x n matrix p."""
    return la.mat_mul(p, a)


def complement_projection(s: Subspace):
    n = s.n
    p = s.projection
    eye = la.identity(n)
    return tuple(la.sub(eye[i], p[i]) for i in range(n))


# cells -------------------------------------------------------------------------

_cells: dict = {}


class Cell:
    """Indicator of rint(cone) (or of the closed cone) at argument `amap` z."""

    __slots__ = ("cone", "amap", "closed", "empty", "__dict__")

    def __new__(cls, cone: Cone, amap: ArgMap | None = None, closed: bool = False,
                empty: bool = False):
        if amap is None:
            amap = h_map(cone.n)
        key = (cone.key, amap, closed, empty)
        hit = _cells.get(key)
        if hit is not None:
            return hit
        obj = super().__new__(cls)
        obj.cone = cone
        obj.amap = amap
        obj.closed = closed
        obj.empty = empty
        _cells[key] = obj
        return obj

    @cached_property
    def conditions(self):
        """Integer rows on z: (equalities, strict, weak) or None if never satisfied."""
        if self.empty:
            return None
        c = self.cone
        eqs, strict, weak = [], [], []
        for e in c.int_equations:
            r = la.vec_mat(e, self.amap)
            if not la.is_zero(r):
                eqs.append(la.primitive(r))
        target = weak if self.closed else strict
        for a in c.facet_covectors:
            r = la.vec_mat(a, self.amap)
            if la.is_zero(r):
                if not self.closed:
                    return None
                continue
            target.append(la.primitive(r))
        return eqs, strict, weak

    def evaluate(self, z: Sequence) -> int:
        cond = self.conditions
        if cond is None:
            return 0
        eqs, strict, weak = cond
        if any(la.dot(r, z) != 0 for r in eqs):
            return 0
        if any(la.dot(r, z) <= 0 for r in strict):
            return 0
        if any(la.dot(r, z) < 0 for r in weak):
            return 0
        return 1

    def __repr__(self):
        kind = "closed" if self.closed else "rint"
        return f"Cell({kind}, {self.cone!r}{', empty' if self.empty else ''})"


def product_of_cells(a: Cell, b: Cell) -> "SignedCellSum":
    """[rint A][rint B] at a common argument as a single cell.

    The intersection of relative interiors is rint(A ∩ B) whenever it is
    nonempty; otherwise the product is flagged empty.
    """
    if a.amap != b.amap or a.closed or b.closed:
        raise ValueError("product_of_cells needs two open cells at the same argument")
    inter = intersect(a.cone, b.cone)
    p = inter.rint_point
    nonempty = a.cone.rint_contains(p) and b.cone.rint_contains(p)
    cell = Cell(inter, a.amap, empty=not nonempty)
    return SignedCellSum(a.cone.n, ((1, (cell,)),))


# signed sums ---------------------------------------------------------------------

@dataclass(frozen=True)
class SignedCellSum:
    """Σ w_i Π_j [cell_ij](z).  An empty cell tuple is the constant 1.

    `bound_t` fixes T when the sum is viewed as a function of H alone.
    """

    n: int
    terms: tuple = ()
    bound_t: tuple | None = None

    @classmethod
    def constant(cls, n: int, c: int) -> "SignedCellSum":
        return cls(n, ((c, ()),) if c else ())

    @classmethod
    def of(cls, cell: Cell, weight: int = 1) -> "SignedCellSum":
        return cls(cell.cone.n, ((weight, (cell,)),))

    def __add__(self, other: "SignedCellSum") -> "SignedCellSum":
        return SignedCellSum(self.n, self.terms + other.terms, self.bound_t)

    def __neg__(self):
        return SignedCellSum(self.n, tuple((-w, c) for w, c in self.terms), self.bound_t)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "SignedCellSum":
        if k == 0:
            return SignedCellSum(self.n, (), self.bound_t)
        return SignedCellSum(self.n, tuple((k * w, c) for w, c in self.terms), self.bound_t)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, Cell):
            other = SignedCellSum.of(other)
        terms = tuple((w1 * w2, c1 + c2) for w1, c1 in self.terms for w2, c2 in other.terms)
        return SignedCellSum(self.n, terms, self.bound_t)

    __rmul__ = __mul__

    def bind(self, t: Sequence) -> "SignedCellSum":
        return SignedCellSum(self.n, self.terms, la.vec(t))

    def cells(self) -> list[Cell]:
        seen = {}
        for _, cs in self.terms:
            for c in cs:
                seen[id(c)] = c
        return list(seen.values())

    def evaluate(self, h: Sequence, t: Sequence | None = None) -> int:
        """Exact value at H (and T, or the bound T)."""
        if t is None:
            t = self.bound_t if self.bound_t is not None else la.zeros(self.n)
        z = la.vec(h) + la.vec(t)
        memo: dict[int, int] = {}
        total = 0
        for w, cs in self.terms:
            v = 1
            for c in cs:
                k = id(c)
                if k not in memo:
                    memo[k] = c.evaluate(z)
                if not memo[k]:
                    v = 0
                    break
            total += w * v
        return total

    def __call__(self, h, t=None):
        return self.evaluate(h, t)

    def evaluate_batch(self, batch: "PointBatch") -> np.ndarray:
        """Values at every point of the batch (int64 array)."""
        total = np.zeros(batch.size, dtype=np.int64)
        for w, cs in self.terms:
            if not cs:
                total += w
                continue
            v = batch.cell_mask(cs[0])
            for c in cs[1:]:
                if not v.any():
                    break
                v = v & batch.cell_mask(c)
            total += w * v
        return total


class PointBatch:
    """Rational points z = (H, T) scaled to integer rows for exact numpy evaluation."""

    def __init__(self, points: Sequence[Sequence]):
        self.points = [la.vec(p) for p in points]
        self.size = len(self.points)
        rows = []
        for p in self.points:
            d = la.denominator_lcm(p)
            rows.append([int(x * d) for x in p])
        self._rows = rows
        self._bound = max((abs(x) for r in rows for x in r), default=0)
        self._masks: dict[int, np.ndarray] = {}
        self._arrays: dict = {}

    @classmethod
    def from_integer_rows(cls, rows: np.ndarray) -> "PointBatch":
        """Points given as integer rows; any positive common scale is fine for sign tests."""
        self = cls.__new__(cls)
        self.points = None
        self.size = len(rows)
        self._rows = np.asarray(rows, dtype=np.int64)
        self._bound = int(np.abs(self._rows).max()) if self.size else 0
        self._masks = {}
        self._arrays = {}
        return self

    def _matrix(self, dtype):
        if dtype not in self._arrays:
            self._arrays[dtype] = np.array(self._rows, dtype=dtype).reshape(self.size, -1)
        return self._arrays[dtype]

    def _apply(self, rows):
        width = len(rows[0])
        big = max(abs(x) for r in rows for x in r) * self._bound * width
        dtype = np.int64 if big < 2 ** 62 else object
        a = np.array(rows, dtype=dtype).reshape(len(rows), width)
        return self._matrix(dtype) @ a.T

    def cell_mask(self, cell: Cell) -> np.ndarray:
        k = id(cell)
        hit = self._masks.get(k)
        if hit is not None:
            return hit
        cond = cell.conditions
        if cond is None:
            mask = np.zeros(self.size, dtype=bool)
        else:
            eqs, strict, weak = cond
            mask = np.ones(self.size, dtype=bool)
            if eqs:
                mask &= np.all(self._apply(eqs) == 0, axis=1)
            if strict:
                mask &= np.all(self._apply(strict) > 0, axis=1)
            if weak:
                mask &= np.all(self._apply(weak) >= 0, axis=1)
        self._masks[k] = mask
        return mask


# Γ, σ and friends ------------------------------------------------------------------

def gamma_sum(c: Cone, hmap: ArgMap | None = None, tmap: ArgMap | None = None) -> SignedCellSum:
    """Γ(C, h, t) with h = hmap z and t = tmap z."""
    n = c.n
    hmap = h_map(n) if hmap is None else hmap
    tmap = t_map(n) if tmap is None else tmap
    shifted = map_sub(hmap, tmap)
    f0 = c.minimal_face
    terms = []
    for f in c.faces():
        w = eps(f, f0)
        terms.append((w, (Cell(angle_cone(f, c), hmap), Cell(dual_cone(f.cone), shifted))))
    return SignedCellSum(n, tuple(terms))


def gamma(c: Cone, t: Sequence | None = None) -> SignedCellSum:
    """Γ(C, ·, T) as a signed sum in H; T is bound when given."""
    s = gamma_sum(c)
    return s.bind(t) if t is not None else s


def sigma(f: Face, c: Cone, hmap: ArgMap | None = None) -> SignedCellSum:
    """σ(F, C) = Σ_{E ⊆ F} ε_F^E [rint A(E,C)] [rint E^∨]."""
    if f.parent is not c:
        hit = c.face_of(f.cone)
        if hit is None:
            raise ValueError("F is not a face of C")
        f = hit
    hmap = h_map(c.n) if hmap is None else hmap
    terms = []
    for e in c.faces():
        if e <= f:
            terms.append((eps(f, e), (Cell(angle_cone(e, c), hmap), Cell(dual_cone(e.cone), hmap))))
    return SignedCellSum(c.n, tuple(terms))


@dataclass(frozen=True)
class Ball:
    """{H : <H - center, H - center> <= radius2}."""

    center: tuple
    radius2: Fraction

    def contains(self, h, inner) -> bool:
        d = la.sub(h, self.center)
        return inner.norm2(d) <= self.radius2


def gamma_support_certificate(c: Cone, t: Sequence) -> Ball:
    """Ball {H : <H, H - T> <= 0}, which contains the support of Γ(C, ·, T)."""
    t = la.vec(t)
    return Ball(la.scale(Fraction(1, 2), t), c.inner.norm2(t) / 4)


# sampling ----------------------------------------------------------------------------

class Sampler:
    """Seeded rational sampler: numerators in [-D, D], denominators from a fixed set."""

    def __init__(self, seed: int = 0, max_coord: int = 20,
                 denominators: Sequence[int] = (1, 2, 3, 5, 8)):
        self.seed = seed
        self.max_coord = max_coord
        self.denominators = tuple(denominators)
        self.rng = np.random.default_rng(seed)

    def vectors(self, count: int, n: int) -> list[tuple]:
        nums = self.rng.integers(-self.max_coord, self.max_coord + 1, size=(count, n))
        dens = self.rng.choice(self.denominators, size=(count, n))
        return [tuple(Fraction(int(a), int(b)) for a, b in zip(rn, rd))
                for rn, rd in zip(nums, dens)]

    def vector(self, n: int) -> tuple:
        return self.vectors(1, n)[0]

    def integers(self, lo: int, hi: int, size=None):
        return self.rng.integers(lo, hi + 1, size=size)

    def choice(self, seq):
        return seq[int(self.rng.integers(0, len(seq)))]


def representative_points(c: Cone) -> list[tuple]:
    """One relative-interior point per face of C, C^∨ and the angle cones, with negatives."""
    pts = {la.zeros(c.n)}
    dual = dual_cone(c)
    for f in c.faces():
        for k in (f.cone, angle_cone(f, c), dual_cone(f.cone), dual_cone(angle_cone(f, c))):
            p = la.vec(k.rint_point)
            pts.add(p)
            pts.add(la.neg(p))
    for f in dual.faces():
        p = la.vec(f.cone.rint_point)
        pts.add(p)
        pts.add(la.neg(p))
    for v in c.lineality.basis:
        pts.add(la.vec(v))
    return sorted(pts)


def sample_pairs(c: Cone, sampler: Sampler, count: int, with_t: bool = True) -> list[tuple]:
    """Points z = (H, T): structured pairs from representatives plus random ones."""
    n = c.n
    reps = representative_points(c)
    out = []
    if with_t:
        ts = reps[: 6] + sampler.vectors(4, n)
        for t in ts:
            for r in reps:
                out.append(r + t)
                out.append(la.add(r, t) + t)
                half = la.scale(Fraction(1, 2), t)
                out.append(la.add(r, half) + t)
        hs = sampler.vectors(count, n)
        tt = sampler.vectors(count, n)
        # small T values make the support regions of Γ visible to the sampler
        for i, (h, t) in enumerate(zip(hs, tt)):
            if i % 3 == 0:
                h = la.scale(Fraction(1, 4), h)
            elif i % 3 == 1:
                h = la.add(la.scale(Fraction(1, 2), t), la.scale(Fraction(1, 8), h))
            out.append(h + t)
    else:
        zero = la.zeros(n)
        for r in reps:
            out.append(r + zero)
        for h in sampler.vectors(count, n):
            out.append(h + zero)
    # dedupe, keep order
    seen = set()
    uniq = []
    for z in out:
        if z not in seen:
            seen.add(z)
            uniq.append(z)
    # low dimensions run out of distinct grid points; top up with finer denominators
    for _ in range(50):
        if len(uniq) >= count:
            break
        for _ in range(count - len(uniq)):
            k = Fraction(1, int(sampler.integers(2, 97)))
            h = la.scale(k, sampler.vector(n))
            t = la.scale(k, sampler.vector(n)) if with_t else la.zeros(n)
            z = h + t
            if z not in seen:
                seen.add(z)
                uniq.append(z)
    return uniq


# identity registry ------------------------------------------------------------------

@dataclass
class IdentityReport:
    identity: str
    cones: list
    samples: int
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    seed: int | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "identity": self.identity,
            "passed": self.passed,
            "samples": self.samples,
            "cones": self.cones,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
            "seed": self.seed,
        }
        if self.note:
            out["note"] = self.note
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


@dataclass
class IdentityContext:
    cone: Cone | None = None
    fan: list | None = None
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Equation:
    label: str
    lhs: SignedCellSum
    rhs: SignedCellSum
    mode: str = "equal"  # or "implies": lhs != 0 => rhs != 0


def _euler(ctx):
    c = ctx.cone
    n = c.n
    lhs = SignedCellSum(n, tuple((eps(c, f), ()) for f in c.faces()))
    return [Equation("euler", lhs, SignedCellSum.constant(n, int(c.is_subspace)))]


def _bgs_angle(ctx):
    c = ctx.cone
    n = c.n
    out = []
    for f in c.faces():
        lhs = SignedCellSum(n, tuple((eps(c, e), (Cell(angle_cone(e, c)),))
                                     for e in c.faces() if f <= e))
        rhs = SignedCellSum.of(Cell(angle_cone(f, c), map_neg(h_map(n)), closed=True))
        out.append(Equation(f"bgs_angle[F={sorted(f.rays)}]", lhs, rhs))
    return out


def _bgs_dual(ctx):
    c = ctx.cone
    n = c.n
    f0 = c.minimal_face
    lhs = SignedCellSum(n, tuple((eps(f, f0), (Cell(dual_cone(f.cone)),)) for f in c.faces()))
    rhs = SignedCellSum.of(Cell(dual_cone(c), map_neg(h_map(n)), closed=True))
    return [Equation("bgs_dual", lhs, rhs)]


def _langlands_1(ctx):
    c = ctx.cone
    n = c.n
    terms = []
    for f in c.faces():
        pf = f.cone.span.projection
        qf = complement_projection(f.cone.span)
        terms.append((eps(c, f), (Cell(f.cone, h_map(n, pf)),
                                  Cell(dual_cone(angle_cone(f, c)), h_map(n, qf)))))
    return [Equation("langlands_1", SignedCellSum(n, tuple(terms)),
                     SignedCellSum.constant(n, int(c.is_subspace)))]


def _langlands_2(ctx):
    c = ctx.cone
    n = c.n
    terms = tuple((eps(c, f), (Cell(angle_cone(f, c)), Cell(dual_cone(f.cone))))
                  for f in c.faces())
    rhs = SignedCellSum.of(Cell(Cone.origin(n, c.inner))).scale(int(c.is_subspace))
    return [Equation("langlands_2", SignedCellSum(n, terms), rhs)]


def _gamma_decomposition(ctx):
    c = ctx.cone
    n = c.n
    rhs = SignedCellSum(n)
    for f in c.faces():
        pf = f.cone.span.projection
        qf = complement_projection(f.cone.span)
        g = gamma_sum(angle_cone(f, c), h_map(n, qf), t_map(n, qf))
        shifted = map_sub(h_map(n, pf), t_map(n, pf))
        rhs = rhs + g * Cell(f.cone, shifted)
    return [Equation("gamma_decomposition", SignedCellSum.of(Cell(c)), rhs)]


def _gamma_dual_decomposition(ctx):
    c = ctx.cone
    n = c.n
    f0 = c.minimal_face
    lhs = SignedCellSum.of(Cell(dual_cone(c), map_sub(h_map(n), t_map(n))))
    rhs = SignedCellSum(n)
    for f in c.faces():
        pf = f.cone.span.projection
        qf = complement_projection(f.cone.span)
        g = gamma_sum(f.cone, h_map(n, pf), t_map(n, pf))
        cell = Cell(dual_cone(angle_cone(f, c)), h_map(n, qf))
        rhs = rhs + (SignedCellSum.of(cell, eps(f, f0)) * g)
    return [Equation("gamma_dual_decomposition", lhs, rhs)]


def _gamma_duality(ctx):
    c = ctx.cone
    n = c.n
    lhs = gamma_sum(c)
    rhs = gamma_sum(dual_cone(c), map_sub(h_map(n), t_map(n)), map_neg(t_map(n)))
    return [Equation("gamma_duality", lhs, rhs.scale(eps(c, c.minimal_face)))]


def _htau_tau_sigma(ctx):
    c = ctx.cone
    n = c.n
    out = []
    for f in c.faces():
        lhs = SignedCellSum(n, ((1, (Cell(angle_cone(f, c)), Cell(dual_cone(f.cone)))),))
        rhs = SignedCellSum(n)
        for e in c.faces():
            if e <= f:
                rhs = rhs + sigma(e, c)
        out.append(Equation(f"htau_tau_sigma[F={sorted(f.rays)}]", lhs, rhs))
    return out


def _sigma_support(ctx):
    c = ctx.cone
    out = []
    for f in c.faces():
        out.append(Equation(f"sigma_support[F={sorted(f.rays)}]", sigma(f, c),
                            SignedCellSum.of(Cell(angle_cone(f, c))), mode="implies"))
    return out


def _gamma_fan_refinement(ctx):
    c = ctx.cone
    fan = ctx.fan
    if not fan:
        raise ValueError("gamma_fan_refinement needs a fan decomposition of the cone")
    validate_fan(c, fan)
    n = c.n
    pieces = {}
    for k in fan:
        for g in k.faces():
            pieces.setdefault(g.cone.key, g.cone)
    rhs = SignedCellSum(n)
    for f in c.faces():
        for g in pieces.values():
            if not _rint_inside(g, f.cone):
                continue
            pg = g.span.projection
            qg = complement_projection(g.span)
            gam = gamma_sum(angle_cone(f, c), h_map(n, qg), t_map(n, qg))
            rhs = rhs + gam * Cell(g, map_sub(h_map(n, pg), t_map(n, pg)))
    return [Equation("gamma_fan_refinement", SignedCellSum.of(Cell(c)), rhs)]


def _rint_inside(g: Cone, f: Cone) -> bool:
    """rint G ⊂ rint F, for G contained in the cone C of which F is a face."""
    return f.contains_cone(g) and f.rint_contains(g.rint_point)


def validate_fan(c: Cone, fan: Sequence[Cone]) -> None:
    """Raise ValueError unless the cones form a fan whose union is C."""
    for k in fan:
        if not c.contains_cone(k):
            raise ValueError("fan cone not contained in C")
    for i, a in enumerate(fan):
        for b in fan[i:]:
            inter = intersect(a, b)
            if a.face_of(inter) is None or b.face_of(inter) is None:
                raise ValueError("fan cones meet outside a common face")
    # union check: every facet of a top piece not on the boundary of C
    # must be shared with another top piece
    top = [k for k in fan if k.dim == c.dim]
    boundary = [f.cone for f in c.faces() if f.cone.dim == c.dim - 1]
    for k in top:
        for f in k.faces():
            if f.cone.dim != c.dim - 1:
                continue
            if any(b.contains_cone(f.cone) for b in boundary):
                continue
            if sum(1 for k2 in top if k2.face_of(f.cone) is not None) < 2:
                raise ValueError("fan does not cover C")
    if not top:
        raise ValueError("fan has no full-dimensional cone")
    if c.dim == c.lineality_dim and len(top) != 1:
        raise ValueError("fan of a subspace must be the subspace itself")


REGISTRY: dict[str, Callable[[IdentityContext], list[Equation]]] = {
    "euler": _euler,
    "bgs_angle": _bgs_angle,
    "bgs_dual": _bgs_dual,
    "langlands_1": _langlands_1,
    "langlands_2": _langlands_2,
    "gamma_decomposition": _gamma_decomposition,
    "gamma_dual_decomposition": _gamma_dual_decomposition,
    "gamma_duality": _gamma_duality,
    "gamma_fan_refinement": _gamma_fan_refinement,
    "htau_tau_sigma": _htau_tau_sigma,
    "sigma_support": _sigma_support,
}

NEEDS_T = {"gamma_decomposition", "gamma_dual_decomposition", "gamma_duality",
           "gamma_fan_refinement", "relative_tau_hat_expansion"}


def register(name: str, needs_t: bool = False):
    def deco(fn):
        REGISTRY[name] = fn
        if needs_t:
            NEEDS_T.add(name)
        return fn
    return deco


def check_equations(equations: Sequence[Equation], points: Sequence[tuple], n: int) -> list[dict]:
    """Exact comparison at each point; returns failure witnesses."""
    batch = PointBatch(points)
    failures = []
    for eq in equations:
        lv = eq.lhs.evaluate_batch(batch)
        rv = eq.rhs.evaluate_batch(batch)
        if eq.mode == "implies":
            bad = np.nonzero((lv != 0) & (rv == 0))[0]
        else:
            bad = np.nonzero(lv != rv)[0]
        for i in bad[:50]:
            z = points[i]
            failures.append({
                "equation": eq.label,
                "H": [str(x) for x in z[:n]],
                "T": [str(x) for x in z[n:]],
                "lhs": int(lv[i]),
                "rhs": int(rv[i]),
            })
    return failures


def verify_identity(identity: str, context: IdentityContext, sampler: Sampler,
                    samples: int = 1000, points: Sequence[tuple] | None = None) -> IdentityReport:
    """Evaluate both sides of a registered identity at sampled points."""
    if identity == "sigma_norm_bound":
        return verify_sigma_norm_bound(context, sampler, samples)
    if identity not in REGISTRY:
        raise KeyError(f"unknown identity {identity!r}")
    start = time.perf_counter()
    equations = REGISTRY[identity](context)
    c = context.cone
    n = c.n
    if points is None:
        points = sample_pairs(c, sampler, samples, with_t=identity in NEEDS_T)
    failures = check_equations(equations, points, n)
    cones = [c.to_json()] + ([k.to_json() for k in context.fan] if context.fan else [])
    return IdentityReport(identity, cones, len(points), failures,
                          time.perf_counter() - start, sampler.seed)


# σ norm bound -----------------------------------------------------------------------

def sigma_norm_ratio(f: Face, c: Cone, points: Sequence[tuple]) -> tuple[Fraction | None, int]:
    """Max of ‖H_F‖²/‖H^F‖² over points in the support of σ(F,C).

    Returns (ratio or None if the support contains a point with H^F = 0
    and H_F != 0, number of support points).
    """
    n = c.n
    s = sigma(f, c)
    z = [tuple(p) + la.zeros(n) for p in points]
    vals = s.evaluate_batch(PointBatch(z))
    span = f.cone.span
    best = Fraction(0)
    hits = 0
    for p, v in zip(points, vals):
        if not v:
            continue
        hits += 1
        hf = span.project(p)
        hperp = la.sub(p, hf)
        num = c.inner.norm2(hf)
        den = c.inner.norm2(hperp)
        if den == 0:
            if num != 0:
                return None, hits
            continue
        best = max(best, num / den)
    return best, hits


def support_points(f: Face, c: Cone, sampler: Sampler, count: int) -> list[tuple]:
    """Sample points biased towards the support of σ(F,C), which lies in rint A(F,C)."""
    n = c.n
    a = angle_cone(f, c)
    gens = [la.vec(r) for r in a.rays]
    lines = [la.vec(l) for l in a.lineality.basis]
    out = []
    raw = sampler.vectors(count, n)
    for i, v in enumerate(raw):
        if i % 2 == 0 or not (gens or lines):
            out.append(v)
            continue
        coeffs = sampler.integers(1, 12, size=len(gens) + len(lines))
        p = la.zeros(n)
        for k, g in zip(coeffs[:len(gens)], gens):
            p = la.add(p, la.scale(Fraction(int(k), int(sampler.choice((1, 2, 3)))), g))
        for k, l in zip(coeffs[len(gens):], lines):
            p = la.add(p, la.scale(Fraction(int(k) - 6, 2), l))
        out.append(p)
    return out


def verify_sigma_norm_bound(context: IdentityContext, sampler: Sampler,
                            samples: int = 1000) -> IdentityReport:
    """Empirical k² (max ratio × 4) must also bound a doubled, fresh sample."""
    start = time.perf_counter()
    c = context.cone
    failures = []
    notes = []
    for f in c.faces():
        pts = support_points(f, c, sampler, samples)
        r1, h1 = sigma_norm_ratio(f, c, pts)
        more = support_points(f, c, sampler, 2 * samples)
        r2, h2 = sigma_norm_ratio(f, c, more)
        if r1 is None or r2 is None:
            failures.append({"equation": f"sigma_norm_bound[F={sorted(f.rays)}]",
                             "reason": "support point with H^F = 0 and H_F != 0"})
            continue
        k2 = 4 * r1
        if r2 > k2 and r2 > 0:
            failures.append({"equation": f"sigma_norm_bound[F={sorted(f.rays)}]",
                             "k_squared": str(k2), "doubled_sample_ratio": str(r2)})
        notes.append(f"F={sorted(f.rays)}: k^2={k2} support={h1}+{h2}")
    return IdentityReport("sigma_norm_bound", [c.to_json()], 3 * samples * len(c.faces()),
                          failures, time.perf_counter() - start, sampler.seed,
                          note="; ".join(notes))
