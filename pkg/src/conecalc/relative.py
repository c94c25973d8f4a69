"""Relative chambers for a subgroup G' ⊂ G.

An embedding a_0' -> a_0 is a rational matrix ι (ambient rank x subgroup
rank).  Each ambient parabolic P whose open chamber meets a_0' inside
some open subgroup chamber a_{P'}^+ (P' ⊇ P_0') contributes a cell
z̄_P^+ = ι^{-1}(ā_P^+), a closed cone in a_0' with the induced Gram.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from .cones import Cone, InnerProduct, Subspace, angle_cone, dual_cone, intersect, sign
from .indicators import (REGISTRY, Cell, Equation, IdentityContext, IdentityReport, PointBatch,
                         Sampler, SignedCellSum, complement_projection, gamma_sum, h_map,
                         map_sub, register, sample_pairs, sigma, sigma_norm_ratio,
                         support_points, t_map, check_equations)
from .roots import Parabolic, RootDatum, parabolics, standard_borel, whole_group


@dataclass(frozen=True)
class EmbeddingConfig:
    name: str
    ambient: RootDatum
    subgroup: RootDatum
    iota: tuple  # rows indexed by ambient coordinates
    p0prime: Parabolic
    gram: tuple | None = None

    def __post_init__(self):
        iota = la.mat(self.iota)
        object.__setattr__(self, "iota", iota)
        n_amb, n_sub = self.ambient.rank, self.subgroup.rank
        if len(iota) != n_amb or any(len(r) != n_sub for r in iota):
            raise ValueError(f"iota must be {n_amb} x {n_sub}")
        if la.rank(la.transpose(iota)) != n_sub:
            raise ValueError("iota is not injective")
        induced = la.mat_mul(la.transpose(iota), iota)
        if self.gram is None:
            object.__setattr__(self, "gram", induced)
        elif la.mat(self.gram) != induced:
            raise ValueError("embedding is not an isometry: iota^T G iota differs from the subgroup Gram")
        else:
            object.__setattr__(self, "gram", la.mat(self.gram))
        if self.p0prime.datum != self.subgroup or not self.p0prime.is_minimal():
            raise ValueError("p0prime must be a minimal parabolic of the subgroup")

    @property
    def inner(self) -> InnerProduct:
        return InnerProduct(self.gram)

    @property
    def dim(self) -> int:
        return self.subgroup.rank

    def pull_back(self, covector: Sequence) -> tuple:
        """A functional on a_0 restricted to a_0' through ι."""
        return la.vec_mat(la.vec(covector), self.iota)

    def push(self, h: Sequence) -> tuple:
        return la.mat_vec(self.iota, la.vec(h))

    def to_json(self) -> dict:
        fr = lambda m: [[str(x) for x in r] for r in m]
        return {
            "name": self.name,
            "ambient": self.ambient.to_json(),
            "subgroup": self.subgroup.to_json(),
            "iota": fr(self.iota),
            "p0prime": json.loads(self.p0prime.id),
            "gram": fr(self.gram),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EmbeddingConfig":
        try:
            amb = RootDatum.from_json(obj["ambient"])
            sub = RootDatum.from_json(obj["subgroup"])
            p0 = Parabolic.from_json(sub, obj["p0prime"])
            return cls(obj.get("name", "custom"), amb, sub, obj["iota"], p0, obj.get("gram"))
        except KeyError as exc:
            raise ValueError(f"embedding config lacks field {exc}") from None


# built-in configurations --------------------------------------------------------------

def gln_in_gln1_corner(n: int) -> EmbeddingConfig:
    """GL(n) ⊂ GL(n+1) as the upper-left block: x -> (x, 0)."""
    if not 1 <= n <= 3:
        raise ValueError("corner embeddings are shipped for n = 1, 2, 3")
    iota = [[int(i == j) for j in range(n)] for i in range(n + 1)]
    sub = RootDatum((n,))
    return EmbeddingConfig(f"gl{n}_in_gl{n + 1}_corner", RootDatum((n + 1,)), sub, iota,
                           standard_borel(sub))


def gl1_in_gl2_corner() -> EmbeddingConfig:
    return gln_in_gln1_corner(1)


def gl2_in_gl3_plane() -> EmbeddingConfig:
    cfg = gln_in_gln1_corner(2)
    return EmbeddingConfig("gl2_in_gl3_plane", cfg.ambient, cfg.subgroup, cfg.iota, cfg.p0prime)


def gl2_diag_in_gl2xgl2() -> EmbeddingConfig:
    sub = RootDatum((2,))
    iota = [[1, 0], [0, 1], [1, 0], [0, 1]]
    return EmbeddingConfig("gl2_diag_in_gl2xgl2", RootDatum((2, 2)), sub, iota, standard_borel(sub))


BUILTIN_CONFIGS = {
    "gl1_in_gl2_corner": gl1_in_gl2_corner,
    "gl2_in_gl3_plane": gl2_in_gl3_plane,
    "gl3_in_gl4_corner": lambda: gln_in_gln1_corner(3),
    "gl2_diag_in_gl2xgl2": gl2_diag_in_gl2xgl2,
}


def builtin_config(name: str) -> EmbeddingConfig:
    try:
        return BUILTIN_CONFIGS[name]()
    except KeyError:
        raise ValueError(f"unknown built-in config {name!r}; "
                         f"known: {', '.join(sorted(BUILTIN_CONFIGS))}") from None


# the fan ------------------------------------------------------------------------------------

@dataclass
class RelativeCell:
    parabolic: Parabolic
    cone: Cone  # z̄_P^+
    subgroup: Parabolic  # P' with a_{P'}^+ ∩ a_P^+ nonempty
    witness: tuple  # integer point of a_{P'}^+ ∩ a_P^+
    z: Subspace  # z_P
    z_rel: Subspace  # z_P^G
    eps: int
    rho_underline: tuple

    @property
    def id(self) -> str:
        return self.parabolic.id

    @property
    def label(self) -> str:
        return self.parabolic.label

    @property
    def is_maximal(self) -> bool:
        return self.z_rel.dim == 1

    def to_json(self) -> dict:
        fr = lambda v: [str(x) for x in v]
        return {
            "id": self.id,
            "label": self.label,
            "cone": self.cone.to_json(),
            "subgroup_parabolic": json.loads(self.subgroup.id),
            "witness": fr(self.witness),
            "epsilon": self.eps,
            "dim_z": self.z.dim,
            "dim_z_rel_G": self.z_rel.dim,
            "rho_underline": fr(self.rho_underline),
        }


@dataclass
class RelativeFan:
    config: EmbeddingConfig
    cells: dict  # ambient parabolic id -> RelativeCell, in sorted order
    subgroup_chambers: dict  # P' id -> closed chamber cone in a_0'
    discrepancies: list = field(default_factory=list)

    @property
    def inner(self) -> InnerProduct:
        return self.config.inner

    @property
    def dim(self) -> int:
        return self.config.dim

    def cell(self, p: Parabolic | str) -> RelativeCell:
        """Look up by parabolic, id or label (whitespace ignored)."""
        key = p if isinstance(p, str) else p.id
        if key in self.cells:
            return self.cells[key]
        flat = key.replace(" ", "")
        for c in self.cells.values():
            if flat in (c.id, c.label):
                return c
        label = p if isinstance(p, str) else p.label
        raise ValueError(f"{label} is not a cell of the fan")

    def cells_above(self, p: Parabolic) -> list[RelativeCell]:
        """Cells Q with P ⊆ Q."""
        return [c for c in self.cells.values() if p <= c.parabolic]

    def cells_between(self, p: Parabolic, q: Parabolic) -> list[RelativeCell]:
        return [c for c in self.cells.values() if p <= c.parabolic <= q]

    @property
    def top(self) -> RelativeCell:
        return self.cell(whole_group(self.config.ambient))

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "cells": [c.to_json() for c in self.cells.values()],
            "subgroup_chambers": {k: v.to_json() for k, v in self.subgroup_chambers.items()},
            "discrepancies": self.discrepancies,
        }


def subgroup_chamber(config: EmbeddingConfig, p: Parabolic) -> Cone:
    """ā_{P'}^+ in a_0' (the roots act as functionals in the standard coordinates)."""
    return Cone.from_covectors(config.dim, list(p.simple_roots.values()),
                               list(p.a.annihilator), config.inner)


def preimage_chamber(config: EmbeddingConfig, p: Parabolic) -> Cone:
    """z̄_P^+ = ι^{-1}(ā_P^+)."""
    ineq = [config.pull_back(a) for a in p.simple_roots.values()]
    eq = [config.pull_back(e) for e in p.a.annihilator]
    return Cone.from_covectors(config.dim, ineq, eq, config.inner)


def _open_meet(a: Cone, b: Cone) -> tuple | None:
    """A rational point of rint a ∩ rint b, or None when they are disjoint."""
    k = intersect(a, b)
    x = la.vec(k.rint_point)
    if a.rint_contains(x) and b.rint_contains(x):
        return x
    return None


def _lattice_point(x: Sequence) -> tuple:
    if la.is_zero(x):
        return tuple(0 for _ in x)
    return tuple(la.primitive(x))


def build_relative_fan(config: EmbeddingConfig) -> RelativeFan:
    inner = config.inner
    n = config.dim
    sub_pars = parabolics(config.subgroup, config.p0prime)
    chambers = {p.id: subgroup_chamber(config, p) for p in sub_pars}
    g_amb = whole_group(config.ambient)
    z_g = preimage_chamber(config, g_amb).span
    cells = {}
    discrepancies = []
    for p in parabolics(config.ambient):
        zc = preimage_chamber(config, p)
        matches = []
        for sp in sub_pars:
            x = _open_meet(zc, chambers[sp.id])
            # the preimage of the closed chamber may be larger than the closure
            # of the preimage of the open one, so test the open chamber directly
            if x is not None and _witness_ok(config, p, sp, x):
                matches.append((sp, x))
        if not matches:
            continue
        if len(matches) > 1:
            discrepancies.append({"parabolic": p.label, "reason": "several subgroup chambers meet",
                                  "subgroup": [m[0].label for m in matches]})
        sp, x = matches[0]
        w = _lattice_point(x)
        if not _witness_ok(config, p, sp, w):
            discrepancies.append({"parabolic": p.label, "reason": "witness failed"})
        if not chambers[sp.id].contains_cone(zc):
            discrepancies.append({"parabolic": p.label, "subgroup": sp.label,
                                  "reason": "cell not inside the closed subgroup chamber"})
        z = zc.span
        rel = Subspace([la.sub(b, z_g.project(b)) for b in z.basis], n, inner)
        cells[p.id] = RelativeCell(p, zc, sp, w, z, rel, sign(rel.dim),
                                   _rho_underline(config, p, sp))
    if not cells:
        raise ValueError(f"{config.name}: no ambient chamber meets the subgroup chamber")
    order = sorted(cells.values(), key=lambda c: (-c.cone.dim, c.parabolic.sort_key))
    return RelativeFan(config, {c.id: c for c in order}, chambers, discrepancies)


def _witness_ok(config: EmbeddingConfig, p: Parabolic, sp: Parabolic, w: Sequence) -> bool:
    """w ∈ a_{P'}^+ and ι w ∈ a_P^+, checked with strict inequalities."""
    if not sp.a.contains(w) or any(la.dot(a, w) <= 0 for a in sp.simple_roots.values()):
        return False
    iw = config.push(w)
    return p.a.contains(iw) and all(la.dot(a, iw) > 0 for a in p.simple_roots.values())


def _rho_underline(config: EmbeddingConfig, p: Parabolic, sp: Parabolic) -> tuple:
    cov = la.sub(config.pull_back(p.rho), la.scale(2, sp.rho))
    return la.vec(config.inner.from_covector(cov))


def rho_underline(fan: RelativeFan, p: Parabolic) -> tuple:
    """Projection to a_0' of ρ_P - 2ρ_{P'}, as a vector for the induced Gram."""
    return fan.cell(p).rho_underline


def c_coefficient(fan: RelativeFan, q: Parabolic) -> Fraction:
    """The scalar c with ρ_{Q'} = c ρ_Q on z_Q^G (which must be a line)."""
    cell = fan.cell(q)
    if cell.z_rel.dim != 1:
        raise ValueError(f"z_Q^G has dimension {cell.z_rel.dim} for {q.label}; a line is required")
    u = cell.z_rel.basis[0]
    amb = la.dot(q.rho, fan.config.push(u))
    if amb == 0:
        raise ValueError(f"ρ_Q vanishes on z_Q^G for {q.label}")
    c = la.dot(cell.subgroup.rho, u) / amb
    if q.nilradical_abelian:
        ratio = Fraction(cell.subgroup.dim_nilradical, q.dim_nilradical)
        if ratio != c:
            raise ArithmeticError(f"c = {c} differs from the nilradical dimension ratio {ratio}")
    return c


def maximal_cells(fan: RelativeFan) -> list[RelativeCell]:
    return [c for c in fan.cells.values() if c.is_maximal]


# invariants ------------------------------------------------------------------------------

def check_disjointness(fan: RelativeFan) -> list[dict]:
    cells = list(fan.cells.values())
    bad = []
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            x = _open_meet(a.cone, b.cone)
            if x is not None:
                bad.append({"cells": [a.label, b.label], "point": [str(v) for v in x]})
    return bad


def _chamber_points(cone: Cone, sampler: Sampler, count: int, open_: bool) -> list[tuple]:
    """Random points of rint(cone) (open_) or of the closed cone, boundary included."""
    rays = [la.vec(r) for r in cone.rays]
    lines = [la.vec(l) for l in cone.lineality.basis]
    out = []
    lo = 1 if open_ else 0
    for _ in range(count):
        p = la.zeros(cone.n)
        for r in rays:
            k = int(sampler.integers(lo, 9))
            if not open_ and sampler.integers(0, 2) == 0:
                k = 0
            p = la.add(p, la.scale(Fraction(k, int(sampler.choice((1, 2, 3)))), r))
        for l in lines:
            p = la.add(p, la.scale(Fraction(int(sampler.integers(-8, 8)), 2), l))
        out.append(p)
    return out


def check_coverage(fan: RelativeFan, sampler: Sampler, count: int = 10_000) -> dict:
    """Sampled form of the disjoint-union decompositions of the subgroup chambers.

    Every point of ā_{P_0'}^+ must lie in exactly one cell, and every point of an
    open a_{P'}^+ must lie in a cell matched with P'.
    """
    n = fan.dim
    cells = list(fan.cells.values())
    p0 = fan.config.p0prime
    closed = fan.subgroup_chambers[p0.id]
    sub_ids = list(fan.subgroup_chambers)
    per = max(1, count // (2 * len(sub_ids)))
    groups = [(None, _chamber_points(closed, sampler, count // 2, open_=False))]
    for sid in sub_ids:
        groups.append((sid, _chamber_points(fan.subgroup_chambers[sid], sampler, per, open_=True)))
    failures = []
    total = 0
    for sid, pts in groups:
        total += len(pts)
        batch = PointBatch([p + la.zeros(n) for p in pts])
        masks = np.array([batch.cell_mask(Cell(c.cone)) for c in cells])
        hits = masks.sum(axis=0)
        for i in np.nonzero(hits != 1)[0][:20]:
            failures.append({"point": [str(x) for x in pts[i]], "cells_hit": int(hits[i])})
        if sid is not None:
            for i in range(len(pts)):
                if hits[i] == 1:
                    c = cells[int(np.argmax(masks[:, i]))]
                    if c.subgroup.id != sid:
                        failures.append({"point": [str(x) for x in pts[i]],
                                         "reason": f"cell {c.label} matched to another chamber"})
    return {"samples": total, "failures": failures}


def check_face_bijection(fan: RelativeFan) -> list[dict]:
    """Q ↦ z̄_Q^+ is an order-reversing bijection onto the faces of z̄_P^+."""
    bad = []
    g = fan.config.ambient
    for cell in fan.cells.values():
        above = fan.cells_above(cell.parabolic)
        faces = {}
        for q in above:
            f = cell.cone.face_of(q.cone)
            if f is None:
                bad.append({"cell": cell.label, "reason": f"{q.label} is not a face"})
                continue
            faces[q.id] = f
        if len(set(faces.values())) != len(above) or len(above) != len(cell.cone.faces()):
            bad.append({"cell": cell.label, "reason": "face count mismatch",
                        "faces": len(cell.cone.faces()), "parabolics": len(above)})
        for q1 in above:
            for q2 in above:
                if q1.id in faces and q2.id in faces:
                    if (q1.parabolic <= q2.parabolic) != (faces[q2.id] <= faces[q1.id]):
                        bad.append({"cell": cell.label, "reason": "order mismatch",
                                    "pair": [q1.label, q2.label]})
        if cell.parabolic != whole_group(g) and cell.cone.is_subspace:
            bad.append({"cell": cell.label, "reason": "proper cell is a linear subspace"})
    return bad


def check_witnesses(fan: RelativeFan) -> list[str]:
    return [c.label for c in fan.cells.values()
            if not _witness_ok(fan.config, c.parabolic, c.subgroup, c.witness)]


def check_c_coefficients(fan: RelativeFan) -> list[dict]:
    """Projection identity ρ_{Q'} = c ρ_Q on z_Q^G, and the dimension ratio when N_Q is abelian."""
    out = []
    for cell in maximal_cells(fan):
        try:
            c = c_coefficient(fan, cell.parabolic)
        except (ValueError, ArithmeticError) as exc:
            out.append({"cell": cell.label, "ok": False, "reason": str(exc)})
            continue
        u = cell.z_rel.basis[0]
        lhs = la.dot(cell.subgroup.rho, u)
        rhs = c * la.dot(cell.parabolic.rho, fan.config.push(u))
        out.append({"cell": cell.label, "c": str(c), "abelian": cell.parabolic.nilradical_abelian,
                    "ok": lhs == rhs})
    return out


# relative indicators ---------------------------------------------------------------------

def _angle(fan: RelativeFan, p: Parabolic, q: Parabolic) -> Cone:
    if not p <= q:
        raise ValueError(f"{p.label} is not contained in {q.label}")
    cp, cq = fan.cell(p), fan.cell(q)
    face = cp.cone.face_of(cq.cone)
    if face is None:
        raise ValueError(f"z_{q.label} is not a face of z_{p.label}")
    return angle_cone(face, cp.cone)


def relative_indicator(fan: RelativeFan, p: Parabolic, q: Parabolic, kind: str,
                       hmap=None, tmap=None) -> SignedCellSum:
    """τ_P^Q, τ̂_P^Q, Γ_P^Q or σ_P^Q as a signed cell sum on a_0' (or a_0' x a_0' for Γ)."""
    n = fan.dim
    hmap = h_map(n) if hmap is None else hmap
    a = _angle(fan, p, q)
    if kind == "tau":
        return SignedCellSum.of(Cell(a, hmap))
    if kind == "tau_hat":
        return SignedCellSum.of(Cell(dual_cone(a), hmap))
    if kind == "gamma":
        return gamma_sum(a, hmap, t_map(n) if tmap is None else tmap)
    if kind == "sigma":
        cp = fan.cell(p).cone
        return sigma(cp.face_of(fan.cell(q).cone), cp, hmap)
    raise ValueError(f"unknown relative indicator {kind!r}")


def _proj_maps(fan: RelativeFan, r: RelativeCell):
    """(H_R, H^R) projection matrices."""
    return r.z.projection, complement_projection(r.z)


def _relative_context(ctx: IdentityContext):
    fan = ctx.extra["fan"]
    return fan, ctx.extra["P"], ctx.extra["Q"]


@register("relative_gamma_expansion", needs_t=True)
def _relative_gamma_expansion(ctx):
    fan, p, q = _relative_context(ctx)
    n = fan.dim
    rhs = SignedCellSum(n)
    for r in fan.cells_between(p, q):
        lo, up = _proj_maps(fan, r)
        g = relative_indicator(fan, p, r.parabolic, "gamma", h_map(n, up), t_map(n, up))
        tau = relative_indicator(fan, r.parabolic, q, "tau", map_sub(h_map(n, lo), t_map(n, lo)))
        rhs = rhs + g * tau
    return [Equation("relative_gamma_expansion", relative_indicator(fan, p, q, "tau"), rhs)]


@register("relative_tau_hat_expansion", needs_t=True)
def _relative_tau_hat_expansion(ctx):
    fan, p, q = _relative_context(ctx)
    n = fan.dim
    lhs = relative_indicator(fan, p, q, "tau_hat", map_sub(h_map(n), t_map(n)))
    rhs = SignedCellSum(n)
    cq = fan.cell(q)
    for r in fan.cells_between(p, q):
        lo, up = _proj_maps(fan, r)
        e = sign(r.z.dim - cq.z.dim)
        th = relative_indicator(fan, p, r.parabolic, "tau_hat", h_map(n, up))
        g = relative_indicator(fan, r.parabolic, q, "gamma", h_map(n, lo), t_map(n, lo))
        rhs = rhs + (th * g).scale(e)
    return [Equation("relative_tau_hat_expansion", lhs, rhs)]


@register("relative_sigma_sum")
def _relative_sigma_sum(ctx):
    fan, p, q = _relative_context(ctx)
    n = fan.dim
    g = whole_group(fan.config.ambient)
    lhs = relative_indicator(fan, q, g, "tau_hat") * relative_indicator(fan, p, q, "tau")
    rhs = SignedCellSum(n)
    for r in fan.cells_above(q):
        rhs = rhs + relative_indicator(fan, p, r.parabolic, "sigma")
    return [Equation("relative_sigma_sum", lhs, rhs)]


@register("relative_sigma_support")
def _relative_sigma_support(ctx):
    fan, p, q = _relative_context(ctx)
    return [Equation("relative_sigma_support", relative_indicator(fan, p, q, "sigma"),
                     relative_indicator(fan, p, q, "tau"), mode="implies")]


def fan_pairs(fan: RelativeFan) -> list[tuple[Parabolic, Parabolic]]:
    cells = list(fan.cells.values())
    return [(a.parabolic, b.parabolic) for a in cells for b in cells if a.parabolic <= b.parabolic]


def _relative_points(fan: RelativeFan, p: Parabolic, sampler: Sampler, samples: int,
                     with_t: bool) -> list[tuple]:
    return sample_pairs(fan.cell(p).cone, sampler, samples, with_t)


def check_compact_support(fan: RelativeFan, p: Parabolic, q: Parabolic, sampler: Sampler,
                          samples: int) -> list[dict]:
    """Γ_P^Q(H, X) ≠ 0 only inside the ball <H, H - X> <= 0."""
    n = fan.dim
    g = relative_indicator(fan, p, q, "gamma")
    pts = _relative_points(fan, p, sampler, samples, True)
    vals = g.evaluate_batch(PointBatch(pts))
    bad = []
    inner = fan.inner
    for z, v in zip(pts, vals):
        if v:
            h, x = z[:n], z[n:]
            if inner.pair(h, la.sub(h, x)) > 0:
                bad.append({"H": [str(a) for a in h], "X": [str(a) for a in x], "value": int(v)})
    return bad


def check_relative_norm_bound(fan: RelativeFan, p: Parabolic, q: Parabolic, sampler: Sampler,
                              samples: int) -> dict:
    """Empirical k for ‖H_Q‖ <= k‖H^Q‖ on the support of σ_P^Q, stable under sample doubling."""
    cp = fan.cell(p).cone
    face = cp.face_of(fan.cell(q).cone)
    r1, h1 = sigma_norm_ratio(face, cp, support_points(face, cp, sampler, samples))
    r2, h2 = sigma_norm_ratio(face, cp, support_points(face, cp, sampler, 2 * samples))
    ok = r1 is not None and r2 is not None and (r2 == 0 or r2 <= 4 * r1)
    return {"ok": ok, "k_squared": None if r1 is None else str(4 * r1),
            "doubled_ratio": None if r2 is None else str(r2), "support_hits": h1 + h2}


CONES_PROPS = {
    "part2": "relative_gamma_expansion",
    "part3": "relative_tau_hat_expansion",
    "part4": "relative_sigma_sum",
    "part5_support": "relative_sigma_support",
}


def verify_cones_props(fan: RelativeFan, sampler: Sampler, samples: int = 1000) -> dict:
    """All five relative cone facts for every pair P ⊆ Q of cells.

    Returns {part: {"failures": [...], "checks": count}}.
    """
    import time

    start = time.perf_counter()
    out = {k: {"failures": [], "checks": 0} for k in
           ("part1", "part2", "part3", "part4", "part5_support", "part5_bound")}
    for p, q in fan_pairs(fan):
        ctx = IdentityContext(cone=fan.cell(p).cone, extra={"fan": fan, "P": p, "Q": q})
        tag = f"{p.label}<={q.label}"
        bad = check_compact_support(fan, p, q, sampler, samples)
        out["part1"]["checks"] += 1
        out["part1"]["failures"] += [dict(b, pair=tag) for b in bad[:5]]
        for part, ident in CONES_PROPS.items():
            eqs = REGISTRY[ident](ctx)
            pts = _relative_points(fan, p, sampler, samples, ident in _NEEDS_T)
            fails = check_equations(eqs, pts, fan.dim)
            out[part]["checks"] += len(pts)
            out[part]["failures"] += [dict(f, pair=tag) for f in fails[:5]]
        nb = check_relative_norm_bound(fan, p, q, sampler, samples)
        out["part5_bound"]["checks"] += 1
        if not nb["ok"]:
            out["part5_bound"]["failures"].append(dict(nb, pair=tag))
    out["elapsed"] = time.perf_counter() - start
    return out


_NEEDS_T = {"relative_gamma_expansion", "relative_tau_hat_expansion"}


def verify_relative_identity(identity: str, fan: RelativeFan, p: Parabolic, q: Parabolic,
                             sampler: Sampler, samples: int = 1000) -> IdentityReport:
    import time

    start = time.perf_counter()
    ctx = IdentityContext(cone=fan.cell(p).cone, extra={"fan": fan, "P": p, "Q": q})
    eqs = REGISTRY[identity](ctx)
    pts = _relative_points(fan, p, sampler, samples, identity in _NEEDS_T)
    fails = check_equations(eqs, pts, fan.dim)
    return IdentityReport(identity, [fan.cell(p).cone.to_json(), fan.cell(q).cone.to_json()],
                          len(pts), fails, time.perf_counter() - start, sampler.seed,
                          note=f"P={p.label} Q={q.label} config={fan.config.name}")
