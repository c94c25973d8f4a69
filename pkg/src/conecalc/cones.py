"""Exact polyhedral cones in a rational Euclidean space.

A cone carries both representations: half-spaces (normals with respect
to the inner product) and generators (extreme rays plus a lineality
basis).  Extreme rays are found by exhaustive rank tests over subsets
of the inequalities restricted to the pointed part; no linear
programming is involved, so everything stays in Q.

Faces, duals and angle cones inherit their generators from the parent
cone, so ray enumeration only runs on user-supplied half-space input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg as la
from .linalg import Vector


class InnerProduct:
    """Symmetric positive-definite rational Gram matrix."""

    _identities: dict[int, "InnerProduct"] = {}

    def __init__(self, gram: Sequence[Sequence]):
        g = la.mat(gram)
        n = len(g)
        if any(len(r) != n for r in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        pivots = la.ldl_pivots(g)
        if len(pivots) != n or any(p <= 0 for p in pivots):
            raise ValueError("Gram matrix is not positive definite")
        self.gram = g
        self.n = n
        self.is_identity = g == la.identity(n)

    @classmethod
    def identity(cls, n: int) -> "InnerProduct":
        if n not in cls._identities:
            cls._identities[n] = cls(la.identity(n))
        return cls._identities[n]

    @cached_property
    def inverse_gram(self):
        return la.inverse(self.gram)

    def pair(self, u: Sequence, v: Sequence):
        if self.is_identity:
            return la.dot(u, v)
        return la.dot(u, la.mat_vec(self.gram, v))

    def norm2(self, u: Sequence):
        return self.pair(u, u)

    def covector(self, v: Sequence) -> Vector:
        """Linear functional x -> <v, x> as a row of coefficients."""
        if self.is_identity:
            return tuple(v)
        return la.mat_vec(self.gram, v)

    def from_covector(self, a: Sequence) -> Vector:
        if self.is_identity:
            return tuple(a)
        return la.mat_vec(self.inverse_gram, a)

    @cached_property
    def key(self):
        return self.gram

    def __eq__(self, other):
        return isinstance(other, InnerProduct) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return "InnerProduct(identity)" if self.is_identity else f"InnerProduct({self.gram})"


class Subspace:
    """Linear subspace with a canonical basis and its orthogonal projection."""

    def __init__(self, vectors: Iterable[Sequence], n: int, inner: InnerProduct | None = None):
        self.n = n
        self.inner = inner or InnerProduct.identity(n)
        self.basis: tuple[Vector, ...] = tuple(la.row_basis([la.vec(v) for v in vectors], n))
        self.dim = len(self.basis)

    @cached_property
    def projection(self):
        """Matrix P with P x the orthogonal projection of x onto the subspace."""
        n = self.n
        if self.dim == 0:
            return tuple(la.zeros(n) for _ in range(n))
        if self.dim == n:
            return la.identity(n)
        b = la.transpose(self.basis)  # n x k
        gb = [self.inner.covector(v) for v in self.basis]  # k rows: (G b_i)^T
        small = la.mat_mul(gb, b)  # k x k
        inv = la.inverse(small)
        return la.mat_mul(la.mat_mul(b, inv), gb)

    def project(self, v: Sequence) -> Vector:
        if self.dim == self.n:
            return tuple(v)
        if self.dim == 0:
            return la.zeros(self.n)
        return la.mat_vec(self.projection, v)

    @cached_property
    def annihilator(self) -> tuple[Vector, ...]:
        """Covectors vanishing exactly on the subspace (canonical rref)."""
        return tuple(la.row_basis(la.nullspace(self.basis, self.n), self.n))

    def complement(self) -> "Subspace":
        rows = [self.inner.covector(v) for v in self.basis]
        return Subspace(la.nullspace(rows, self.n), self.n, self.inner)

    def contains(self, v: Sequence) -> bool:
        return all(la.dot(a, v) == 0 for a in self.annihilator)

    def __contains__(self, v):
        return self.contains(v)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n
                and self.basis == other.basis and self.inner == other.inner)

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={[list(map(str, b)) for b in self.basis]})"


def project(h: Sequence, s: Subspace) -> Vector:
    """Orthogonal projection of h onto s."""
    if len(h) != s.n:
        raise ValueError("dimension mismatch")
    return s.project(la.vec(h))


@dataclass(frozen=True)
class HalfSpace:
    """{H : <normal, H> >= 0}."""

    normal: Vector

    def __post_init__(self):
        if la.is_zero(self.normal):
            raise ValueError("half-space normal must be nonzero")


def _int_row(v: Sequence) -> tuple[int, ...]:
    return la.primitive(v)


def _enumerate_rays(n, ineq, eq, inner):
    """Lineality basis and extreme rays of {x : eq x = 0, ineq x >= 0}."""
    lineality = la.nullspace(list(eq) + list(ineq), n)
    cons = list(eq) + [inner.covector(l) for l in lineality]
    wbasis = la.nullspace(cons, n)
    w = len(wbasis)
    if w == 0:
        return lineality, ()
    bt = la.transpose(wbasis)
    rows = {}
    for a in ineq:
        r = tuple(la.dot(a, b) for b in wbasis)
        if not la.is_zero(r):
            rows[_int_row(r)] = r
    m = list(rows.values())
    rays = set()
    for subset in combinations(range(len(m)), w - 1):
        sub = [m[i] for i in subset]
        ns = la.nullspace(sub, w) if sub else [la.unit(1, 0)]
        if len(ns) != 1:
            continue
        y = ns[0]
        for sgn in (1, -1):
            yy = la.scale(sgn, y)
            if all(la.dot(r, yy) >= 0 for r in m):
                x = la.mat_vec(bt, yy)
                rays.add(la.primitive(x))
    return lineality, tuple(sorted(rays))


def _extreme_among(n, generators, lineality, ineq, eq, inner):
    """Filter generators (projected off the lineality) to extreme rays."""
    lin = Subspace(lineality, n, inner)
    comp = lin.complement() if lin.dim else None
    base = list(eq) + [inner.covector(l) for l in lin.basis]
    out = set()
    for g in generators:
        x = comp.project(g) if comp is not None else tuple(g)
        if la.is_zero(x):
            continue
        tight = [a for a in ineq if la.dot(a, x) == 0]
        if la.rank(base + tight) == n - 1:
            out.add(la.primitive(x))
    return tuple(sorted(out))


_intern: dict = {}


class Cone:
    """Polyhedral cone {H : <e, H> = 0 for e in equalities, <a, H> >= 0 for a in inequalities}.

    Normals are interpreted through the inner product, so with a
    non-identity Gram matrix the half-space for normal a is
    {H : a^T G H >= 0}.
    """

    def __init__(self, dim: int, inequalities: Iterable = (), equalities: Iterable = (),
                 inner: InnerProduct | None = None):
        inner = inner or InnerProduct.identity(dim)
        if inner.n != dim:
            raise ValueError("inner product dimension mismatch")
        ineq = []
        for a in inequalities:
            v = a.normal if isinstance(a, HalfSpace) else la.vec(a)
            if len(v) != dim:
                raise ValueError(f"normal {list(map(str, v))} has wrong length (expected {dim})")
            if not la.is_zero(v):
                ineq.append(inner.covector(v))
        eqs = []
        for e in equalities:
            v = la.vec(e)
            if len(v) != dim:
                raise ValueError(f"equality normal has wrong length (expected {dim})")
            if not la.is_zero(v):
                eqs.append(inner.covector(v))
        self._setup(dim, inner, ineq, eqs)

    def _setup(self, dim, inner, ineq_covs, eq_covs):
        self.n = dim
        self.inner = inner
        self._ineq = tuple(sorted({_int_row(a) for a in ineq_covs}))
        self._eq = tuple(la.row_basis([_int_row(e) for e in eq_covs], dim))

    @classmethod
    def _raw(cls, dim, inner, ineq_covs, eq_covs, vrep=None) -> "Cone":
        """Construct from covectors, interning identical inputs."""
        obj = cls.__new__(cls)
        obj._setup(dim, inner, ineq_covs, eq_covs)
        key = (dim, inner.key, obj._ineq, obj._eq)
        hit = _intern.get(key)
        if hit is not None:
            return hit
        if vrep is not None:
            obj.__dict__["_vrep"] = vrep
        _intern[key] = obj
        return obj

    @classmethod
    def from_covectors(cls, dim, ineq_covs=(), eq_covs=(), inner=None) -> "Cone":
        return cls._raw(dim, inner or InnerProduct.identity(dim),
                        [la.vec(a) for a in ineq_covs], [la.vec(e) for e in eq_covs])

    @classmethod
    def from_generators(cls, dim: int, rays: Iterable = (), lines: Iterable = (),
                        inner: InnerProduct | None = None) -> "Cone":
        """Cone spanned by rays (nonnegative) and lines (both signs)."""
        inner = inner or InnerProduct.identity(dim)
        rays = [la.vec(r) for r in rays]
        lines = [la.vec(l) for l in lines]
        for v in rays + lines:
            if len(v) != dim:
                raise ValueError(f"generator has wrong length (expected {dim})")
        dual = Cone(dim, rays, lines, inner)
        return dual_cone(dual)

    @classmethod
    def subspace(cls, dim: int, basis: Iterable = (), inner=None) -> "Cone":
        return cls.from_generators(dim, (), basis, inner)

    @classmethod
    def full(cls, dim: int, inner=None) -> "Cone":
        return cls(dim, (), (), inner)

    @classmethod
    def origin(cls, dim: int, inner=None) -> "Cone":
        return cls(dim, (), [la.unit(dim, i) for i in range(dim)], inner)

    # generators ------------------------------------------------------------
    @cached_property
    def _vrep(self):
        lin, rays = _enumerate_rays(self.n, self._ineq, self._eq, self.inner)
        return tuple(lin), rays

    @cached_property
    def lineality(self) -> Subspace:
        """The minimal face F_0 as a subspace."""
        return Subspace(self._vrep[0], self.n, self.inner)

    @property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        """Extreme rays of the pointed part (orthogonal to the lineality)."""
        return self._vrep[1]

    @cached_property
    def span(self) -> Subspace:
        """V_C, the linear span of the cone."""
        return Subspace(list(self.lineality.basis) + [la.vec(r) for r in self.rays], self.n, self.inner)

    @property
    def dim(self) -> int:
        return self.span.dim

    @property
    def lineality_dim(self) -> int:
        return self.lineality.dim

    @property
    def is_subspace(self) -> bool:
        return not self.rays

    @property
    def is_pointed(self) -> bool:
        return self.lineality.dim == 0

    @cached_property
    def pointed_part(self) -> Subspace:
        """V_C^{F_0}: span of the cone inside the complement of its lineality."""
        return Subspace([la.vec(r) for r in self.rays], self.n, self.inner)

    # facets --------------------------------------------------------------
    @cached_property
    def _facet_data(self):
        """List of (ray incidence set, canonical normal), one per facet."""
        lin = [la.vec(v) for v in self.lineality.basis]
        rays = [la.vec(r) for r in self.rays]
        d = self.dim
        seen = {}
        for a in self._ineq:
            tight = frozenset(i for i, r in enumerate(rays) if la.dot(a, r) == 0)
            if len(tight) == len(rays):
                continue  # implicit equality
            if tight in seen:
                continue
            if la.rank(lin + [rays[i] for i in tight]) == d - 1:
                normal = self.span.project(self.inner.from_covector(a))
                seen[tight] = la.primitive(normal)
        data = sorted(((s, nrm) for s, nrm in seen.items()), key=lambda t: t[1])
        return tuple(data)

    @property
    def facet_normals(self) -> tuple[tuple[int, ...], ...]:
        """Irredundant inequality normals, each lying in V_C (unique up to scaling)."""
        return tuple(nrm for _, nrm in self._facet_data)

    @cached_property
    def facet_covectors(self) -> tuple[Vector, ...]:
        return tuple(_int_row(self.inner.covector(nrm)) for nrm in self.facet_normals)

    @property
    def equations(self) -> tuple[Vector, ...]:
        """Covectors cutting out V_C (canonical rref basis of its annihilator)."""
        return self.span.annihilator

    @cached_property
    def int_equations(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_int_row(e) for e in self.equations)

    @cached_property
    def key(self):
        return (self.n, self.inner.key, self.equations, self.facet_normals)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    # membership ------------------------------------------------------------
    def contains(self, h: Sequence) -> bool:
        h = la.vec(h)
        return (all(la.dot(e, h) == 0 for e in self.int_equations)
                and all(la.dot(a, h) >= 0 for a in self.facet_covectors))

    def rint_contains(self, h: Sequence) -> bool:
        h = la.vec(h)
        return (all(la.dot(e, h) == 0 for e in self.int_equations)
                and all(la.dot(a, h) > 0 for a in self.facet_covectors))

    def __contains__(self, h):
        return self.contains(h)

    @cached_property
    def rint_point(self) -> Vector:
        """A point of the relative interior: the sum of the extreme rays."""
        p = la.zeros(self.n)
        for r in self.rays:
            p = la.add(p, r)
        return p

    def contains_cone(self, other: "Cone") -> bool:
        """Exact set inclusion other ⊆ self, tested on generators."""
        if not all(self.contains(r) for r in other.rays):
            return False
        return all(self.contains(l) and self.contains(la.neg(l)) for l in other.lineality.basis)

    # faces ------------------------------------------------------------------
    @cached_property
    def _faces(self):
        full = frozenset(range(len(self.rays)))
        incid = [s for s, _ in self._facet_data]
        found = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for f in frontier:
                for s in incid:
                    g = f & s
                    if g != f and g not in found:
                        found.add(g)
                        nxt.append(g)
            frontier = nxt
        faces = []
        for rayset in found:
            active = frozenset(i for i, s in enumerate(incid) if rayset <= s)
            faces.append(Face(self, rayset, active))
        faces.sort(key=lambda f: (f.cone.dim, tuple(sorted(f.rays))))
        return tuple(faces)

    def faces(self) -> tuple["Face", ...]:
        return self._faces

    @property
    def minimal_face(self) -> "Face":
        return self._faces[0]

    @property
    def top_face(self) -> "Face":
        return self._faces[-1]

    def face_of(self, other: "Cone") -> "Face | None":
        """The face handle whose cone equals `other`, if any."""
        for f in self._faces:
            if f.cone == other:
                return f
        return None

    def __repr__(self):
        return (f"Cone(n={self.n}, dim={self.dim}, lineality={self.lineality_dim}, "
                f"rays={[list(r) for r in self.rays]})")

    def to_json(self) -> dict:
        fr = lambda v: [str(Fraction(x)) for x in v]
        out = {
            "dim": self.n,
            "inequalities": [fr(v) for v in self.facet_normals],
            "equalities": [fr(self.inner.from_covector(e)) for e in self.int_equations],
            "generators": {"rays": [fr(r) for r in self.rays],
                           "lines": [fr(l) for l in self.lineality.basis]},
        }
        if not self.inner.is_identity:
            out["gram"] = [fr(r) for r in self.inner.gram]
        return out


class Face:
    """A face of a parent cone, identified by its extreme-ray index set.

    `active` holds the indices (into the parent's facet list) of the
    irredundant inequalities tight on the face.
    """

    __slots__ = ("parent", "rays", "active", "__dict__")

    def __init__(self, parent: Cone, rays: frozenset, active: frozenset):
        self.parent = parent
        self.rays = rays
        self.active = active

    @cached_property
    def cone(self) -> Cone:
        p = self.parent
        covs = p.facet_covectors
        ineq = [covs[i] for i in range(len(covs)) if i not in self.active]
        eq = list(p.int_equations) + [covs[i] for i in self.active]
        vrep = (p._vrep[0], tuple(p.rays[i] for i in sorted(self.rays)))
        return Cone._raw(p.n, p.inner, ineq, eq, vrep)

    @property
    def dim(self) -> int:
        return self.cone.dim

    def __le__(self, other: "Face") -> bool:
        return self.parent is other.parent and self.rays <= other.rays

    def __lt__(self, other: "Face") -> bool:
        return self.parent is other.parent and self.rays < other.rays

    def __eq__(self, other):
        return isinstance(other, Face) and self.parent is other.parent and self.rays == other.rays

    def __hash__(self):
        return hash((id(self.parent), self.rays))

    def __repr__(self):
        return f"Face(dim={self.dim}, rays={sorted(self.rays)})"


def sign(k: int) -> int:
    return -1 if k % 2 else 1


def eps(big: Cone | Face, small: Cone | Face) -> int:
    """(-1)^(dim big - dim small)."""
    b = big.cone if isinstance(big, Face) else big
    s = small.cone if isinstance(small, Face) else small
    return sign(b.dim - s.dim)


_dual_cache: dict = {}


def dual_cone(c: Cone) -> Cone:
    """C^∨ = {H : <H, C> >= 0} with respect to the cone's inner product."""
    hit = _dual_cache.get(c.key)
    if hit is not None:
        return hit
    inner = c.inner
    ineq = [inner.covector(r) for r in c.rays]
    eq = [inner.covector(l) for l in c.lineality.basis]
    comp = c.span.complement()
    vrep = (tuple(comp.basis), tuple(sorted(c.facet_normals)))
    d = Cone._raw(c.n, inner, ineq, eq, vrep)
    _dual_cache[c.key] = d
    return d


_angle_cache: dict = {}


def angle_cone(f: Face, c: Cone) -> Cone:
    """A(F, C): directions from a relative-interior point of F into C."""
    if f.parent is not c:
        hit = c.face_of(f.cone) if isinstance(f, Face) else None
        if hit is None:
            raise ValueError("F is not a face of C")
        f = hit
    key = (c.key, f.rays)
    hit = _angle_cache.get(key)
    if hit is not None:
        return hit
    covs = c.facet_covectors
    ineq = [covs[i] for i in sorted(f.active)]
    eq = list(c.int_equations)
    face_span = f.cone.span
    gens = [la.vec(r) for r in c.rays]
    rays = _extreme_among(c.n, gens, face_span.basis, ineq, eq, c.inner)
    a = Cone._raw(c.n, c.inner, ineq, eq, (face_span.basis, rays))
    _angle_cache[key] = a
    return a


def intersect(a: Cone, b: Cone) -> Cone:
    if a.n != b.n or a.inner != b.inner:
        raise ValueError("cones live in different spaces")
    return Cone._raw(a.n, a.inner,
                     list(a.facet_covectors) + list(b.facet_covectors),
                     list(a.int_equations) + list(b.int_equations))


def faces(c: Cone) -> tuple[Face, ...]:
    return c.faces()


def rint_contains(c: Cone, h: Sequence) -> bool:
    return c.rint_contains(h)


def euler_sum(c: Cone) -> int:
    """Σ_F ε_C^F over the face lattice."""
    return sum(eps(c, f) for f in c.faces())
