"""Laplace transforms of cones and of Γ regions, computed exactly.

Integrals are taken over V_C^{F_0}, the span of the pointed part of the
cone, with the Lebesgue measure of the inner product.  A simplicial cone
with generators u_1..u_d contributes

    vol(U) * Σ_β c_β Π_i β_i! / (-<λ, u_i>)^(β_i+1)

where q(U y) = Σ_β c_β y^β and vol(U) = sqrt(det(U^T G U)).  General
cones are triangulated by pulling from a vertex ray.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from .cones import Cone, dual_cone, angle_cone, eps, Subspace
from .polynomial import Polynomial
from .scalars import Gaussian, Surd, simplify

DEGREE_CAP = 6


def gvec(xs) -> tuple:
    """Vector of Gaussian rationals."""
    out = []
    for x in xs:
        if isinstance(x, Gaussian):
            out.append(x)
        elif isinstance(x, (tuple, list)) and len(x) == 2:
            out.append(Gaussian(x[0], x[1]))
        else:
            out.append(Gaussian(x))
    return tuple(out)


def gdot(u, v):
    return sum((a * b for a, b in zip(u, v)), Gaussian(0))


def gproject(s: Subspace, v) -> tuple:
    """Orthogonal projection of a complex vector."""
    re = s.project([x.re for x in v])
    im = s.project([x.im for x in v])
    return tuple(Gaussian(a, b) for a, b in zip(re, im))


def pairing(inner, lam, u):
    """<λ, u> for complex λ."""
    return gdot(lam, inner.covector(u))


def _canon_form(cov) -> tuple[tuple[int, ...], Fraction]:
    """Linear form a -> (primitive a~ with positive lead, s) with a = s a~."""
    p = la.canonical_line(cov)
    for x, y in zip(cov, p):
        if y != 0:
            return p, Fraction(x) / y
    raise ValueError("zero linear form")


# triangulation -------------------------------------------------------------------

def triangulate(c: Cone, reverse: bool = False) -> list[tuple[int, ...]]:
    """Pulling triangulation of the pointed part of C into simplicial cones.

    Returns tuples of indices into c.rays.  With reverse=True the apex is
    taken from the end of the ray order, giving a different triangulation.
    """
    d = c.dim - c.lineality_dim
    if d == 0:
        return [()]
    by_rays = {f.rays: f for f in c.faces()}
    order = sorted(range(len(c.rays)), reverse=reverse)

    def facets(rayset):
        dim = by_rays[rayset].dim
        return [f.rays for f in c.faces() if f.rays < rayset and f.dim == dim - 1]

    def rec(rayset):
        dim = by_rays[rayset].dim - c.lineality_dim
        if len(rayset) == dim:
            return [tuple(sorted(rayset))]
        apex = next(i for i in order if i in rayset)
        out = []
        for f in facets(rayset):
            if apex in f:
                continue
            for simplex in rec(f):
                out.append(tuple(sorted(simplex + (apex,))))
        return out

    return rec(frozenset(range(len(c.rays))))


def gram_volume(inner, gens) -> Surd:
    """sqrt(det(U^T G U)) for generator columns U."""
    if not gens:
        return Surd.coerce(1)
    m = [[inner.pair(u, v) for v in gens] for u in gens]
    return Surd.sqrt(la.det(m))


# meromorphic transforms ------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    coeff: object                  # Surd / Gaussian / Fraction
    shift: tuple                   # exponential factor e^{<λ, shift>}
    numerator: Polynomial          # polynomial in λ (ambient coordinates)
    denominator: tuple             # ((covector form, multiplicity), ...), forms canonical


@dataclass
class MeromorphicTransform:
    """Σ coeff e^{<λ,v>} N(λ) / Π <λ-form>^m with exact coefficients.

    Denominator forms are covectors a with the form λ -> Σ a_j λ_j.
    """

    n: int
    inner: object
    terms: list = field(default_factory=list)

    def __add__(self, other):
        return MeromorphicTransform(self.n, self.inner, self.terms + other.terms)

    def scale(self, c):
        return MeromorphicTransform(
            self.n, self.inner,
            [Term(t.coeff * c, t.shift, t.numerator, t.denominator) for t in self.terms])

    def poles(self) -> list[tuple[int, ...]]:
        seen = []
        for t in self.terms:
            for f, _ in t.denominator:
                if f not in seen:
                    seen.append(f)
        return seen

    def evaluate(self, lam):
        """Exact value when no exponential survives, otherwise a complex float."""
        lam = gvec(lam)
        exact = Surd()
        approx = 0j
        for t in self.terms:
            den = Gaussian(1)
            for f, m in t.denominator:
                v = gdot(lam, f)
                if not v:
                    raise ZeroDivisionError(f"λ lies on the pole <λ,{f}> = 0")
                den = den * v ** m
            val = Surd.coerce(t.coeff) * (t.numerator.evaluate(lam) / den)
            e = pairing(self.inner, lam, t.shift) if any(t.shift) else Gaussian(0)
            if e:
                approx += complex(val) * complex(np.exp(complex(e)))
            else:
                exact = exact + val
        if approx:
            return complex(exact) + approx
        return simplify(exact)

    def _grouped(self):
        groups: dict = {}
        for t in self.terms:
            groups.setdefault(tuple(t.shift), []).append(t)
        return groups

    def numerators_over_common_denominator(self):
        """Per exponential shift: (common denominator, numerator polynomial)."""
        out = {}
        for shift, ts in self._grouped().items():
            common: dict = {}
            for t in ts:
                for f, m in t.denominator:
                    common[f] = max(common.get(f, 0), m)
            total = Polynomial(self.n)
            for t in ts:
                have = dict(t.denominator)
                p = t.numerator * Surd.coerce(t.coeff)
                for f, m in common.items():
                    k = m - have.get(f, 0)
                    if k:
                        p = p * (Polynomial.linear(list(f)) ** k)
                total = total + p
            out[shift] = (tuple(sorted(common.items())), total)
        return out

    def equals(self, other: "MeromorphicTransform") -> bool:
        """Symbolic equality via numerators over a shared common denominator."""
        diff = self + other.scale(-1)
        for _, num in diff.numerators_over_common_denominator().values():
            if not num.is_zero():
                return False
        return True

    def derivative(self, j: int) -> "MeromorphicTransform":
        """∂/∂λ_j of every term."""
        out = []
        for t in self.terms:
            g = self.inner.covector(t.shift) if any(t.shift) else None
            if g is not None and g[j]:
                out.append(Term(t.coeff * g[j], t.shift, t.numerator, t.denominator))
            dn = t.numerator.derivative(j)
            if dn:
                out.append(Term(t.coeff, t.shift, dn, t.denominator))
            for idx, (f, m) in enumerate(t.denominator):
                if f[j]:
                    den = list(t.denominator)
                    den[idx] = (f, m + 1)
                    out.append(Term(t.coeff * (-m * f[j]), t.shift, t.numerator, tuple(den)))
        return MeromorphicTransform(self.n, self.inner, out)

    def to_json(self) -> list:
        rows = []
        for t in self.terms:
            rows.append({
                "coeff": str(simplify(t.coeff)),
                "shift": [str(x) for x in t.shift],
                "numerator": t.numerator.to_string("L"),
                "denominator": [{"form": list(f), "power": m} for f, m in t.denominator],
            })
        return rows


def _check_q(c: Cone, q: Polynomial):
    if q.nvars != c.n:
        raise ValueError(f"polynomial has {q.nvars} variables, cone lives in dimension {c.n}")
    if q.degree() > DEGREE_CAP:
        raise ValueError(f"polynomial degree {q.degree()} exceeds cap {DEGREE_CAP}")
    for l in c.lineality.basis:
        # directional derivative along the lineality must vanish
        d = Polynomial(c.n)
        for j, x in enumerate(l):
            if x:
                d = d + q.derivative(j) * x
        if not d.is_zero():
            raise ValueError("q depends on directions of the minimal face F_0")


def _monomial_table(q: Polynomial, gens, extra_vars: int = 0):
    """Group q(U y [, T]) by y-exponent.

    q has n (+ extra_vars) variables; the first n are substituted by U y.
    Returns {β: Polynomial in the extra variables}.
    """
    n = len(gens[0]) if gens else q.nvars - extra_vars
    d = len(gens)
    images = []
    for i in range(n):
        coeffs = [gens[k][i] for k in range(d)] + [0] * extra_vars
        images.append(Polynomial.linear(coeffs))
    for j in range(extra_vars):
        images.append(Polynomial.variable(d + extra_vars, d + j))
    sub = q.substitute(images) if images else q
    table: dict = {}
    for e, cf in sub.terms.items():
        beta, rest = e[:d], e[d:]
        table.setdefault(beta, {})
        table[beta][rest] = cf
    return {b: Polynomial(extra_vars, t) for b, t in table.items()}


def _simplicial_terms(inner, gens, q: Polynomial, n: int) -> list[Term]:
    vol = gram_volume(inner, gens)
    forms = []
    for u in gens:
        f, s = _canon_form(inner.covector(u))
        forms.append((f, s))
    out = []
    for beta, cpoly in _monomial_table(q, gens).items():
        cf = cpoly.constant_term()
        if not cf:
            continue
        coeff = Surd.coerce(cf) * vol
        den: dict = {}
        for (f, s), b in zip(forms, beta):
            # β! / (-s <λ,f>)^(β+1)
            coeff = coeff * Fraction(math.factorial(b), (-s) ** (b + 1))
            den[f] = den.get(f, 0) + b + 1
        out.append(Term(coeff, la.zeros(n), Polynomial.constant(n, Fraction(1)),
                        tuple(sorted(den.items()))))
    return out


def laplace_cone(c: Cone, q: Polynomial | str | None = None, reverse: bool = False) -> MeromorphicTransform:
    """∫_{V_C^{F_0}} [C](H) e^{<λ,H>} q(H) dH as a symbolic function of λ."""
    n = c.n
    q = _as_poly(q, n)
    _check_q(c, q)
    out = MeromorphicTransform(n, c.inner)
    if c.dim == c.lineality_dim:
        out.terms.append(Term(Surd.coerce(q.evaluate(la.zeros(n))) if q.terms else Surd(),
                              la.zeros(n), Polynomial.constant(n, Fraction(1)), ()))
        return out
    rays = [la.vec(r) for r in c.rays]
    for simplex in triangulate(c, reverse):
        gens = [rays[i] for i in simplex]
        out.terms.extend(_simplicial_terms(c.inner, gens, q, n))
    return out


def laplace_cone_via_derivatives(c: Cone, q: Polynomial | str | None = None,
                                 translate: Sequence | None = None) -> MeromorphicTransform:
    """Same integral over the translated cone T + C, computed as q(∂_λ) applied
    to e^{<λ,T>} times the q = 1 transform."""
    n = c.n
    q = _as_poly(q, n)
    base = laplace_cone(c, None)
    if translate is not None:
        t = la.vec(translate)
        base = MeromorphicTransform(n, c.inner,
                                    [Term(x.coeff, t, x.numerator, x.denominator) for x in base.terms])
    ginv = c.inner.inverse_gram if not c.inner.is_identity else la.identity(n)

    def d_h(tr, i):
        # operator whose action on e^{<λ,H>} multiplies by H_i
        acc = MeromorphicTransform(n, c.inner)
        for k in range(n):
            if ginv[i][k]:
                acc = acc + tr.derivative(k).scale(ginv[i][k])
        return acc

    out = MeromorphicTransform(n, c.inner)
    for e, cf in q.terms.items():
        tr = base
        for i, k in enumerate(e):
            for _ in range(k):
                tr = d_h(tr, i)
        out = out + tr.scale(cf)
    return out


def _as_poly(q, n) -> Polynomial:
    if q is None:
        return Polynomial.constant(n, Fraction(1))
    if isinstance(q, str):
        return Polynomial.parse(q, n)
    return q


# regularity -------------------------------------------------------------------------

@dataclass(frozen=True)
class RegularityRegion:
    """λ is regular iff <λ, line> != 0 for each listed line V_F^{F_0}, F minimal."""

    lines: tuple
    inner: object

    def contains(self, lam) -> bool:
        lam = gvec(lam)
        return all(pairing(self.inner, lam, u) for u in self.lines)


def regularity_region(c: Cone) -> RegularityRegion:
    # minimal non-trivial faces are F_0 + one extreme ray
    return RegularityRegion(tuple(c.rays), c.inner)


def is_regular(lam, c: Cone) -> bool:
    return regularity_region(c).contains(lam)


def in_convergence_region(lam, c: Cone) -> bool:
    """Re λ ∈ -rint(V^{F_0} ∩ C)^∨: <Re λ, u> < 0 on every extreme ray."""
    lam = gvec(lam)
    re = tuple(x.re for x in lam)
    return all(c.inner.pair(re, r) < 0 for r in c.rays)


# polynomial-exponential functions ------------------------------------------------------

class PolyExp:
    """Σ_key e^{<key, T>} p_key(T); keys are exact (Gaussian) vectors."""

    def __init__(self, n: int, inner, parts=None):
        self.n = n
        self.inner = inner
        self.parts: dict = {}
        for k, p in (parts or {}).items():
            self._add(k, p)

    def _add(self, key, p: Polynomial):
        key = gvec(key)
        if key in self.parts:
            p = self.parts[key] + p
        if p.is_zero():
            self.parts.pop(key, None)
        else:
            self.parts[key] = p

    def __add__(self, other: "PolyExp") -> "PolyExp":
        out = PolyExp(self.n, self.inner, self.parts)
        for k, p in other.parts.items():
            out._add(k, p)
        return out

    def scale(self, c) -> "PolyExp":
        return PolyExp(self.n, self.inner, {k: p * c for k, p in self.parts.items()})

    def purely_polynomial_part(self) -> Polynomial:
        zero = gvec(la.zeros(self.n))
        return self.parts.get(zero, Polynomial(self.n))

    def exponents(self) -> list:
        return list(self.parts)

    def evaluate(self, t) -> complex:
        t = la.vec(t)
        total = 0j
        for k, p in self.parts.items():
            e = complex(pairing(self.inner, k, t))
            total += np.exp(e) * p.evaluate_complex([float(x) for x in t])
        return complex(total)

    def evaluate_exact(self, t):
        """Exact value when only the polynomial part is present."""
        if any(any(k) for k in self.parts):
            raise ValueError("exponential parts present; use evaluate()")
        return simplify(self.purely_polynomial_part().evaluate(la.vec(t)))

    def translate(self, s) -> "PolyExp":
        """T -> f(T + S).  The polynomial part stays exact; other parts carry
        floating e^{<key,S>} factors."""
        s = la.vec(s)
        out = PolyExp(self.n, self.inner)
        for k, p in self.parts.items():
            shifted = p.shift(s)
            if any(k):
                f = complex(np.exp(complex(pairing(self.inner, k, s))))
                shifted = shifted.map_coefficients(lambda c, f=f: complex(c) * f)
            out._add(k, shifted)
        return out

    def to_json(self) -> list:
        rows = []
        for k in sorted(self.parts, key=lambda v: [(x.re, x.im) for x in v]):
            rows.append({"exponent": [str(x) for x in k],
                         "polynomial": self.parts[k].to_string("T")})
        return rows


def purely_polynomial_part(f: PolyExp) -> Polynomial:
    return f.purely_polynomial_part()


# Γ transform ----------------------------------------------------------------------------

def _series_inverse_power(a, b, m: int, order: int):
    """Coefficients c_0..c_order of (a + b ε)^(-m), a != 0."""
    out = []
    ratio = b / a
    base = a ** (-m) if m else Gaussian(1)
    coef = Gaussian(1)
    for k in range(order + 1):
        out.append(base * coef)
        # binomial(-m, k+1) / binomial(-m, k) = (-m - k)/(k+1)
        coef = coef * Fraction(-m - k, k + 1) * ratio
    return out


def _pick_direction(inner, w: Subspace, forms) -> tuple:
    """A rational direction in W pairing nonzero with every listed vector."""
    n = w.n
    for k in range(1, 200):
        cand = tuple(Fraction((k * (i + 1) ** 2 + i * 7) % 13 - 6 + (i == 0) * k) for i in range(n))
        d = w.project(cand)
        if la.is_zero(d):
            continue
        if all(inner.pair(d, u) != 0 for u in forms):
            return d
    raise RuntimeError("could not find a generic direction")


def laplace_gamma(c: Cone, q: Polynomial | str | None, lam) -> PolyExp:
    """𝓕(Γ(C), T, q, λ) as a polynomial-exponential function of T.

    T enters through its projection to V_C^{F_0}; λ must be numeric
    (Gaussian rational).  Poles of individual face terms are resolved by
    a Laurent expansion along a generic direction.
    """
    n = c.n
    q = _as_poly(q, n)
    _check_q(c, q)
    inner = c.inner
    lam = gvec(lam)
    w = c.pointed_part
    lam_w = gproject(w, lam)
    if w.dim == 0:
        return PolyExp(n, inner, {la.zeros(n): Polynomial.constant(n, q.evaluate(la.zeros(n)))})

    f0 = c.minimal_face
    pieces = []
    all_gens = []
    for f in c.faces():
        d_rays = [la.vec(r) for r in dual_cone(f.cone).rays]
        a_rays = [la.vec(r) for r in angle_cone(f, c).rays]
        k_cone = Cone.from_generators(n, d_rays + a_rays, (), inner)
        fw = Subspace(d_rays, n, inner)  # V_F^{F_0}
        pieces.append((eps(f, f0), f, k_cone, fw))
        all_gens.extend(la.vec(r) for r in k_cone.rays)

    zero_forms = [u for u in all_gens if not pairing(inner, lam_w, u)]
    direction = _pick_direction(inner, w, zero_forms) if zero_forms else la.zeros(n)
    order = (q.degree() + 1) * w.dim if zero_forms else 0

    # q(H + T_F) in variables (H, T)
    big = 2 * n
    groups: dict = {}
    for sgn, f, k_cone, fw in pieces:
        pf = fw.projection
        images = []
        for i in range(n):
            coeffs = [Fraction(int(i == j)) for j in range(n)] + list(pf[i])
            images.append(Polynomial.linear(coeffs))
        q_shift = q.substitute(images) if q.terms else Polynomial(big)
        key = gproject(fw, lam_w)
        # e^{ε<d, T_F>} expansion: <d, T_F> = <P_F d, T>
        dproj = fw.project(direction)
        lin = Polynomial.linear(list(inner.covector(dproj)))
        exp_series = [Polynomial.constant(n, Fraction(1))]
        for k in range(1, order + 1):
            exp_series.append(exp_series[-1] * lin * Fraction(1, k))
        rays = [la.vec(r) for r in k_cone.rays]
        acc = groups.setdefault(key, {})
        for simplex in triangulate(k_cone):
            gens = [rays[i] for i in simplex]
            vol = gram_volume(inner, gens)
            ells = [(pairing(inner, lam_w, u), inner.pair(direction, u)) for u in gens]
            for beta, cpoly in _monomial_table(q_shift, gens, n).items():
                # Laurent series of Π β_i! (-ℓ_i(ε))^-(β_i+1)
                series = {0: Gaussian(1)}
                for (a, b), bi in zip(ells, beta):
                    m = bi + 1
                    fac = Fraction(math.factorial(bi)) * (-1) ** m
                    if a:
                        coeffs = {k: v * fac for k, v in enumerate(_series_inverse_power(a, b, m, order))}
                    else:
                        coeffs = {-m: Gaussian(b) ** (-m) * fac}
                    new = {}
                    for p1, v1 in series.items():
                        for p2, v2 in coeffs.items():
                            p = p1 + p2
                            if p <= order:
                                new[p] = new.get(p, Gaussian(0)) + v1 * v2
                    series = new
                for p, v in series.items():
                    if not v:
                        continue
                    for k, ek in enumerate(exp_series):
                        tot = p + k
                        if tot > 0:
                            continue
                        contrib = cpoly * ek * (Surd.coerce(v) * vol * sgn)
                        acc[tot] = acc[tot] + contrib if tot in acc else contrib
    out = PolyExp(n, inner)
    for key, ser in groups.items():
        for p, poly in ser.items():
            if p < 0 and not poly.is_zero():
                raise ArithmeticError(f"uncancelled pole of order {-p} at exponent {key}")
        if 0 in ser:
            out._add(key, ser[0])
    return out


# Monte Carlo oracle ------------------------------------------------------------------------

def _orthonormal_basis(inner, basis):
    g = np.array([[float(x) for x in r] for r in inner.gram])
    out = []
    for b in basis:
        v = np.array([float(x) for x in b])
        for u in out:
            v = v - (u @ g @ v) * u
        v = v / math.sqrt(v @ g @ v)
        out.append(v)
    return np.array(out)


def _poly_numpy(p: Polynomial, pts: np.ndarray) -> np.ndarray:
    out = np.zeros(pts.shape[0], dtype=complex)
    for e, cf in p.terms.items():
        term = np.full(pts.shape[0], complex(cf), dtype=complex)
        for i, k in enumerate(e):
            if k:
                term = term * pts[:, i] ** k
        out += term
    return out


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: complex
    stderr: float
    samples: int
    seed: int

    def to_json(self):
        return {"re": self.value.real, "im": self.value.imag, "stderr": self.stderr,
                "samples": self.samples, "seed": self.seed}


def monte_carlo_cross_check(c: Cone, q, lam, samples: int = 10 ** 6, seed: int = 0,
                            chunk: int = 250_000) -> MonteCarloEstimate:
    """Direction sampling: uniform unit directions θ in V_C^{F_0}, exact radial integral.

    ∫_C e^{<λ,H>} q(H) dH = ∫_{S} [θ ∈ C] Σ_k q_k(θ) Γ(d+k) / (-<λ,θ>)^(d+k) dθ
    """
    n = c.n
    q = _as_poly(q, n)
    _check_q(c, q)
    lam = gvec(lam)
    if not in_convergence_region(lam, c):
        raise ValueError("λ is outside the convergence region of the cone")
    w = c.pointed_part
    d = w.dim
    if d == 0:
        v = complex(q.evaluate(la.zeros(n))) if q.terms else 0j
        return MonteCarloEstimate(v, 0.0, samples, seed)
    basis = _orthonormal_basis(c.inner, w.basis)  # d x n
    g = np.array([[float(x) for x in r] for r in c.inner.gram])
    lam_c = np.array([complex(x) for x in lam])
    covs = np.array([[float(x) for x in a] for a in c.facet_covectors]) if c.facet_covectors else np.zeros((0, n))
    parts = q.homogeneous_parts()
    area = 2 * math.pi ** (d / 2) / math.gamma(d / 2)
    rng = np.random.default_rng(seed)
    total = 0j
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        x = rng.standard_normal((m, d))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        h = x @ basis  # m x n, unit vectors in W
        inside = np.all(h @ covs.T >= 0, axis=1) if covs.shape[0] else np.ones(m, bool)
        a = -(h @ g @ lam_c)
        vals = np.zeros(m, dtype=complex)
        for k, pk in parts.items():
            vals += _poly_numpy(pk, h) * math.gamma(d + k) / a ** (d + k)
        vals = np.where(inside, vals, 0)
        total += vals.sum()
        total_sq += float(np.sum(np.abs(vals) ** 2))
        done += m
    mean = total / samples
    var = max(total_sq / samples - abs(mean) ** 2, 0.0)
    return MonteCarloEstimate(complex(area * mean), area * math.sqrt(var / samples), samples, seed)
