"""Regularized periods over a relative fan, from toy constant-term data.

A form assigns to each cell P a list of exponent data (λ, q, c): the
constant term along P behaves like Σ c q(H) e^{<λ + ρ_P, H>}.  The truncated
period is then a polynomial-exponential function of the truncation
parameter T, and its purely polynomial part is the regularized period.
The inner periods c are opaque scalars here, so nothing in this module
depends on a second truncation parameter beyond the explicit T'.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from . import linalg as la
from .indicators import Sampler
from .polynomial import Polynomial
from .relative import RelativeCell, RelativeFan, c_coefficient, maximal_cells
from .scalars import Gaussian, Surd, simplify
from .transforms import (PolyExp, gvec, in_convergence_region,
                         laplace_cone, laplace_gamma, monte_carlo_cross_check, pairing)


@dataclass(frozen=True)
class Character:
    xi: tuple  # Gaussian vector in the complexified a_0'

    @classmethod
    def of(cls, values) -> "Character":
        return cls(gvec(values))

    @classmethod
    def zero(cls, n: int) -> "Character":
        return cls(gvec([0] * n))


@dataclass(frozen=True)
class ExponentDatum:
    cell: str  # ambient parabolic id
    lam: tuple  # Gaussian vector
    q: Polynomial
    c: Gaussian = Gaussian(1)

    def to_json(self) -> dict:
        return {
            "lambda_re": [str(x.re) for x in self.lam],
            "lambda_im": [str(x.im) for x in self.lam],
            "q": self.q.to_string(),
            "c_re": str(self.c.re),
            "c_im": str(self.c.im),
        }


@dataclass
class ToyFormData:
    data: dict = field(default_factory=dict)  # cell id -> list[ExponentDatum]

    def items(self):
        for cid in sorted(self.data):
            for i, d in enumerate(self.data[cid]):
                yield cid, i, d

    def validate(self, fan: RelativeFan) -> None:
        for cid, _, d in self.items():
            cell = fan.cell(cid)
            if len(d.lam) != fan.dim:
                raise ValueError(f"λ at cell {cell.label} has length {len(d.lam)}, expected {fan.dim}")
            if d.q.nvars != fan.dim:
                raise ValueError(f"q at cell {cell.label} has {d.q.nvars} variables, expected {fan.dim}")
            if d.q.compose_affine(cell.z_rel.projection) != d.q:
                raise ValueError(f"q at cell {cell.label} depends on directions outside z_P^G")

    def to_json(self) -> dict:
        return {"cells": {cid: [d.to_json() for d in self.data[cid]] for cid in sorted(self.data)}}


def shifted_exponent(fan: RelativeFan, d: ExponentDatum, xi: Character) -> tuple:
    """μ = λ + ξ + ρ̲_P."""
    rho = gvec(fan.cell(d.cell).rho_underline)
    return tuple(a + b + r for a, b, r in zip(d.lam, xi.xi, rho))


def _pointed_rays(cell: RelativeCell) -> list[tuple]:
    """Extreme rays of z̄_P^+ ∩ z_P^G; each spans some z_Q^G with Q ⊇ P maximal."""
    return [la.vec(r) for r in cell.cone.rays]


def _check_xi(fan: RelativeFan, xi: Character) -> None:
    if len(xi.xi) != fan.dim:
        raise ValueError(f"ξ has length {len(xi.xi)}, expected {fan.dim}")
    z_g = fan.top.z
    re = tuple(x.re for x in xi.xi)
    im = tuple(x.im for x in xi.xi)
    if not (z_g.contains(re) and z_g.contains(im)):
        warnings.warn("ξ has components outside the central directions z_G", stacklevel=3)


def is_xi_regular(fan: RelativeFan, form: ToyFormData, xi: Character) -> tuple[bool, list]:
    """<λ + ξ + ρ̲_P, z_Q^G> != 0 for every datum at P and every maximal Q ⊇ P."""
    _check_xi(fan, xi)
    bad = []
    for cid, i, d in form.items():
        cell = fan.cell(cid)
        mu = shifted_exponent(fan, d, xi)
        for r in _pointed_rays(cell):
            if not pairing(fan.inner, mu, r):
                bad.append({"cell": cell.label, "index": i, "lambda": [str(x) for x in d.lam],
                            "ray": [str(x) for x in r]})
    return not bad, bad


def integrability(fan: RelativeFan, form: ToyFormData, xi: Character) -> bool:
    """Re(λ + ξ) + ρ̲_P ∈ -rint(z_P^G ∩ z̄_P^+)^∨ for every datum."""
    _check_xi(fan, xi)
    for cid, _, d in form.items():
        if not in_convergence_region(shifted_exponent(fan, d, xi), fan.cell(cid).cone):
            return False
    return True


def _shift_factor(fan: RelativeFan, cell: RelativeCell, mu, t_prime) -> Gaussian | complex:
    """e^{<μ, T'_P>}; exact when the exponent vanishes."""
    if t_prime is None:
        return Gaussian(1)
    tp = cell.z.project(la.vec(t_prime))
    e = pairing(fan.inner, mu, tp)
    if not e:
        return Gaussian(1)
    return cmath.exp(complex(e))


def _shifted_q(cell: RelativeCell, q: Polynomial, t_prime) -> Polynomial:
    """(q)_{T'}(H) = q(H + T'^G_P)."""
    if t_prime is None:
        return q
    return q.shift(cell.z_rel.project(la.vec(t_prime)))


def truncated_period_expansion(fan: RelativeFan, form: ToyFormData, xi: Character,
                               t_prime: Sequence | None = None) -> PolyExp:
    """Σ_P Σ_i c_i e^{<μ_i, T'_P>} 𝓕(Γ(z̄_P^+, ·, T), (q_i)_{T'}, μ_i) as a function of T."""
    form.validate(fan)
    _check_xi(fan, xi)
    out = PolyExp(fan.dim, fan.inner)
    for cid, _, d in form.items():
        cell = fan.cell(cid)
        mu = shifted_exponent(fan, d, xi)
        term = laplace_gamma(cell.cone, _shifted_q(cell, d.q, t_prime), mu)
        factor = _shift_factor(fan, cell, mu, t_prime)
        weight = complex(d.c) * factor if isinstance(factor, complex) else d.c * factor
        out = out + _scale_polyexp(term, weight)
    return out


def _scale_polyexp(f: PolyExp, c) -> PolyExp:
    if isinstance(c, complex):
        return PolyExp(f.n, f.inner, {k: p.map_coefficients(lambda x: complex(x) * c)
                                      for k, p in f.parts.items()})
    return f.scale(c)


def regularized_period(fan: RelativeFan, form: ToyFormData, xi: Character,
                       t_prime: Sequence | None = None):
    """Σ_P Σ_i c_i e^{<μ_i, T'_P>} 𝓕(z̄_P^+, (q_i)_{T'}, μ_i); exact when T' adds no exponentials."""
    regular, bad = is_xi_regular(fan, form, xi)
    if not regular:
        raise ValueError(f"form is not ξ-regular; offending exponents: {bad}")
    form.validate(fan)
    exact = Surd()
    approx = 0j
    for cid, _, d in form.items():
        cell = fan.cell(cid)
        mu = shifted_exponent(fan, d, xi)
        v = laplace_cone(cell.cone, _shifted_q(cell, d.q, t_prime)).evaluate(mu)
        factor = _shift_factor(fan, cell, mu, t_prime)
        if isinstance(factor, complex) or isinstance(v, complex):
            approx += complex(v) * complex(d.c) * complex(factor)
        else:
            exact = exact + Surd.coerce(v) * d.c
    if approx:
        return complex(exact) + approx
    return simplify(exact)


def period_integral_oracle(fan: RelativeFan, form: ToyFormData, xi: Character,
                           samples: int = 10 ** 6, seed: int = 0) -> complex:
    """Monte Carlo value of the convergent integral defining the period (T' = 0)."""
    if not integrability(fan, form, xi):
        raise ValueError("form is not integrable; the integral diverges")
    total = 0j
    for k, (cid, _, d) in enumerate(form.items()):
        cell = fan.cell(cid)
        mu = shifted_exponent(fan, d, xi)
        est = monte_carlo_cross_check(cell.cone, d.q, mu, samples=samples, seed=seed + k)
        total += complex(est.value) * complex(d.c)
    return total


# random forms ------------------------------------------------------------------------------

def random_polynomial_on(cell: RelativeCell, n: int, sampler: Sampler, degree: int = 2) -> Polynomial:
    """Random polynomial in the coordinates <u_j, H> for a basis u_j of z_P^G."""
    basis = cell.z_rel.basis
    if not basis:
        return Polynomial.constant(n, Fraction(int(sampler.integers(1, 5))))
    coords = [Polynomial.linear(list(u)) for u in basis]
    out = Polynomial.constant(n, Fraction(int(sampler.integers(-3, 3))))
    for _ in range(int(sampler.integers(0, 2))):
        mono = Polynomial.constant(n, Fraction(int(sampler.integers(1, 4)), int(sampler.integers(1, 3))))
        for _ in range(int(sampler.integers(1, degree))):
            mono = mono * sampler.choice(coords)
        out = out + mono
    if out.is_zero():
        out = Polynomial.constant(n, Fraction(1))
    # keep only dependence on z_P^G
    return out.compose_affine(cell.z_rel.projection)


def random_form(fan: RelativeFan, sampler: Sampler, xi: Character | None = None,
                per_cell: int = 1, complex_lambda: bool = True, regular: bool = True,
                max_tries: int = 50) -> ToyFormData:
    """Random toy form; with `regular`, λ is redrawn until ξ-regular."""
    n = fan.dim
    xi = xi or Character.zero(n)
    data = {}
    for cid, cell in fan.cells.items():
        items = []
        for _ in range(per_cell):
            for _ in range(max_tries):
                re = [Fraction(int(sampler.integers(-8, 8)), int(sampler.choice((1, 2, 4))))
                      for _ in range(n)]
                im = [Fraction(int(sampler.integers(-3, 3)), 2) if complex_lambda else Fraction(0)
                      for _ in range(n)]
                lam = tuple(Gaussian(a, b) for a, b in zip(re, im))
                d = ExponentDatum(cid, lam, random_polynomial_on(cell, n, sampler),
                                  Gaussian(Fraction(int(sampler.integers(1, 5)), 2),
                                           Fraction(int(sampler.integers(-2, 2)), 2)))
                if not regular or is_xi_regular(fan, ToyFormData({cid: [d]}), xi)[0]:
                    break
            items.append(d)
        data[cid] = items
    return ToyFormData(data)


# Eisenstein correction terms -------------------------------------------------------------

S = sympy.Symbol("s")


@dataclass(frozen=True)
class EisensteinTerm:
    cell: str
    sgn: int
    shift: Fraction  # c (1 - 2 c_Q)
    varpi: tuple  # generator of z_Q^G pointing into z̄_Q^+
    pairing_t: Fraction  # <ϖ_Q, T>
    weight: Gaussian = Gaussian(1)

    @property
    def pole(self) -> Fraction:
        return -self.shift / self.sgn

    def expression(self) -> sympy.Expr:
        lin = self.sgn * S + sympy.Rational(self.shift.numerator, self.shift.denominator)
        w = sympy.Rational(self.weight.re.numerator, self.weight.re.denominator) + sympy.I * \
            sympy.Rational(self.weight.im.numerator, self.weight.im.denominator)
        k = sympy.Rational(self.pairing_t.numerator, self.pairing_t.denominator)
        return w * sympy.exp(lin * k) / lin

    def evaluate(self, s: complex) -> complex:
        lin = self.sgn * s + float(self.shift)
        return complex(self.weight) * cmath.exp(lin * float(self.pairing_t)) / lin

    def to_json(self) -> dict:
        return {
            "cell": self.cell,
            "sgn": self.sgn,
            "shift": str(self.shift),
            "varpi": [str(x) for x in self.varpi],
            "pairing_T": str(self.pairing_t),
            "weight": str(self.weight),
            "pole": str(self.pole),
            "expression": str(self.expression()),
        }


def eisenstein_correction_terms(fan: RelativeFan, c: Fraction, c_q: dict | None = None,
                                t: Sequence | None = None, cells: Sequence[str] | None = None,
                                weights: dict | None = None) -> tuple[list[EisensteinTerm], list[Fraction]]:
    """One term per (Q, w) with sgn(w) = ±1; returns (terms, sorted pole set).

    c_q maps cell ids to c_Q; when omitted every value is computed from the fan.
    weights maps (cell id, sgn) to the opaque inner-integral value (default 1).
    """
    c = Fraction(c)
    n = fan.dim
    t = la.zeros(n) if t is None else la.vec(t)
    chosen = [fan.cell(x) for x in cells] if cells is not None else maximal_cells(fan)
    terms = []
    for cell in chosen:
        if not cell.is_maximal:
            raise ValueError(f"{cell.label} is not maximal: z_Q^G has dimension {cell.z_rel.dim}")
        if c_q is None:
            cq = c_coefficient(fan, cell.parabolic)
        elif cell.id in c_q:
            cq = Fraction(c_q[cell.id])
        elif cell.label in c_q:
            cq = Fraction(c_q[cell.label])
        else:
            raise ValueError(f"missing c_Q value for {cell.label}")
        varpi = la.vec(cell.cone.rays[0])
        shift = c * (1 - 2 * cq)
        k = fan.inner.pair(varpi, t)
        for sgn in (1, -1):
            w = (weights or {}).get((cell.id, sgn), Gaussian(1))
            terms.append(EisensteinTerm(cell.id, sgn, shift, varpi, k, gvec([w])[0]))
    poles = sorted({x.pole for x in terms})
    return terms, poles


def solve_pole(term: EisensteinTerm) -> list:
    """Independent root of sgn(w) s + c(1 - 2 c_Q) by sympy."""
    lin = term.sgn * S + sympy.Rational(term.shift.numerator, term.shift.denominator)
    return [Fraction(int(r.p), int(r.q)) for r in sympy.solve(lin, S)]
