"""Type-A root data: products of GL(n_i) and their semi-standard parabolics.

A parabolic is an ordered set partition of each factor's index set.
The chamber a_P^+ consists of vectors constant on blocks whose block
values strictly decrease along the ordering.  a_0 = R^N carries the
standard inner product; the center direction a_G is kept.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Sequence

from . import linalg as la
import numpy as np

from .cones import Cone, InnerProduct, Subspace, dual_cone
from .indicators import gamma_sum


@dataclass(frozen=True)
class RootDatum:
    """GL(n_1) x ... x GL(n_k) acting on a_0 = R^(n_1 + ... + n_k)."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        if not self.blocks or any(b < 1 for b in self.blocks):
            raise ValueError("datum blocks must be positive integers")

    @property
    def rank(self) -> int:
        return sum(self.blocks)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for b in self.blocks:
            out.append(acc)
            acc += b
        return tuple(out)

    @property
    def inner(self) -> InnerProduct:
        return InnerProduct.identity(self.rank)

    def to_json(self) -> dict:
        return {"blocks": list(self.blocks)}

    @classmethod
    def from_json(cls, obj) -> "RootDatum":
        try:
            return cls(tuple(int(b) for b in obj["blocks"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed root datum: {exc}") from None

    def __str__(self):
        return " x ".join(f"GL({b})" for b in self.blocks)


def _set_partitions(items: tuple) -> Iterable[list[tuple]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [tuple(sorted((first,) + part[i]))] + part[i + 1:]
        yield [(first,)] + part


def _ordered_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    out = set()
    for part in _set_partitions(tuple(range(1, n + 1))):
        for perm in permutations(part):
            out.add(tuple(perm))
    return sorted(out)


class Parabolic:
    """Semi-standard parabolic: per factor, an ordered tuple of blocks (1-based indices)."""

    def __init__(self, datum: RootDatum, parts: Sequence[Sequence[Sequence[int]]]):
        parts = tuple(tuple(tuple(sorted(int(i) for i in b)) for b in factor) for factor in parts)
        if len(parts) != len(datum.blocks):
            raise ValueError("parabolic needs one ordered partition per GL factor")
        for n, factor in zip(datum.blocks, parts):
            flat = sorted(i for b in factor for i in b)
            if flat != list(range(1, n + 1)) or any(not b for b in factor):
                raise ValueError(f"{[list(b) for b in factor]} is not an ordered set partition of 1..{n}")
        self.datum = datum
        self.parts = parts

    # identity --------------------------------------------------------------
    @property
    def id(self) -> str:
        return json.dumps([[list(b) for b in f] for f in self.parts], separators=(",", ":"))

    @property
    def label(self) -> str:
        chunks = []
        for f in self.parts:
            chunks.append("(" + ",".join("{" + ",".join(map(str, b)) + "}" for b in f) + ")")
        return "x".join(chunks)

    def __eq__(self, other):
        return isinstance(other, Parabolic) and self.datum == other.datum and self.parts == other.parts

    def __hash__(self):
        return hash((self.datum, self.parts))

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    @property
    def sort_key(self):
        return self.parts

    def __repr__(self):
        return f"Parabolic({self.label})"

    @classmethod
    def from_json(cls, datum: RootDatum, obj) -> "Parabolic":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(datum, obj)

    # combinatorics ------------------------------------------------------------
    @cached_property
    def blocks(self) -> tuple[tuple[int, int, tuple[int, ...]], ...]:
        """(factor, position, global 0-based indices) for every block."""
        out = []
        for f, (off, factor) in enumerate(zip(self.datum.offsets, self.parts)):
            for j, b in enumerate(factor):
                out.append((f, j, tuple(off + i - 1 for i in b)))
        return tuple(out)

    def block_vector(self, idx: Sequence[int]) -> tuple:
        n = self.datum.rank
        return tuple(Fraction(int(i in idx)) for i in range(n))

    def __le__(self, other: "Parabolic") -> bool:
        """P ⊆ Q: Q's blocks are unions of consecutive P-blocks, in order."""
        if self.datum != other.datum:
            return False
        for mine, theirs in zip(self.parts, other.parts):
            k = 0
            for qb in theirs:
                acc = set()
                while acc != set(qb):
                    if k >= len(mine) or not set(mine[k]) <= set(qb):
                        return False
                    acc |= set(mine[k])
                    k += 1
        return True

    def __ge__(self, other):
        return other <= self

    @cached_property
    def a(self) -> Subspace:
        """a_P: vectors constant on each block."""
        return Subspace([self.block_vector(b) for _, _, b in self.blocks], self.datum.rank)

    @cached_property
    def simple_roots(self) -> dict:
        """Δ_P keyed by (factor, j) for the pair of consecutive blocks j, j+1."""
        out = {}
        bl = self.blocks
        for (f1, j1, b1), (f2, j2, b2) in zip(bl, bl[1:]):
            if f1 != f2:
                continue
            v1 = la.scale(Fraction(1, len(b1)), self.block_vector(b1))
            v2 = la.scale(Fraction(1, len(b2)), self.block_vector(b2))
            out[(f1, j1)] = la.sub(v1, v2)
        return out

    def _check_le(self, q):
        if not self <= q:
            raise ValueError(f"{self.label} is not contained in {q.label}")

    def roots_relative(self, q: "Parabolic") -> dict:
        """Δ_P^Q: simple roots of P vanishing on a_Q."""
        self._check_le(q)
        return {k: v for k, v in self.simple_roots.items()
                if all(la.dot(v, b) == 0 for b in q.a.basis)}

    def coweights_relative(self, q: "Parabolic") -> dict:
        """Δ̂_P^Q: the basis of a_P^Q dual to Δ_P^Q."""
        roots = self.roots_relative(q)
        keys = list(roots)
        if not keys:
            return {}
        gram = [[la.dot(roots[a], roots[b]) for b in keys] for a in keys]
        inv = la.inverse(gram)
        out = {}
        for i, k in enumerate(keys):
            v = la.zeros(self.datum.rank)
            for j, kj in enumerate(keys):
                v = la.add(v, la.scale(inv[j][i], roots[kj]))
            out[k] = v
        return out

    def a_rel(self, q: "Parabolic") -> Subspace:
        """a_P^Q, the orthogonal complement of a_Q in a_P."""
        return Subspace(list(self.roots_relative(q).values()), self.datum.rank)

    def chamber_cone(self, relative_to: "Parabolic | None" = None) -> Cone:
        """Closed chamber of P, or the angle cone A(ā_Q^+, ā_P^+) when Q is given."""
        n = self.datum.rank
        eqs = list(self.a.annihilator)
        if relative_to is None:
            ineq = list(self.simple_roots.values())
        else:
            ineq = list(self.roots_relative(relative_to).values())
        return Cone(n, ineq, eqs)

    @cached_property
    def rho(self) -> tuple:
        """Half the sum of the roots of a_P in Lie(N_P)."""
        n = self.datum.rank
        out = [Fraction(0)] * n
        for f, factor in enumerate(self.parts):
            sizes = [len(b) for b in factor]
            off = self.datum.offsets[f]
            for j, b in enumerate(factor):
                val = Fraction(sum(sizes[j + 1:]) - sum(sizes[:j]), 2)
                for i in b:
                    out[off + i - 1] = val
        return tuple(out)

    @cached_property
    def dim_nilradical(self) -> int:
        total = 0
        for factor in self.parts:
            sizes = [len(b) for b in factor]
            total += sum(sizes[i] * sizes[j] for i in range(len(sizes)) for j in range(i + 1, len(sizes)))
        return total

    @property
    def nilradical_abelian(self) -> bool:
        """N_P is abelian iff every factor has at most two blocks."""
        return all(len(f) <= 2 for f in self.parts)

    def is_group(self) -> bool:
        return all(len(f) == 1 for f in self.parts)

    def is_minimal(self) -> bool:
        return all(len(b) == 1 for f in self.parts for b in f)

    def refining_borel(self) -> "Parabolic":
        """The Borel contained in P that splits every block in increasing order."""
        return Parabolic(self.datum, [[(i,) for b in f for i in b] for f in self.parts])


def whole_group(datum: RootDatum) -> Parabolic:
    return Parabolic(datum, [[tuple(range(1, n + 1))] for n in datum.blocks])


def standard_borel(datum: RootDatum) -> Parabolic:
    return Parabolic(datum, [[(i,) for i in range(1, n + 1)] for n in datum.blocks])


def parabolics(datum: RootDatum, containing: Parabolic | None = None) -> list[Parabolic]:
    """All semi-standard parabolics, optionally only those containing a given one."""
    per_factor = [_ordered_partitions(n) for n in datum.blocks]
    out = [Parabolic(datum, combo) for combo in product(*per_factor)]
    if containing is not None:
        out = [p for p in out if containing <= p]
    return sorted(out)


def rho(p: Parabolic) -> tuple:
    return p.rho


def dim_nilradical(p: Parabolic) -> int:
    return p.dim_nilradical


def chamber_cone(p: Parabolic, relative_to: Parabolic | None = None) -> Cone:
    return p.chamber_cone(relative_to)


# Γ̃ and its explicit description ------------------------------------------------------

def tilde_gamma(r: Parabolic, p: Parabolic, h: Sequence, t: Sequence) -> int:
    """Γ̃_R^P(H, T) = Γ(A(ā_P^+, ā_R^+), H, T)."""
    r._check_le(p)
    return tilde_gamma_sum(r, p).evaluate(la.vec(h), la.vec(t))


_tg_cache: dict = {}


def tilde_gamma_sum(r: Parabolic, p: Parabolic):
    key = (r, p)
    if key not in _tg_cache:
        _tg_cache[key] = gamma_sum(r.chamber_cone(p))
    return _tg_cache[key]


def tilde_gamma_oracle(r: Parabolic, p: Parabolic, h: Sequence, t: Sequence) -> int:
    """The four-condition characteristic function valid for T in a_0^+."""
    h, t = la.vec(h), la.vec(t)
    if p.a.project(h) != p.a.project(t):
        return 0
    if not r.a.contains(h):
        return 0
    if any(la.dot(a, h) <= 0 for a in r.roots_relative(p).values()):
        return 0
    diff = la.sub(h, t)
    if any(la.dot(w, diff) > 0 for w in r.coweights_relative(p).values()):
        return 0
    return 1


# exhaustive and sampled checks ------------------------------------------------------------

def check_basic_root_props(p: Parabolic, q: Parabolic) -> dict[str, bool]:
    """The four standard chamber facts for P ⊆ Q, checked exactly."""
    roots = list(p.roots_relative(q).values())
    weights = list(p.coweights_relative(q).values())
    part1 = all(la.dot(a, b) <= 0 for i, a in enumerate(roots) for b in roots[i + 1:])
    part2 = all(la.dot(a, b) >= 0 for a in weights for b in weights)
    ang = p.chamber_cone(q)
    n = p.datum.rank
    rel = p.a_rel(q)
    inter = Cone(n, [la.vec(x) for x in ang.facet_normals],
                 list(ang.int_equations) + list(rel.annihilator))
    part3 = dual_cone(ang).contains_cone(inter)
    cp, cq = p.chamber_cone(), q.chamber_cone()
    proj = [q.a.project(la.vec(r)) for r in cp.rays] + \
           [q.a.project(la.vec(l)) for l in cp.lineality.basis]
    closed_ok = all(cq.contains(v) for v in proj[:len(cp.rays)]) and all(
        cq.contains(v) and cq.contains(la.neg(v)) for v in proj[len(cp.rays):])
    part4 = closed_ok and cq.rint_contains(q.a.project(cp.rint_point))
    return {"part1": part1, "part2": part2, "part3": part3, "part4": part4}


def varpi_decomposition(p: Parabolic, p0: Parabolic):
    """For ϖ in Δ̂_0 minus Δ̂_P: (ϖ, ϖ̄ = projection to a_0^P, ϖ' = projection to a_P).

    Also returns the constant m = max over ϖ of the sum of the
    coefficients of ϖ' in the basis Δ̂_P.
    """
    g = whole_group(p.datum)
    all_w = p0.coweights_relative(g)
    rel_w = p0.coweights_relative(p)
    p_w = p.coweights_relative(g)
    p_roots = p.simple_roots
    out = []
    m = Fraction(0)
    for key, w in all_w.items():
        if key not in p0.roots_relative(p):
            continue
        w_bar = p0.a_rel(p).project(w)
        w_prime = la.sub(w, w_bar)
        # coefficients of ϖ' in Δ̂_P are its pairings with Δ_P
        coeffs = {k: la.dot(w_prime, a) for k, a in p_roots.items()}
        m = max(m, sum(coeffs.values(), Fraction(0)))
        out.append((key, w, w_bar, w_prime, coeffs))
    return out, m, rel_w, p_w


def _int_rows(vectors: Sequence[Sequence]) -> tuple[np.ndarray, int]:
    """Stack rational row vectors, scaled by a common denominator."""
    d = la.denominator_lcm(x for v in vectors for x in v)
    return np.array([[int(x * d) for x in v] for v in vectors], dtype=np.int64), d


def check_coweight_bound(datum: RootDatum, points: Sequence[Sequence]) -> list[dict]:
    """Sampled check, for every Borel P_0 and P ⊇ P_0, of

        <ϖ,H> >= C1 on Δ̂_P and <ϖ̄,H> >= C2 on Δ̂_0^P  ==>  <ϖ,H> >= C2 - m|C1|

    with C1, C2 the attained minima and m from the decomposition ϖ = ϖ̄ + ϖ'.
    Returns failure records (empty when the bound holds on every sample).
    """
    hs = np.array([[int(x) for x in p] for p in points], dtype=np.int64)
    g = whole_group(datum)
    failures = []
    for p0 in parabolics(datum):
        if not p0.is_minimal():
            continue
        for p in parabolics(datum, p0):
            if p == p0 or p == g:
                continue
            decomp, m, rel_w, p_w = varpi_decomposition(p, p0)
            for key, w, w_bar, w_prime, coeffs in decomp:
                if w_bar not in rel_w.values() or any(c < 0 for c in coeffs.values()):
                    failures.append({"P0": p0.label, "P": p.label, "reason": "decomposition"})
            targets = [w for key, w, *_ in decomp]
            if not targets or not p_w or not rel_w:
                continue
            mats, dens = [], []
            for group in (list(p_w.values()), list(rel_w.values()), targets):
                a, d = _int_rows(group)
                mats.append(a)
                dens.append(d)
            big = int(np.lcm.reduce(dens))
            vals = [hs @ a.T * (big // d) for a, d in zip(mats, dens)]
            c1 = vals[0].min(axis=1)
            c2 = vals[1].min(axis=1)
            lhs = vals[2].min(axis=1) * m.denominator
            rhs = c2 * m.denominator - m.numerator * np.abs(c1)
            bad = np.nonzero(lhs < rhs)[0]
            for i in bad[:5]:
                failures.append({"P0": p0.label, "P": p.label, "H": [str(x) for x in points[i]]})
    return failures


def check_chamber_implication(datum: RootDatum, points: Sequence[Sequence]) -> tuple[list[dict], int]:
    """Sampled implication check for every Borel P_0 and P_0 ⊆ P ⊆ Q:

        <α,H> > 0 on Δ_P^Q and <ϖ,H> <= 0 on Δ̂_0^P  ==>  <α,H> > 0 on Δ_0^Q minus Δ_0^P.

    Returns (failures, number of samples satisfying the hypothesis).
    """
    hs = np.array([[int(x) for x in p] for p in points], dtype=np.int64)
    failures = []
    active = 0
    for p0 in parabolics(datum):
        if not p0.is_minimal():
            continue
        for p in parabolics(datum, p0):
            for q in parabolics(datum, p):
                if p == q:
                    continue
                hyp_roots = list(p.roots_relative(q).values())
                hyp_w = list(p0.coweights_relative(p).values())
                inner_keys = set(p0.roots_relative(p))
                concl = [v for k, v in p0.roots_relative(q).items() if k not in inner_keys]
                ok = np.ones(len(points), dtype=bool)
                a, _ = _int_rows(hyp_roots)
                ok &= np.all(hs @ a.T > 0, axis=1)
                if hyp_w:
                    b, _ = _int_rows(hyp_w)
                    ok &= np.all(hs @ b.T <= 0, axis=1)
                active += int(ok.sum())
                c, _ = _int_rows(concl)
                good = np.all(hs @ c.T > 0, axis=1)
                bad = np.nonzero(ok & ~good)[0]
                for i in bad[:5]:
                    failures.append({"P0": p0.label, "P": p.label, "Q": q.label,
                                     "H": [str(x) for x in points[i]]})
    return failures, active
