"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import Gaussian, Surd, simplify


def _is_zero(c) -> bool:
    return not c


class Polynomial:
    """Polynomial in `nvars` variables, stored as {exponent tuple: coefficient}.

    Coefficients may be int, Fraction, Gaussian or Surd; they only need
    ring operations and truthiness for zero.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError("exponent length does not match nvars")
            if not _is_zero(c):
                clean[tuple(e)] = c
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c=1) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "Polynomial":
        n = len(coeffs)
        terms = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    @classmethod
    def parse(cls, text: str, nvars: int, prefix: str = "H") -> "Polynomial":
        """Parse e.g. "1 + 2*H1*H2 - H2**2/3" (variables 1-based)."""
        import sympy

        names = [f"{prefix}{i + 1}" for i in range(nvars)]
        syms = sympy.symbols(names) if names else []
        local = {n: s for n, s in zip(names, syms)}
        local["I"] = sympy.I
        try:
            expr = sympy.sympify(text, locals=local, rational=True)
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from None
        extra = expr.free_symbols - set(syms)
        if extra:
            raise ValueError(f"unknown variables in polynomial: {sorted(map(str, extra))}")
        if not syms:
            return cls.constant(0, _sympy_coeff(expr))
        poly = sympy.Poly(sympy.expand(expr), *syms)
        return cls(nvars, {m: _sympy_coeff(c) for m, c in poly.terms()})

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different variable counts")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if _is_zero(other):
                return Polynomial(self.nvars)
            return Polynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(self.nvars, Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        if other.nvars != self.nvars:
            return False
        a = {e: c for e, c in self.terms.items() if not _is_zero(c)}
        b = {e: c for e, c in other.terms.items() if not _is_zero(c)}
        if a.keys() != b.keys():
            return False
        return all(a[e] == b[e] for e in a)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    # queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {k: Polynomial(self.nvars, v) for k, v in sorted(parts.items())}

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def depends_on(self, i: int) -> bool:
        return any(e[i] for e in self.terms)

    def evaluate(self, point: Sequence):
        total = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for x, k in zip(point, e):
                if k:
                    m = m * x ** k
            total = total + m
        return total

    def evaluate_complex(self, point: Sequence[complex]) -> complex:
        total = 0j
        for e, c in self.terms.items():
            m = complex(c) if not isinstance(c, (int, Fraction)) else float(c)
            for x, k in zip(point, e):
                if k:
                    m *= x ** k
            total += m
        return total

    def map_coefficients(self, f) -> "Polynomial":
        return Polynomial(self.nvars, {e: f(c) for e, c in self.terms.items()})

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return Polynomial(self.nvars, out)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by images[i]; all images share one variable count."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        m = images[0].nvars if images else 0
        powers: list[list[Polynomial]] = [[Polynomial.constant(m, Fraction(1))] for _ in images]
        out = Polynomial(m)
        for e, c in self.terms.items():
            term = Polynomial.constant(m, c)
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * images[i])
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out

    def compose_affine(self, matrix: Sequence[Sequence], shift: Sequence | None = None) -> "Polynomial":
        """q(M y + s) as a polynomial in y, where M is nvars x m."""
        images = []
        for i, row in enumerate(matrix):
            const = shift[i] if shift is not None else 0
            images.append(Polynomial.linear(list(row), const))
        if not matrix:
            return Polynomial.constant(0, self.constant_term())
        return self.substitute(images)

    def shift(self, s: Sequence) -> "Polynomial":
        """y -> q(y + s)."""
        n = self.nvars
        eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return self.compose_affine(eye, s)

    # output ----------------------------------------------------------------
    def to_string(self, prefix: str = "H") -> str:
        if not self.terms:
            return "0"
        chunks = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-k for k in e))):
            c = simplify(self.terms[e])
            mono = "*".join(
                f"{prefix}{i + 1}" + (f"**{k}" if k > 1 else "")
                for i, k in enumerate(e) if k
            )
            cs = str(c)
            if isinstance(c, (Gaussian, Surd)) and ("+" in cs or "-" in cs[1:]):
                cs = f"({cs})"
            if not mono:
                chunks.append(cs)
            elif c == 1:
                chunks.append(mono)
            elif c == -1:
                chunks.append("-" + mono)
            else:
                chunks.append(f"{cs}*{mono}")
        return " + ".join(chunks).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.to_string()})"

    __str__ = to_string


def _sympy_coeff(c):
    import sympy

    c = sympy.nsimplify(c)
    re, im = c.as_real_imag()
    if not (re.is_Rational and im.is_Rational):
        raise ValueError(f"coefficient {c} is not a (Gaussian) rational")
    re = Fraction(int(re.p), int(re.q))
    im = Fraction(int(im.p), int(im.q))
    return re if im == 0 else Gaussian(re, im)


def monomials_up_to(nvars: int, degree: int) -> Iterable[tuple[int, ...]]:
    if nvars == 0:
        yield ()
        return
    for k in range(degree + 1):
        for rest in monomials_up_to(nvars - 1, degree - k):
            yield (k,) + rest
