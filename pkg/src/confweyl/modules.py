"""Finite free conformal modules over U(2) and their Λ-module structure.

A module of rank r is a free k[∂]-module with the λ-action of the
generator v given by an r×r matrix of polynomials in (∂, λ): column j
lists the coefficients of v ∘λ eⱼ.  Shipped families:

  M(α,Δ)        rank 1, v ∘λ u = (α + ∂ + Δλ)u   (valid iff Δ ∈ {0,1})
  trivial       rank 1, v ∘λ u = 0
  ext(α,β,γ)    rank 2, v ∘λ u = (λ+∂+α)u,  v ∘λ w = (λ+∂+β)w + γu

Construction validates the associativity identity
v ∘λ (v ∘μ m) = (v ∘λ v) ∘_{λ+μ} m symbolically on every basis vector and
rejects failures with the violated identity named.  The equivalent
λ-degree criterion is exposed separately as ``check_locality_compat``.

Module elements are vectors of ∂-polynomials; during identity checking
coordinates may temporarily carry λ or μ, which the action functions
propagate through sesquilinearity (f(∂) acts shifted: f(∂+λ)).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
import re

from .poly import Poly, D, L, M as MU, split_constant
from .conformal import ConformalElement, lambda_product
from .coeffalg import UNIT

_F0 = Fraction(0)


class ModuleValidationError(ValueError):
    """A module spec fails the conformal-module axioms."""


class ModuleElement:
    """Vector of coordinate polynomials over a fixed free module."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(coords)

    @classmethod
    def zero(cls, rank):
        return cls((Poly.zero(),) * rank)

    @classmethod
    def basis(cls, rank, j):
        return cls(tuple(Poly.one() if i == j else Poly.zero() for i in range(rank)))

    @classmethod
    def constants(cls, values):
        return cls(tuple(Poly.const(v) for v in values))

    def __add__(self, other):
        return ModuleElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return ModuleElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return ModuleElement(tuple(-a for a in self.coords))

    def scale(self, q):
        return ModuleElement(tuple(a * Fraction(q) for a in self.coords))

    def poly_mul(self, p):
        return ModuleElement(tuple(a * p for a in self.coords))

    def is_zero(self):
        return all(a.is_zero() for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        names = ("u", "w", "x", "y")
        parts = []
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            name = names[i] if i < len(names) else f"e{i}"
            parts.append(f"({a}){name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"ModuleElement({str(self)})"


class FiniteModule:
    """Free finite-rank conformal U(2)-module given by the v-action matrix."""

    def __init__(self, rank, action, spec, params=None):
        self.rank = rank
        self.action = tuple(tuple(row) for row in action)  # entry[i][j]: coeff of e_i in v∘λ e_j
        self.spec = spec
        self.params = dict(params or {})

    def zero(self):
        return ModuleElement.zero(self.rank)

    def basis(self):
        return [ModuleElement.basis(self.rank, j) for j in range(self.rank)]

    def element(self, *coords):
        polys = []
        for c in coords:
            polys.append(c if isinstance(c, Poly) else Poly.const(c))
        if len(polys) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates")
        return ModuleElement(polys)

    # -- λ-actions ----------------------------------------------------------

    def act_v_lambda(self, m):
        """v ∘λ m as a map λ-degree -> ModuleElement (coords may carry μ)."""
        shifted = [f.shift("d", L) for f in m.coords]
        full = []
        for i in range(self.rank):
            acc = Poly.zero()
            for j in range(self.rank):
                if not shifted[j].is_zero() and not self.action[i][j].is_zero():
                    acc = acc + self.action[i][j] * shifted[j]
            full.append(acc)
        return _split_lambda(full, self.rank)

    def act_lambda(self, c, m):
        """c ∘λ m for any c ∈ U(2), recursively through the action matrix.

        Monomials ∂^a v^k act as (-λ)^a times the k-fold action of v, where
        v^k ∘λ m = Σⱼ λ^j (v^{k-1} ∘(0) mⱼ) for v ∘λ m = Σⱼ λ^j mⱼ.
        """
        out = {}
        for a, k, coeff in c.monomials():
            part = self._act_v_power(k, m)
            sign = Fraction(-1) ** a
            for deg, el in part.items():
                key = deg + a
                add = el.scale(sign * coeff)
                out[key] = out[key] + add if key in out else add
        return {deg: el for deg, el in out.items() if not el.is_zero()}

    def _act_v_power(self, k, m):
        if k == 0:
            return {0: m}
        if k == 1:
            return self.act_v_lambda(m)
        inner = self.act_v_lambda(m)
        out = {}
        for deg, el in inner.items():
            head = self._act_v_power(k - 1, el).get(0)
            if head is not None and not head.is_zero():
                out[deg] = out[deg] + head if deg in out else head
        return out

    def act_vn(self, n, m):
        """Action of the letter v(n): n! times the λ^n part of v ∘λ m."""
        part = self.act_v_lambda(m).get(n)
        if part is None:
            return self.zero()
        return part.scale(factorial(n))

    def act_word(self, word, m):
        """Action of a normal word; the rightmost letter acts first."""
        if word is UNIT:
            return m
        k, n = word
        m = self.act_vn(n, m)
        for _ in range(k):
            m = self.act_vn(0, m)
        return m

    def act_algebra(self, x, m):
        """Action of an element of Λ (linear over words; 1 acts as identity)."""
        out = self.zero()
        for w, c in x.terms.items():
            out = out + self.act_word(w, m).scale(c)
        return out

    def derivation(self, m):
        """∂ on the free module: multiply every coordinate by ∂."""
        return m.poly_mul(D)

    def __str__(self):
        return self.spec

    def __repr__(self):
        return f"FiniteModule({self.spec!r})"


def _split_lambda(coords, rank):
    degs = set()
    split = []
    for f in coords:
        parts = f.coeffs_in("l")
        split.append(parts)
        degs.update(parts)
    out = {}
    for deg in degs:
        vec = ModuleElement(tuple(parts.get(deg, Poly.zero()) for parts in split))
        if not vec.is_zero():
            out[deg] = vec
    return out


# -- free-function forms of the actions ---------------------------------------------

def act_lambda(c, m, module):
    return module.act_lambda(c, m)


def act_vn(n, m, module):
    return module.act_vn(n, m)


def module_derivation(m):
    return m.poly_mul(D)


def check_locality_compat(alpha, delta):
    """λ-degree criterion for M(α,Δ) to carry the locality-2 product.

    Expands (α+∂+λ+Δ(μ-λ))(α+∂+Δλ) — the value of (v ∘λ v) ∘μ u computed
    through the inner action — and checks the λ-degree stays below 2.
    """
    alpha = Fraction(alpha)
    delta = Fraction(delta)
    base = Poly.const(alpha) + D
    expr = (base + L + (MU - L) * delta) * (base + L * delta)
    return expr.degree("l") < 2


def _validate(module):
    """Associativity v∘λ(v∘μ m) = (v∘λv)∘_{λ+μ} m on every basis vector."""
    v = ConformalElement.gen()
    vv = lambda_product(v, v)
    for j, e in enumerate(module.basis()):
        # inner action in μ: substitute λ -> μ in the split result
        inner = {deg: ModuleElement(tuple(c.subs("l", MU) for c in el.coords))
                 for deg, el in module.act_v_lambda(e).items()}
        lhs_coords = [Poly.zero()] * module.rank
        for deg, el in inner.items():
            outer = module.act_v_lambda(el)
            for d2, el2 in outer.items():
                for i in range(module.rank):
                    lhs_coords[i] = lhs_coords[i] + el2.coords[i] * MU ** deg * L ** d2
        rhs_coords = [Poly.zero()] * module.rank
        for deg, f in vv.coeffs.items():
            part = module.act_lambda(f, e)
            for d2, el2 in part.items():
                shifted = [(L + MU) ** d2 * c for c in el2.coords]
                for i in range(module.rank):
                    rhs_coords[i] = rhs_coords[i] + shifted[i] * L ** deg
        if lhs_coords != rhs_coords:
            residual = [str(a - b) for a, b in zip(lhs_coords, rhs_coords)]
            raise ModuleValidationError(
                f"{module.spec}: associativity (v∘λ(v∘μ m)) = ((v∘λv)∘(λ+μ) m) "
                f"fails on basis vector {j}; residual {residual}"
            )


_SPEC_M = re.compile(r"^M\(\s*alpha\s*=\s*(-?\d+(?:/\d+)?)\s*,\s*delta\s*=\s*(-?\d+(?:/\d+)?)\s*\)$", re.I)
_SPEC_EXT = re.compile(
    r"^ext\(\s*alpha\s*=\s*(-?\d+(?:/\d+)?)\s*,\s*beta\s*=\s*(-?\d+(?:/\d+)?)\s*,"
    r"\s*gamma\s*=\s*(-?\d+(?:/\d+)?)\s*\)$", re.I)


def module_m(alpha, delta):
    alpha, delta = Fraction(alpha), Fraction(delta)
    entry = Poly.const(alpha) + D + L * delta
    spec = f"M(alpha={alpha},delta={delta})"
    mod = FiniteModule(1, ((entry,),), spec, {"alpha": alpha, "delta": delta})
    _validate(mod)
    return mod


def module_trivial():
    mod = FiniteModule(1, ((Poly.zero(),),), "trivial", {})
    _validate(mod)
    return mod


def module_ext(alpha, beta, gamma):
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
    a = L + D + Poly.const(alpha)
    b = L + D + Poly.const(beta)
    action = ((a, Poly.const(gamma)), (Poly.zero(), b))
    spec = f"ext(alpha={alpha},beta={beta},gamma={gamma})"
    mod = FiniteModule(2, action, spec, {"alpha": alpha, "beta": beta, "gamma": gamma})
    _validate(mod)
    return mod


def make_module(spec):
    """Build and validate a module from a spec string (or pass one through)."""
    if isinstance(spec, FiniteModule):
        return spec
    text = spec.strip()
    if text.lower() == "trivial":
        return module_trivial()
    m = _SPEC_M.match(text)
    if m:
        return module_m(Fraction(m.group(1)), Fraction(m.group(2)))
    m = _SPEC_EXT.match(text)
    if m:
        return module_ext(Fraction(m.group(1)), Fraction(m.group(2)), Fraction(m.group(3)))
    raise ValueError(
        f"unknown module spec {spec!r}; expected M(alpha=..,delta=..), trivial, "
        f"or ext(alpha=..,beta=..,gamma=..)"
    )


def reduce_element(m):
    """Coordinate-wise split f = c + ∂·g; returns (constants, quotient)."""
    consts = []
    quots = []
    for f in m.coords:
        c, g = split_constant(f)
        consts.append(c)
        quots.append(g)
    return tuple(consts), ModuleElement(tuple(quots))
