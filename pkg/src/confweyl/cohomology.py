"""Windowed cochain complexes over the Anick resolution and H^n reports.

Cochains of degree n assign module elements to degree-n chains; degree 0
is a single module element (the empty chain).  The total index sum of a
chain never increases along the differential or the scalar reduction, so
truncating the chain basis by sum ≤ W ("window") computes exactly what the
untruncated complex would on every retained coordinate.  The only window
artifact sits near the top: kernels may contain vectors whose defining
relations lie above W.  Dimension reports therefore project kernel and
image onto an inner window (sum ≤ W - margin) and re-run at W-1 to check
the projected dimension has stabilized.

The scalar reduction is the canonical one: processing chains in
(sum, lex) order, peel b = φ[c] - Σ_k i_k·h[c with i_k decremented] and
split b = s[c] + ∂·h[c].  The resulting s is the unique scalar-valued
representative of φ modulo the derivation-twist map D, and the reduced
differential ∇ = reduce ∘ Δ ∘ include is canonical.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .anick import (
    anick_delta_closed,
    bar_derivation,
    cell_is_chain,
    cell_to_chain,
    chain_sort_key,
    enumerate_chains,
    homotopy_g,
)
from .coeffalg import AlgebraElement, derivation as lambda_derivation
from .modules import FiniteModule, ModuleElement, make_module, reduce_element
from .ratmat import RationalMatrix, rank_of_vectors

_F0 = Fraction(0)


@dataclass(frozen=True)
class Window:
    """Truncation by total index sum, with an inner reporting margin."""

    W: int
    margin: int = 3

    def __post_init__(self):
        if not (self.W >= self.margin >= 0):
            raise ValueError("need W >= margin >= 0")

    @property
    def inner(self):
        return self.W - self.margin

    def shrink(self):
        return Window(self.W - 1, self.margin)


class Cochain:
    """Degree-n cochain: map degree-n chains -> module elements.

    Degree 0 uses the empty chain () as its single key.
    """

    __slots__ = ("degree", "module", "values")

    def __init__(self, degree, module, values=None):
        self.degree = degree
        self.module = module
        self.values = {}
        if values:
            for chain, el in values.items():
                if not el.is_zero():
                    self.values[chain] = el

    def value(self, chain):
        got = self.values.get(chain)
        return got if got is not None else self.module.zero()

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.values == other.values)

    def is_zero(self):
        return not self.values


class ScalarCochain:
    """Canonical representative: map chains -> rank-vectors of rationals."""

    __slots__ = ("degree", "module", "values")

    def __init__(self, degree, module, values=None):
        self.degree = degree
        self.module = module
        self.values = {}
        if values:
            for chain, vec in values.items():
                vec = tuple(Fraction(x) for x in vec)
                if any(vec):
                    self.values[chain] = vec

    def value(self, chain):
        got = self.values.get(chain)
        return got if got is not None else (_F0,) * self.module.rank

    def include(self):
        """Embed back as a constant-valued Cochain."""
        return Cochain(self.degree, self.module,
                       {c: ModuleElement.constants(v) for c, v in self.values.items()})

    def __eq__(self, other):
        return (isinstance(other, ScalarCochain) and self.degree == other.degree
                and self.values == other.values)

    def restrict(self, max_sum):
        return ScalarCochain(self.degree, self.module,
                             {c: v for c, v in self.values.items() if sum(c) <= max_sum})

    def is_zero(self):
        return not self.values


# -- differential and derivation maps --------------------------------------------

_delta_cache = {}


def _delta_terms(chain):
    got = _delta_cache.get(chain)
    if got is None:
        got = list(anick_delta_closed(chain).items())
        _delta_cache[chain] = got
    return got


def hochschild_delta(phi, window):
    """Δⁿφ = φ ∘ δ_{n+1} on every chain of degree n+1 with sum ≤ W."""
    module = phi.module
    out = {}
    for x in enumerate_chains(phi.degree + 1, window.W):
        acc = module.zero()
        for y, coeff in _delta_terms(x):
            val = phi.values.get(y)
            if val is not None:
                acc = acc + module.act_algebra(coeff, val)
        if not acc.is_zero():
            out[x] = acc
    return Cochain(phi.degree + 1, module, out)


def _decrements(chain):
    n = len(chain)
    for k in range(n):
        i = chain[k]
        if i == 0:
            continue
        dec = chain[:k] + (i - 1,) + chain[k:][1:]
        # interior indices of a chain stay >= 1
        if k < n - 1 and i - 1 < 1:
            continue
        yield k, i, dec


def d_map(phi, window):
    """Derivation-twist Dⁿ on cochains, via the homotopy route.

    (Dⁿφ)(a) = ∂(φ(a)) - Σ φ(chain terms of ∂ₙ(gₙ(a))), where ∂ₙ acts on
    Λ-coefficients by the derivation of Λ and slot-wise on cells, and terms
    whose cell is not an Anick chain are dropped.  Degree 0 is ∂ on M.
    """
    module = phi.module
    if phi.degree == 0:
        return Cochain(0, module, {(): module.derivation(phi.value(()))})
    out = {}
    for a in enumerate_chains(phi.degree, window.W):
        total = module.derivation(phi.value(a))
        for cell, coeff in homotopy_g(a).items():
            dcoeff = lambda_derivation(coeff)
            if not dcoeff.is_zero() and cell_is_chain(cell):
                total = total - module.act_algebra(dcoeff, phi.value(cell_to_chain(cell)))
            for cell2, frac in bar_derivation(cell).items():
                if cell_is_chain(cell2):
                    val = phi.value(cell_to_chain(cell2))
                    total = total - module.act_algebra(coeff, val).scale(frac)
        if not total.is_zero():
            out[a] = total
    return Cochain(phi.degree, module, out)


def d_map_direct(phi, window):
    """Dⁿ by the evaluation rule: (Dⁿφ)[c] = ∂φ[c] + Σ_k i_k φ[dec_k c]."""
    module = phi.module
    if phi.degree == 0:
        return Cochain(0, module, {(): module.derivation(phi.value(()))})
    out = {}
    for c in enumerate_chains(phi.degree, window.W):
        total = module.derivation(phi.value(c))
        for _, i, dec in _decrements(c):
            val = phi.values.get(dec)
            if val is not None:
                total = total + val.scale(i)
        if not total.is_zero():
            out[c] = total
    return Cochain(phi.degree, module, out)


def reduce_cochain(phi, window):
    """Unique (s, h) with φ - Dⁿh = s scalar-valued on the window."""
    module = phi.module
    if phi.degree == 0:
        consts, quot = reduce_element(phi.value(()))
        return (ScalarCochain(0, module, {(): consts}),
                Cochain(0, module, {(): quot}))
    svals = {}
    hvals = {}
    for c in enumerate_chains(phi.degree, window.W):
        b = phi.values.get(c, module.zero())
        for _, i, dec in _decrements(c):
            hv = hvals.get(dec)
            if hv is not None:
                b = b - hv.scale(i)
        if b.is_zero():
            continue
        consts, quot = reduce_element(b)
        if any(consts):
            svals[c] = consts
        if not quot.is_zero():
            hvals[c] = quot
    return (ScalarCochain(phi.degree, module, svals),
            Cochain(phi.degree, module, hvals))


def reduced_delta(s, window):
    """∇ⁿ: the reduced differential on canonical scalar cochains."""
    delta = hochschild_delta(s.include(), window)
    reduced, _ = reduce_cochain(delta, window)
    return reduced


# -- matrices and dimension reports ------------------------------------------------

def coordinate_labels(degree, module, window):
    """(chain, coordinate) labels in (sum, lex, coordinate) order."""
    labels = []
    for chain in enumerate_chains(degree, window.W):
        for j in range(module.rank):
            labels.append((chain, j))
    return labels


class ReducedMatrix(RationalMatrix):
    """∇ⁿ matrix with (chain, coord) labels on both sides."""

    def __init__(self, degree, module, window, columns, row_labels, col_labels):
        super().__init__(len(row_labels), len(col_labels), columns, row_labels, col_labels)
        self.degree = degree
        self.module = module
        self.window = window
        self.row_index = {lab: i for i, lab in enumerate(row_labels)}
        self.col_index = {lab: j for j, lab in enumerate(col_labels)}


def assemble_matrix(degree, module, window, jobs=1):
    """Matrix of ∇^degree on the delta-function basis of scalar cochains.

    Columns: degree-n chains (sum ≤ W) × module coordinates; rows: the same
    for degree n+1.  Degree 0 has the single empty chain per coordinate.
    """
    module = make_module(module)
    col_labels = coordinate_labels(degree, module, window)
    row_labels = coordinate_labels(degree + 1, module, window)
    row_index = {lab: i for i, lab in enumerate(row_labels)}

    def build_column(label):
        chain, j = label
        basis_vec = tuple(1 if i == j else 0 for i in range(module.rank))
        s = ScalarCochain(degree, module, {chain: basis_vec})
        image = reduced_delta(s, window)
        col = {}
        for x, vec in image.values.items():
            for coord, val in enumerate(vec):
                if val:
                    col[row_index[(x, coord)]] = val
        return col

    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            columns = list(pool.map(build_column, col_labels))
    else:
        columns = [build_column(lab) for lab in col_labels]
    return ReducedMatrix(degree, module, window, columns, row_labels, col_labels)


def _inner_filter(labels, inner):
    keep = [sum(chain) <= inner for (chain, _) in labels]
    return lambda i: keep[i]


def _dims_at(n, module, window, jobs=1):
    a_n = assemble_matrix(n, module, window, jobs)
    a_prev = assemble_matrix(n - 1, module, window, jobs)
    inner = window.inner
    kernel = a_n.nullspace()
    col_keep = [sum(chain) <= inner for (chain, _) in a_n.col_labels]
    dim_ker = rank_of_vectors(kernel, lambda j: col_keep[j])
    dim_im = a_prev.rank(_inner_filter(a_prev.row_labels, inner))
    return dim_ker, dim_im, a_n, a_prev


def cohomology_dim(n, module, window, jobs=1):
    """Windowed H^n dimension report with a stability check at W-1.

    dim_H = dim proj(ker ∇ⁿ) - dim proj(im ∇ⁿ⁻¹), both projected onto the
    inner window; stable means the same dim_H results at window W-1.
    """
    if n < 1:
        raise ValueError("cohomology degree must be >= 1")
    if window.W - 1 < window.margin:
        raise ValueError("window too small for the stability re-run at W-1")
    module = make_module(module)
    dim_ker, dim_im, a_n, _ = _dims_at(n, module, window, jobs)
    dim_h = dim_ker - dim_im
    dim_ker2, dim_im2, _, _ = _dims_at(n, module, window.shrink(), jobs)
    stable = (dim_ker2 - dim_im2) == dim_h
    counts = {deg: len(enumerate_chains(deg, window.W)) for deg in range(1, n + 2)}
    return {
        "degree": n,
        "module": module.spec,
        "W": window.W,
        "margin": window.margin,
        "dim_ker_proj": dim_ker,
        "dim_im_proj": dim_im,
        "dim_H": dim_h,
        "stable": stable,
        "chain_counts": counts,
    }


# -- explicit coboundary constructions ---------------------------------------------

def _require_weight_one(module):
    params = module.params
    if module.rank != 1 or params.get("delta") != 1:
        raise ValueError("theorem constructions apply to the rank-1 modules M(alpha,1)")
    return params["alpha"]


def _vector_to_scalar_cochain(vec, labels, degree, module):
    values = {}
    for idx, val in vec.items():
        chain, coord = labels[idx]
        row = list(values.get(chain, (_F0,) * module.rank))
        row[coord] = val
        values[chain] = tuple(row)
    return ScalarCochain(degree, module, values)


def _apply_matrix(matrix, s):
    """∇ of a scalar cochain through an assembled matrix."""
    vec = {}
    for chain, row in s.values.items():
        for coord, val in enumerate(row):
            if val:
                vec[matrix.col_index[(chain, coord)]] = val
    out = matrix.matvec(vec)
    return _vector_to_scalar_cochain(out, matrix.row_labels, matrix.degree + 1,
                                     matrix.module)


def verify_theorem_constructions(module, n, window, jobs=1):
    """Check the explicit cocycle-killing constructions in degree n ≥ 2.

    For every basis vector s of the window kernel of ∇ⁿ, builds the
    degree-(n-1) preimage candidate φ₁ from the determining data of s —
    for α ≠ 0 from the chains ending in 0, for α = 0 in two steps from the
    chains ending in (1,0) and in 1 — and asserts ∇ⁿ⁻¹φ₁ matches s on the
    inner window.  Returns (ok, failures); each failure names the first
    chain where the construction misses.
    """
    module = make_module(module)
    alpha = _require_weight_one(module)
    if n < 2:
        raise ValueError("constructions start at degree 2")
    a_n = assemble_matrix(n, module, window, jobs)
    a_prev = assemble_matrix(n - 1, module, window, jobs)
    sign_even = Fraction(-1) ** n  # (-1)^n
    failures = []
    for vec in a_n.nullspace():
        s = _vector_to_scalar_cochain(vec, a_n.col_labels, n, module)
        if alpha != 0:
            beta = {}
            for t in enumerate_chains(n - 1, window.W):
                if any(i < 1 for i in t):
                    continue
                val = s.value(t + (0,))[0]
                if val:
                    beta[t] = (-sign_even * val / alpha,)  # (-1)^{n+1} s_{(t,0)} / α
            candidate = ScalarCochain(n - 1, module, beta)
        else:
            beta1 = {}
            for t in enumerate_chains(n - 1, window.W):
                if t[-1] != 0 or any(i < 1 for i in t[:-1]):
                    continue
                val = s.value(t[:-1] + (1, 0))[0]
                if val:
                    beta1[t] = (-sign_even * val,)  # (-1)^{n+1} s_{(…,1,0)}
            step1 = ScalarCochain(n - 1, module, beta1)
            r = _scalar_sub(s, _apply_matrix(a_prev, step1))
            beta2 = dict(beta1)
            for t in enumerate_chains(n - 1, window.W):
                if any(i < 1 for i in t):
                    continue
                val = r.value(t + (1,))[0]
                if val:
                    prev = beta2.get(t, (_F0,))
                    beta2[t] = (prev[0] + sign_even * val,)  # + (-1)^n r_{(t,1)}
            candidate = ScalarCochain(n - 1, module, beta2)
        image = _apply_matrix(a_prev, candidate)
        mismatch = _first_mismatch(image, s, window.inner)
        if mismatch is not None:
            failures.append(mismatch)
    return (not failures), failures


def _scalar_sub(a, b):
    values = dict(a.values)
    for chain, vec in b.values.items():
        cur = values.get(chain, (_F0,) * len(vec))
        new = tuple(x - y for x, y in zip(cur, vec))
        if any(new):
            values[chain] = new
        else:
            values.pop(chain, None)
    return ScalarCochain(a.degree, a.module, values)


def _first_mismatch(got, want, inner):
    chains = sorted(set(got.values) | set(want.values), key=chain_sort_key)
    for chain in chains:
        if sum(chain) > inner:
            continue
        if got.value(chain) != want.value(chain):
            return {"chain": chain, "got": [str(x) for x in got.value(chain)],
                    "want": [str(x) for x in want.value(chain)]}
    return None
