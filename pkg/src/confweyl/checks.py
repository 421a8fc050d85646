"""Named property-check suites shared by the CLI and the test suite.

Each suite returns a dict with at least ``name``, ``passed`` and ``details``.
The rewriting checks use a deliberately naive reducer (apply one rule at a
chosen position, repeat to a fixpoint) as an oracle independent of the
memoized engine in coeffalg.
"""

from __future__ import annotations

from fractions import Fraction
import itertools
import random

from . import anick, coeffalg, cohomology, conformal, modules
from .anick import (
    anick_delta_closed,
    anick_delta_morse,
    bar_derivation,
    bar_differential,
    cell_is_chain,
    chain_to_cell,
    enumerate_chains,
    homotopy_f,
    homotopy_g,
    matched_edge,
)
from .coeffalg import AlgebraElement, normal_form
from .cohomology import Cochain, Window, assemble_matrix, d_map, hochschild_delta
from .conformal import ConformalElement, check_associativity, lambda_product, n_product
from .modules import make_module
from .poly import Poly, D, L, parse_poly


# -- naive rewriting oracle ----------------------------------------------------------

def rewrite_positions(word):
    """Positions where v(n)v(m), n ≥ 1 occurs in a raw word."""
    return [i for i in range(len(word) - 1) if word[i] >= 1]


def rewrite_at(word, pos):
    """One rewriting step at a position: list of (coefficient, word)."""
    n, m = word[pos], word[pos + 1]
    first = word[:pos] + (0, n + m) + word[pos + 2:]
    out = [(Fraction(1), first)]
    if n:
        out.append((Fraction(n), word[:pos] + (n + m - 1,) + word[pos + 2:]))
    return out


def reduce_word_strategy(word, pick):
    """Fully reduce a word with a position-picking strategy; dict word->coeff."""
    pending = {tuple(word): Fraction(1)}
    done = {}
    while pending:
        w, c = pending.popitem()
        positions = rewrite_positions(w)
        if not positions:
            done[w] = done.get(w, Fraction(0)) + c
            if not done[w]:
                del done[w]
            continue
        for c2, w2 in rewrite_at(w, pick(positions)):
            key = w2
            acc = pending.get(key, Fraction(0)) + c * c2
            if acc:
                pending[key] = acc
            else:
                pending.pop(key, None)
    return done


def oracle_normal_form(word, strategy="leftmost", rng=None):
    if strategy == "leftmost":
        pick = min
    elif strategy == "rightmost":
        pick = max
    elif strategy == "random":
        rng = rng or random.Random(0)
        pick = rng.choice
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    reduced = reduce_word_strategy(word, pick)
    terms = {}
    for w, c in reduced.items():
        zeros = sum(1 for x in w[:-1] if x == 0)
        assert zeros == len(w) - 1, f"not reduced: {w}"
        terms[(zeros, w[-1])] = c
    return AlgebraElement(terms)


def check_confluence(count=1000, max_len=6, max_index=8, seed=2024):
    """Random words: leftmost/rightmost/random strategies and the engine agree."""
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        length = rng.randint(1, max_len)
        word = tuple(rng.randint(0, max_index) for _ in range(length))
        left = oracle_normal_form(word, "leftmost")
        right = oracle_normal_form(word, "rightmost")
        anyorder = oracle_normal_form(word, "random", rng)
        engine = normal_form(word)
        if not (left == right == anyorder == engine):
            failures.append(word)
    return {"name": "confluence", "passed": not failures,
            "details": {"count": count, "failures": failures[:5]}}


# -- resolution suites ------------------------------------------------------------------

def _delta_of_combination(combo):
    out = {}
    for chain, coeff in combo.items():
        for y, c2 in anick_delta_closed(chain).items():
            term = coeff * c2
            prev = out.get(y)
            s = prev + term if prev is not None else term
            if s.is_zero():
                out.pop(y, None)
            else:
                out[y] = s
    return out


def check_delta_squared(max_degree=5, max_sum=10):
    failures = []
    for degree in range(2, max_degree + 1):
        for chain in enumerate_chains(degree, max_sum):
            if _delta_of_combination(anick_delta_closed(chain)):
                failures.append(chain)
    return {"name": "delta-squared", "passed": not failures,
            "details": {"max_degree": max_degree, "max_sum": max_sum,
                        "failures": failures[:5]}}


def check_morse_closed(max_degree=4, max_sum=8):
    failures = []
    for degree in range(1, max_degree + 1):
        for chain in enumerate_chains(degree, max_sum):
            if anick_delta_morse(chain) != anick_delta_closed(chain):
                failures.append(chain)
    return {"name": "morse-closed", "passed": not failures,
            "details": {"max_degree": max_degree, "max_sum": max_sum,
                        "failures": failures[:5]}}


def _fdg(chain):
    out = {}
    for cell, coeff in homotopy_g(chain).items():
        for y, c2 in bar_differential(cell).items():
            for chn, c3 in homotopy_f(y).items():
                term = coeff * c2 * c3
                prev = out.get(chn)
                s = prev + term if prev is not None else term
                if s.is_zero():
                    out.pop(chn, None)
                else:
                    out[chn] = s
    return out


def check_fdg(max_degree=4, max_sum=8):
    failures = []
    for degree in range(1, max_degree + 1):
        for chain in enumerate_chains(degree, max_sum):
            if _fdg(chain) != anick_delta_closed(chain):
                failures.append(chain)
    return {"name": "fdg", "passed": not failures,
            "details": {"max_degree": max_degree, "max_sum": max_sum,
                        "failures": failures[:5]}}


def check_fg_identity(max_degree=3, max_sum=7):
    failures = []
    for degree in range(1, max_degree + 1):
        for chain in enumerate_chains(degree, max_sum):
            out = {}
            for cell, coeff in homotopy_g(chain).items():
                for chn, c3 in homotopy_f(cell).items():
                    term = coeff * c3
                    prev = out.get(chn)
                    s = prev + term if prev is not None else term
                    if s.is_zero():
                        out.pop(chn, None)
                    else:
                        out[chn] = s
            if out != {chain: AlgebraElement.one()}:
                failures.append(chain)
    return {"name": "fg-identity", "passed": not failures,
            "details": {"max_degree": max_degree, "max_sum": max_sum,
                        "failures": failures[:5]}}


def _sample_cells(max_slots=3, max_letters=4, max_index=4):
    """All bar cells with bounded slot count, letters and indices."""
    words = [(k, n) for k in range(0, max_letters) for n in range(0, max_index + 1)
             if k + 1 <= max_letters]
    cells = []
    for slots in range(1, max_slots + 1):
        for combo in itertools.product(words, repeat=slots):
            if sum(k + 1 for (k, _) in combo) <= max_letters:
                cells.append(combo)
    return cells


def check_matching(max_slots=3, max_letters=4, max_index=4):
    """Partner-of-partner involution and single-partner property."""
    failures = []
    partner_of = {}
    for cell in _sample_cells(max_slots, max_letters, max_index):
        edge = matched_edge(cell)
        if edge is None:
            continue
        partner, direction, weight = edge
        back = matched_edge(partner)
        if back is None or back[0] != cell or back[2] != weight \
                or {direction, back[1]} != {"up", "down"}:
            failures.append(cell)
            continue
        if partner in partner_of and partner_of[partner] != cell:
            failures.append(cell)
        partner_of[partner] = cell
    return {"name": "matching", "passed": not failures,
            "details": {"cells": len(_sample_cells(max_slots, max_letters, max_index)),
                        "failures": failures[:5]}}


def check_chain_kill(max_degree=3, max_sum=6):
    """Non-chain cells with f = 0 keep f = 0 after slot-wise derivation."""
    failures = []
    for cell in _sample_cells(max_degree, max_sum, max_sum):
        if cell_is_chain(cell) or homotopy_f(cell):
            continue
        for cell2 in bar_derivation(cell):
            if homotopy_f(cell2):
                failures.append(cell)
                break
    return {"name": "chain-kill", "passed": not failures,
            "details": {"failures": failures[:5]}}


# -- conformal-algebra suites -----------------------------------------------------------

def _monomials(max_vdeg, max_ddeg=1):
    out = []
    for n in range(1, max_vdeg + 1):
        for a in range(0, max_ddeg + 1):
            out.append(ConformalElement.monomial(a, n))
    return out


def check_conformal_axioms(max_vdeg=6, max_ddeg=2):
    """Sesquilinearity C2/C3 as λ-identities plus n-product reconstruction."""
    failures = []
    mons = _monomials(max_vdeg, max_ddeg)
    for a in mons:
        for b in mons:
            left = lambda_product(a.d_mul(), b).as_poly()
            if left != -L * lambda_product(a, b).as_poly():
                failures.append(("C2", str(a), str(b)))
            right = lambda_product(a, b.d_mul()).as_poly()
            if right != (D + L) * lambda_product(a, b).as_poly():
                failures.append(("C3", str(a), str(b)))
            lam = lambda_product(a, b)
            rebuilt = Poly.zero()
            fact = 1
            for n in range(0, lam.degree() + 1):
                if n:
                    fact *= n
                rebuilt = rebuilt + L ** n * n_product(a, b, n).poly * Fraction(1, fact)
            if rebuilt != lam.as_poly():
                failures.append(("reconstruction", str(a), str(b)))
    return {"name": "conformal-axioms", "passed": not failures,
            "details": {"monomials": len(mons), "failures": failures[:5]}}


def check_conformal_associativity(max_total_vdeg=6, max_ddeg=1):
    """a∘λ(b∘μc) = (a∘λb)∘(λ+μ)c for every monomial triple in the bound."""
    failures = []
    checked = 0
    for n1 in range(1, max_total_vdeg - 1):
        for n2 in range(1, max_total_vdeg - n1):
            for n3 in range(1, max_total_vdeg - n1 - n2 + 1):
                for a1 in range(0, max_ddeg + 1):
                    for a2 in range(0, max_ddeg + 1):
                        for a3 in range(0, max_ddeg + 1):
                            a = ConformalElement.monomial(a1, n1)
                            b = ConformalElement.monomial(a2, n2)
                            c = ConformalElement.monomial(a3, n3)
                            checked += 1
                            if not check_associativity(a, b, c):
                                failures.append((str(a), str(b), str(c)))
    return {"name": "conformal-associativity", "passed": not failures,
            "details": {"triples": checked, "failures": failures[:5]}}


SHIPPED_MODULES = (
    "M(alpha=0,delta=1)",
    "M(alpha=1,delta=1)",
    "M(alpha=-2,delta=1)",
    "M(alpha=1/2,delta=1)",
    "M(alpha=0,delta=0)",
    "trivial",
    "ext(alpha=0,beta=1,gamma=1)",
)


def check_module_axioms(specs=SHIPPED_MODULES, max_poly_deg=4, seed=7):
    """Associativity on random elements and ∂-compatibility of the action."""
    rng = random.Random(seed)
    failures = []
    for spec in specs:
        mod = make_module(spec)  # construction itself validates on the basis
        for trial in range(3):
            coords = []
            for _ in range(mod.rank):
                terms = {(rng.randint(0, max_poly_deg), 0, 0, 0): Fraction(rng.randint(-3, 3))
                         for _ in range(3)}
                coords.append(Poly(terms))
            m = modules.ModuleElement(tuple(coords))
            if not _module_assoc_holds(mod, m):
                failures.append((spec, "associativity", trial))
            # ∂(v(n)·m) = -n v(n-1)·m + v(n)·∂m
            for n in range(0, 6):
                lhs = mod.derivation(mod.act_vn(n, m))
                rhs = mod.act_vn(n, mod.derivation(m))
                if n:
                    rhs = rhs - mod.act_vn(n - 1, m).scale(n)
                if lhs != rhs:
                    failures.append((spec, f"derivation-compat v({n})", trial))
    return {"name": "module-axioms", "passed": not failures,
            "details": {"specs": list(specs), "failures": failures[:5]}}


def _module_assoc_holds(mod, m):
    from .poly import M as MU

    v = ConformalElement.gen()
    inner = {deg: modules.ModuleElement(tuple(c.subs("l", MU) for c in el.coords))
             for deg, el in mod.act_v_lambda(m).items()}
    lhs = [Poly.zero()] * mod.rank
    for deg, el in inner.items():
        for d2, el2 in mod.act_v_lambda(el).items():
            for i in range(mod.rank):
                lhs[i] = lhs[i] + el2.coords[i] * MU ** deg * L ** d2
    rhs = [Poly.zero()] * mod.rank
    for deg, f in lambda_product(v, v).coeffs.items():
        for d2, el2 in mod.act_lambda(f, m).items():
            for i in range(mod.rank):
                rhs[i] = rhs[i] + el2.coords[i] * (L + MU) ** d2 * L ** deg
    return lhs == rhs


# -- cochain suites ------------------------------------------------------------------------

def check_chain_map(max_degree=3, window_sum=8, module="M(alpha=1,delta=1)",
                    max_poly_deg=3):
    """Dⁿ⁺¹∘Δⁿ = Δⁿ∘Dⁿ on monomial basis cochains within the window."""
    mod = make_module(module)
    window = Window(window_sum, 0)
    failures = []
    for degree in range(0, max_degree + 1):
        for chain in enumerate_chains(degree, window_sum):
            for j in range(mod.rank):
                for k in range(0, max_poly_deg + 1):
                    value = modules.ModuleElement(
                        tuple(D ** k if i == j else Poly.zero() for i in range(mod.rank)))
                    phi = Cochain(degree, mod, {chain: value})
                    lhs = d_map(hochschild_delta(phi, window), window)
                    rhs = hochschild_delta(d_map(phi, window), window)
                    if lhs != rhs:
                        failures.append((degree, chain, j, k))
    return {"name": "chain-map", "passed": not failures,
            "details": {"max_degree": max_degree, "window": window_sum,
                        "module": module, "failures": failures[:5]}}


def check_nabla_squared(max_degree=4, window_sum=9, module="M(alpha=1,delta=1)",
                        margin=0, jobs=1):
    """∇ⁿ⁺¹∘∇ⁿ = 0, exactly, on the whole window."""
    mod = make_module(module)
    window = Window(window_sum, margin)
    failures = []
    matrices = {n: assemble_matrix(n, mod, window, jobs) for n in range(0, max_degree + 2)}
    for n in range(0, max_degree + 1):
        a, b = matrices[n], matrices[n + 1]
        for j in range(a.ncols):
            image = a.columns[j]
            if b.matvec(image):
                failures.append((n, a.col_labels[j]))
    return {"name": "nabla-squared", "passed": not failures,
            "details": {"max_degree": max_degree, "window": window_sum,
                        "module": module, "failures": failures[:5]}}


def check_reduction_soundness(window_sum=7, module="M(alpha=1,delta=1)", seed=11,
                              trials=25):
    """s + Dⁿh rebuilds φ on the window; reducing a D-image gives 0."""
    from .cohomology import d_map_direct, reduce_cochain

    rng = random.Random(seed)
    mod = make_module(module)
    window = Window(window_sum, 0)
    failures = []
    for trial in range(trials):
        degree = rng.randint(1, 3)
        chains = enumerate_chains(degree, window_sum)
        values = {}
        for chain in rng.sample(chains, min(4, len(chains))):
            coords = tuple(
                Poly({(rng.randint(0, 3), 0, 0, 0): Fraction(rng.randint(-2, 2))})
                for _ in range(mod.rank))
            el = modules.ModuleElement(coords)
            if not el.is_zero():
                values[chain] = el
        phi = Cochain(degree, mod, values)
        s, h = reduce_cochain(phi, window)
        rebuilt_vals = {}
        dh = d_map_direct(h, window)
        for chain in chains:
            rebuilt = s.include().value(chain) + dh.value(chain)
            if not rebuilt.is_zero():
                rebuilt_vals[chain] = rebuilt
        if Cochain(degree, mod, rebuilt_vals) != phi:
            failures.append((trial, "rebuild"))
        s2, _ = reduce_cochain(dh, window)
        if not s2.is_zero():
            failures.append((trial, "image-not-killed"))
    return {"name": "reduction-soundness", "passed": not failures,
            "details": {"trials": trials, "failures": failures[:5]}}


SUITES = {
    "confluence": check_confluence,
    "delta-squared": check_delta_squared,
    "morse-closed": check_morse_closed,
    "fdg": check_fdg,
    "fg-identity": check_fg_identity,
    "matching": check_matching,
    "chain-kill": check_chain_kill,
    "conformal-axioms": check_conformal_axioms,
    "conformal-associativity": check_conformal_associativity,
    "module-axioms": check_module_axioms,
    "chain-map": check_chain_map,
    "nabla-squared": check_nabla_squared,
    "reduction-soundness": check_reduction_soundness,
}


def run_suite(name, **kwargs):
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return fn(**kwargs)
