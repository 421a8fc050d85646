"""Acceptance criteria: one callable per criterion, plus a driver.

Each criterion function returns a dict {id, description, passed, seconds,
detail}.  The closed differential and reduced-matrix formulas used as
oracles here are coded directly from their displayed forms, independent of
the engine paths they certify.
"""

from __future__ import annotations

from fractions import Fraction
import time

from .anick import (
    anick_delta_closed,
    anick_delta_morse,
    enumerate_chains,
)
from .checks import (
    check_chain_map,
    check_conformal_associativity,
    check_conformal_axioms,
    check_confluence,
    check_delta_squared,
    check_fdg,
    check_module_axioms,
    check_morse_closed,
    check_nabla_squared,
    oracle_normal_form,
)
from .coeffalg import AlgebraElement, normal_form
from .cohomology import (
    Cochain,
    Window,
    assemble_matrix,
    cohomology_dim,
    coordinate_labels,
    d_map,
    verify_theorem_constructions,
)
from .modules import ModuleValidationError, check_locality_compat, make_module, module_m
from .poly import D, Poly

_F0 = Fraction(0)


def _timed(fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    return passed, detail, time.perf_counter() - t0


# -- independently coded reference formulas ----------------------------------------------

def delta2_reference(n, m):
    """v(n)[m] - v(0)[n+m] - n[n+m-1]."""
    out = {(m,): AlgebraElement.letter(n)}
    _acc(out, (n + m,), AlgebraElement.letter(0).scale(-1))
    _acc(out, (n + m - 1,), AlgebraElement.scalar(-n))
    return {k: v for k, v in out.items() if not v.is_zero()}


def delta3_reference(n, m, p):
    """v(n)[m|p] - n[n+m-1|p] - v(0)[n+m|p] + v(0)[n|m+p] + n[n-1|m+p] + m[n|m+p-1]."""
    out = {}
    _acc(out, (m, p), AlgebraElement.letter(n))
    _acc(out, (n + m - 1, p), AlgebraElement.scalar(-n))
    _acc(out, (n + m, p), AlgebraElement.letter(0).scale(-1))
    _acc(out, (n, m + p), AlgebraElement.letter(0))
    if n - 1 >= 1:  # [0|m+p] is not an Anick chain
        _acc(out, (n - 1, m + p), AlgebraElement.scalar(n))
    _acc(out, (n, m + p - 1), AlgebraElement.scalar(m))
    return {k: v for k, v in out.items() if not v.is_zero()}


def _acc(out, chain, coeff):
    if len(chain) >= 2 and any(i < 1 for i in chain[:-1]):
        return
    if chain and chain[-1] < 0:
        return
    prev = out.get(chain)
    s = prev + coeff if prev is not None else coeff
    if s.is_zero():
        out.pop(chain, None)
    else:
        out[chain] = s


def nabla1_reference_matrix(alpha, window):
    """Rows [n|m]: -α at column n+m, +m at column n+m-1."""
    mod = module_m(alpha, 1)
    cols = coordinate_labels(1, mod, window)
    rows = coordinate_labels(2, mod, window)
    col_index = {lab: j for j, lab in enumerate(cols)}
    columns = [{} for _ in cols]

    def put(row_i, chain, val):
        if chain[0] < 0 or val == 0:
            return
        j = col_index[(chain, 0)]
        s = columns[j].get(row_i, _F0) + val
        if s:
            columns[j][row_i] = s
        else:
            del columns[j][row_i]

    for i, ((n, m), _) in enumerate(rows):
        put(i, (n + m,), -alpha)
        put(i, (n + m - 1,), Fraction(m))
    return [dict(c) for c in columns]


def nabla2_reference_matrix(alpha, window):
    """Rows [n|m|p]: -α@(n+m,p) +α@(n,m+p) +m@(n+m-1,p) +p@(n+m,p-1) -p@(n,m+p-1)."""
    mod = module_m(alpha, 1)
    cols = coordinate_labels(2, mod, window)
    rows = coordinate_labels(3, mod, window)
    col_index = {lab: j for j, lab in enumerate(cols)}
    columns = [{} for _ in cols]

    def put(row_i, chain, val):
        if chain[0] < 1 or chain[-1] < 0 or val == 0:
            return
        j = col_index[(chain, 0)]
        s = columns[j].get(row_i, _F0) + val
        if s:
            columns[j][row_i] = s
        else:
            del columns[j][row_i]

    for i, ((n, m, p), _) in enumerate(rows):
        put(i, (n + m, p), -alpha)
        put(i, (n, m + p), alpha)
        put(i, (n + m - 1, p), Fraction(m))
        put(i, (n + m, p - 1), Fraction(p))
        put(i, (n, m + p - 1), Fraction(-p))
    return [dict(c) for c in columns]


def nabla_general_reference_matrix(alpha, degree, window):
    """Corrected general reduced differential for M(α,1), any degree ≥ 1.

    (∇s)[i₁|…|iₙ] = Σⱼ (-1)^j α s_{merge_j} + Σⱼ (-1)^{j+1} i_{j+1} s_{merge_j - 1}
                    + Σⱼ Σ_{t>j+1} (-1)^{j+1} i_t s_{(merge_j, dec_t)},
    s = 0 on non-chain tuples; the n = 1, 2 instances of this formula are
    exactly the two reference matrices above.
    """
    mod = module_m(alpha, 1)
    cols = coordinate_labels(degree, mod, window)
    rows = coordinate_labels(degree + 1, mod, window)
    col_index = {lab: j for j, lab in enumerate(cols)}
    columns = [{} for _ in cols]

    def put(row_i, chain, val):
        if len(chain) >= 2 and any(i < 1 for i in chain[:-1]):
            return
        if chain[-1] < 0 or val == 0:
            return
        jj = col_index[(chain, 0)]
        s = columns[jj].get(row_i, _F0) + val
        if s:
            columns[jj][row_i] = s
        else:
            del columns[jj][row_i]

    for i, (x, _) in enumerate(rows):
        nlen = len(x)
        for j in range(1, nlen):  # 1-based merge position
            sign = Fraction(-1) ** j
            merge = x[:j - 1] + (x[j - 1] + x[j],) + x[j + 1:]
            put(i, merge, sign * alpha)
            put(i, merge[:j - 1] + (merge[j - 1] - 1,) + merge[j:], -sign * x[j])
            for t in range(j + 2, nlen + 1):  # decrement original position t
                dec = merge[:t - 2] + (merge[t - 2] - 1,) + merge[t - 1:]
                put(i, dec, -sign * x[t - 1])
    return [dict(c) for c in columns]


# -- criteria ---------------------------------------------------------------------------

def criterion_1():
    def run():
        want = (AlgebraElement.word(2, 6) + AlgebraElement.word(1, 5).scale(7)
                + AlgebraElement.word(0, 4).scale(8))
        got = normal_form("v(2)v(3)v(1)")
        if got != want:
            return False, {"got": str(got)}
        res = check_confluence(count=1000, max_len=6, max_index=8)
        return res["passed"], res["details"]
    passed, detail, secs = _timed(run)
    return _result(1, "GSB worked value and 1000-word confluence fuzz", passed, detail, secs, 5)


def criterion_2():
    def run():
        for n in range(1, 9):
            for m in range(0, 9 - n):
                if anick_delta_closed((n, m)) != delta2_reference(n, m):
                    return False, {"chain": (n, m), "side": "closed-vs-display"}
        count3 = 0
        for chain in enumerate_chains(3, 8):
            count3 += 1
            if anick_delta_closed(chain) != delta3_reference(*chain):
                return False, {"chain": chain, "side": "closed-vs-display"}
        res = check_morse_closed(max_degree=4, max_sum=8)
        return res["passed"], {"degree3_chains": count3, **res["details"]}
    passed, detail, secs = _timed(run)
    return _result(2, "closed δ₂/δ₃ reference forms and morse = closed (sum ≤ 8)", passed, detail, secs, 30)


def criterion_3():
    def run():
        res = check_delta_squared(max_degree=5, max_sum=10)
        if not res["passed"]:
            return False, res["details"]
        res2 = check_fdg(max_degree=4, max_sum=8)
        return res2["passed"], res2["details"]
    passed, detail, secs = _timed(run)
    return _result(3, "δ∘δ = 0 (deg ≤ 5, sum ≤ 10) and f∘d∘g = δ (deg ≤ 4, sum ≤ 8)",
                   passed, detail, secs, 60)


def criterion_4():
    def run():
        mod = module_m(7, 1)  # any weight-one module; D is module-independent here
        window = Window(8, 0)
        target = (2, 1, 1)
        # symbolic check: evaluate D³ on every delta-function cochain
        for chain in enumerate_chains(3, 8):
            for k in range(0, 3):
                phi = Cochain(3, mod, {chain: mod.element(D ** k)})
                got = d_map(phi, window).value(target)
                want = mod.zero()
                if chain == target:
                    want = want + mod.element(D ** (k + 1))
                if chain == (1, 1, 1):
                    want = want + mod.element(D ** k).scale(2)
                if chain == (2, 1, 0):
                    want = want + mod.element(D ** k)
                if got != want:
                    return False, {"chain": chain, "k": k, "got": str(got)}
        return True, {"basis_cochains": 3 * len(enumerate_chains(3, 8))}
    passed, detail, secs = _timed(run)
    return _result(4, "derivation-twist value (D³ψ)[2|1|1] = ∂ψ(2,1,1) + 2ψ(1,1,1) + ψ(2,1,0)", passed, detail, secs, None)


def criterion_5():
    def run():
        alphas = (Fraction(0), Fraction(1), Fraction(-1, 2))
        for alpha in alphas:
            for delta in range(-2, 4):
                want = delta in (0, 1)
                if check_locality_compat(alpha, delta) != want:
                    return False, {"alpha": str(alpha), "delta": delta}
        try:
            module_m(0, 2)
            return False, {"error": "M(alpha,2) was accepted"}
        except ModuleValidationError:
            pass
        return True, {"alphas": [str(a) for a in alphas], "deltas": list(range(-2, 4))}
    passed, detail, secs = _timed(run)
    return _result(5, "locality criterion Δ ∈ {0,1} and M(α,2) rejection", passed, detail, secs, None)


def criterion_6():
    def run():
        window = Window(10, 3)
        for alpha in (Fraction(0), Fraction(1)):
            mod = module_m(alpha, 1)
            a1 = assemble_matrix(1, mod, window)
            if a1.columns != nabla1_reference_matrix(alpha, window):
                return False, {"alpha": str(alpha), "matrix": "nabla1"}
            a2 = assemble_matrix(2, mod, window)
            if a2.columns != nabla2_reference_matrix(alpha, window):
                return False, {"alpha": str(alpha), "matrix": "nabla2"}
        return True, {"W": 10}
    passed, detail, secs = _timed(run)
    return _result(6, "assembled ∇¹/∇² equal the reference closed forms (α ∈ {0,1}, W=10)",
                   passed, detail, secs, None)


def criterion_7(jobs=1):
    def run():
        window = Window(12, 3)
        cases = [(Fraction(0), 1), (Fraction(1), 0), (Fraction(-2), 0), (Fraction(1, 2), 0)]
        reports = []
        for alpha, want in cases:
            rep = cohomology_dim(1, module_m(alpha, 1), window, jobs)
            reports.append({"alpha": str(alpha), "dim_H": rep["dim_H"], "stable": rep["stable"]})
            if rep["dim_H"] != want or not rep["stable"]:
                return False, {"case": reports[-1], "want": want}
        return True, {"reports": reports}
    passed, detail, secs = _timed(run)
    return _result(7, "H¹(M(α,1)): dim 1 for α=0, dim 0 for α ∈ {1,-2,1/2} (W=12)",
                   passed, detail, secs, 240)


def criterion_8(jobs=1):
    def run():
        settings = [(2, 10), (3, 10), (4, 9)]
        reports = []
        for n, w in settings:
            for alpha in (Fraction(0), Fraction(1)):
                mod = module_m(alpha, 1)
                window = Window(w, 3)
                rep = cohomology_dim(n, mod, window, jobs)
                ok, failures = verify_theorem_constructions(mod, n, window, jobs)
                reports.append({"n": n, "alpha": str(alpha), "dim_H": rep["dim_H"],
                                "stable": rep["stable"], "constructions": ok})
                if rep["dim_H"] != 0 or not rep["stable"] or not ok:
                    return False, {"case": reports[-1], "failures": failures[:2]}
        return True, {"reports": reports}
    passed, detail, secs = _timed(run)
    return _result(8, "Hⁿ(M(α,1)) = 0 for n=2,3,4 plus explicit constructions (α ∈ {0,1})",
                   passed, detail, secs, 300)


def criterion_9(jobs=1):
    def run():
        window = Window(10, 3)
        reports = []
        for spec in ("M(alpha=0,delta=0)", "ext(alpha=0,beta=1,gamma=1)"):
            mod = make_module(spec)
            for n in (2, 3):
                rep = cohomology_dim(n, mod, window, jobs)
                reports.append({"module": spec, "n": n, "dim_H": rep["dim_H"],
                                "stable": rep["stable"]})
                if rep["dim_H"] != 0 or not rep["stable"]:
                    return False, {"case": reports[-1]}
        return True, {"reports": reports}
    passed, detail, secs = _timed(run)
    return _result(9, "Hⁿ = 0 for the M(α,0)-route instances M(0,0) and ext(0,1,1) (n=2,3)",
                   passed, detail, secs, 300)


def criterion_10(jobs=1):
    def run():
        res = check_conformal_axioms(max_vdeg=6, max_ddeg=2)
        if not res["passed"]:
            return False, {"suite": "conformal-axioms", **res["details"]}
        res = check_conformal_associativity(max_total_vdeg=6)
        if not res["passed"]:
            return False, {"suite": "conformal-associativity", **res["details"]}
        res = check_module_axioms()
        if not res["passed"]:
            return False, {"suite": "module-axioms", **res["details"]}
        res = check_chain_map(max_degree=3, window_sum=8)
        if not res["passed"]:
            return False, {"suite": "chain-map", **res["details"]}
        res = check_nabla_squared(max_degree=4, window_sum=9, jobs=jobs)
        if not res["passed"]:
            return False, {"suite": "nabla-squared", **res["details"]}
        return True, {"suites": ["conformal-axioms", "conformal-associativity",
                                 "module-axioms", "chain-map", "nabla-squared"]}
    passed, detail, secs = _timed(run)
    return _result(10, "property suites: conformal axioms, module axioms, D∘Δ = Δ∘D, ∇∘∇ = 0",
                   passed, detail, secs, 120)


def _result(cid, description, passed, detail, seconds, budget):
    out = {
        "id": cid,
        "description": description,
        "passed": bool(passed),
        "seconds": round(seconds, 2),
        "detail": detail,
    }
    if budget is not None:
        out["budget_seconds"] = budget
        out["within_budget"] = seconds < budget
        out["passed"] = out["passed"] and seconds < budget
    return out


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
)


def run_all(jobs=1, ids=None):
    results = []
    for fn in CRITERIA:
        cid = int(fn.__name__.rsplit("_", 1)[1])
        if ids and cid not in ids:
            continue
        if fn.__code__.co_argcount:
            results.append(fn(jobs))
        else:
            results.append(fn())
    return {"passed": all(r["passed"] for r in results), "criteria": results}
