"""Anick resolution machinery for Λ = A₊(U(2)) ⊕ k·1 via Morse matching.

Bar cells are tuples of normal words [w₁|…|wₙ] (basis of Λ ⊗ (Λ/k)^⊗n);
the empty cell () is the basis of degree 0.  Anick chains of degree n are
index tuples (i₁,…,iₙ); the obstruction set consists of the length-two
words v(a)v(b) with a ≥ 1, so the n-letter chains are exactly the tuples
with i₁,…,iₙ₋₁ ≥ 1 and iₙ ≥ 0.  The chain test and the matching are
nevertheless computed from the generic prechain/chain definitions so the
closed forms can be validated against them.

The Morse matching pairs a cell whose maximal chain prefix covers slots
1..p+1 with the cell obtained by splitting slot p+2 as w'·w'' whenever the
prefix extended by w' is a (p+1)-chain.  All matched weights are ±1 here;
invertibility is still checked and a failure aborts loudly.  Differentials
and the homotopy maps f, g are sums of path weights in the reversed-edge
graph, computed by memoized depth-first traversal (the matching is acyclic,
asserted in debug via the recursion stack).
"""

from __future__ import annotations

from fractions import Fraction

from .coeffalg import (
    UNIT,
    AlgebraElement,
    normal_form,
    render_word,
)

_F1 = Fraction(1)


class MatchingError(RuntimeError):
    """A matched edge had a non-invertible weight (signals a matching bug)."""


# -- obstruction sets and Anick chains -------------------------------------------

class ObstructionSet:
    """Leading words of a confluent presentation, as a predicate on words."""

    def __init__(self, contains, max_len, name="obstructions"):
        self._contains = contains
        self.max_len = max_len
        self.name = name

    def __contains__(self, word):
        return self._contains(tuple(word))


#: leading words of the rewriting rule v(n)v(m) → v(0)v(n+m) + n·v(n+m-1)
U2_OBSTRUCTIONS = ObstructionSet(
    lambda w: len(w) == 2 and w[0] >= 1 and w[1] >= 0,
    max_len=2,
    name="U(2) coefficient algebra",
)


def _prechain_states(word, tiles, obstructions):
    """Reachable (a_j, b_j) interval ends after j tiles, for j = 1..tiles."""
    t = len(word)
    levels = []
    states = set()
    for b in range(2, min(t, obstructions.max_len) + 1):
        if word[0:b] in obstructions:
            states.add((1, b))
    levels.append(states)
    for _ in range(1, tiles):
        nxt = set()
        for (a, b) in levels[-1]:
            for a2 in range(a + 1, b + 1):
                for b2 in range(b + 1, min(t, a2 + obstructions.max_len - 1) + 1):
                    if word[a2 - 1:b2] in obstructions:
                        nxt.add((a2, b2))
        levels.append(nxt)
    return levels


def is_chain(word, degree, obstructions=U2_OBSTRUCTIONS):
    """Whether a raw word is an Anick ``degree``-chain.

    Degree -1 is the empty word, degree 0 a single letter; for degree n ≥ 1
    the word must tile by n obstructions with Anick's minimality condition
    (each b_m is the least end of any m-prechain prefix).
    """
    if isinstance(word, str):
        from .coeffalg import parse_word
        word = parse_word(word)
    word = tuple(word)
    t = len(word)
    if degree == -1:
        return t == 0
    if degree == 0:
        return t == 1
    if degree < -1 or t < 2:
        return False
    levels = _prechain_states(word, degree, obstructions)
    # minimal end of an m-prechain prefix, for each m
    minimal_ends = []
    for states in levels:
        if not states:
            return False
        minimal_ends.append(min(b for (_, b) in states))
    if minimal_ends[-1] != t:
        return False
    # thread a placement through the minimal ends
    current = {(a, b) for (a, b) in levels[0] if b == minimal_ends[0]}
    for m in range(1, degree):
        e = minimal_ends[m]
        nxt = set()
        for (a, b) in current:
            for a2 in range(a + 1, b + 1):
                if e > b and word[a2 - 1:e] in obstructions:
                    nxt.add((a2, e))
        current = nxt
        if not current:
            return False
    return True


def chain_sort_key(chain):
    return (sum(chain), chain)


def enumerate_chains(degree, max_sum):
    """All degree-n chains (i₁,…,iₙ) with Σiⱼ ≤ max_sum, in (sum, lex) order.

    Constraints: i₁,…,iₙ₋₁ ≥ 1 and iₙ ≥ 0 (for degree 1 just i₁ ≥ 0).
    Degree 0 yields the single empty chain.
    """
    if degree < 0 or max_sum < 0:
        raise ValueError("need degree >= 0 and max_sum >= 0")
    if degree == 0:
        return [()]
    out = []

    def rec(prefix, remaining, pos):
        if pos == degree - 1:
            for last in range(0, remaining + 1):
                out.append(prefix + (last,))
            return
        for i in range(1, remaining + 1):
            rec(prefix + (i,), remaining - i, pos + 1)

    rec((), max_sum, 0)
    out.sort(key=chain_sort_key)
    return out


def chain_letters(chain):
    return tuple(chain)


def chain_to_cell(chain):
    """The critical bar cell of a chain: one single-letter slot per index."""
    return tuple((0, i) for i in chain)


def cell_letters(cell):
    letters = []
    for (k, n) in cell:
        letters.extend([0] * k)
        letters.append(n)
    return tuple(letters)


def cell_is_chain(cell, obstructions=U2_OBSTRUCTIONS):
    """Whether a bar cell is a critical (chain) cell: single-letter slots
    whose concatenation is an Anick (len-1)-chain."""
    if any(k for (k, _) in cell):
        return False
    return is_chain(cell_letters(cell), len(cell) - 1, obstructions)


def cell_to_chain(cell):
    if any(k for (k, _) in cell):
        raise ValueError("not a chain cell")
    return tuple(n for (_, n) in cell)


# -- bar complex -------------------------------------------------------------------

def bar_differential(cell):
    """Differential of the normalized bar complex.

    d[a₁|…|aₙ] = a₁[a₂|…|aₙ] + Σᵢ (-1)^i [a₁|…|N(aᵢaᵢ₊₁)|…|aₙ], where the
    merged slot expands linearly over the normal basis.  Degree-1 cells map
    to a₁ times the empty cell (the Λ-part of B₀).  Returns a dict
    BarCell -> AlgebraElement.
    """
    n = len(cell)
    if n == 0:
        return {}
    out = {}

    def add(target, coeff):
        prev = out.get(target)
        s = prev + coeff if prev is not None else coeff
        if s.is_zero():
            out.pop(target, None)
        else:
            out[target] = s

    head = AlgebraElement({cell[0]: 1})
    add(cell[1:], head)
    for i in range(n - 1):
        sign = -_F1 if i % 2 == 0 else _F1  # (-1)^{i+1} for 1-based position i+1
        wa, wb = cell[i], cell[i + 1]
        letters = cell_letters((wa, wb))
        for w, c in normal_form(letters).terms.items():
            if w is UNIT:
                raise MatchingError("slot merge produced a unit term")
            target = cell[:i] + (w,) + cell[i + 2:]
            add(target, AlgebraElement.scalar(sign * c))
    return out


def bar_derivation(cell):
    """Slot-wise derivation: Σᵢ [a₁|…|∂(aᵢ)|…|aₙ] with ∂v(n) = -n·v(n-1).

    Slots whose derivative vanishes drop out.  Returns BarCell -> Fraction.
    """
    out = {}
    for i, (k, n) in enumerate(cell):
        if n == 0:
            continue
        target = cell[:i] + ((k, n - 1),) + cell[i + 1:]
        s = out.get(target, Fraction(0)) - n
        if s:
            out[target] = s
        else:
            del out[target]
    return out


# -- Morse matching ------------------------------------------------------------------

def prefix_chain_degree(cell, obstructions=U2_OBSTRUCTIONS):
    """Largest p ≥ -1 with slots 1..p+1 concatenating to an Anick p-chain."""
    best = -1
    letters = ()
    for q in range(len(cell)):
        letters = letters + cell_letters((cell[q],))
        if is_chain(letters, q, obstructions):
            best = q
    return best


def _split_word(word, cut):
    """Split the normal word v(0)^k v(n) after ``cut`` letters."""
    k, n = word
    if cut < 1 or cut > k:
        raise ValueError("cut must leave both parts nonempty")
    left = (cut - 1, 0)  # v(0)^cut
    right = (k - cut, n)
    return left, right


def _merge_weight(split_cell, merged_cell):
    """Bar-differential coefficient of the merged cell in d(split cell)."""
    coeff = bar_differential(split_cell).get(merged_cell)
    if coeff is None:
        raise MatchingError("matched edge missing from the bar differential")
    scalar = coeff.scalar_part()
    if scalar is None or scalar == 0:
        raise MatchingError(f"matched edge weight {coeff} is not invertible in Λ")
    return scalar


def matched_edge(cell, obstructions=U2_OBSTRUCTIONS):
    """Morse-matching partner of a bar cell, or None for critical cells.

    Returns (partner, direction, weight): direction 'up' when the partner
    has one more slot (this cell is the merged end), 'down' when it has one
    fewer (this cell is the split end).  The weight is the matched edge's
    bar-differential coefficient, checked to be an invertible scalar.
    """
    m = len(cell)
    if m == 0:
        return None
    p = prefix_chain_degree(cell, obstructions)

    # merged end: split slot p+2 as w'·w'' with prefix+w' a (p+1)-chain
    if p + 2 <= m:
        slot = cell[p + 1]
        prefix = cell_letters(cell[:p + 1])
        slot_letters = cell_letters((slot,))
        for cut in range(1, len(slot_letters)):
            if is_chain(prefix + slot_letters[:cut], p + 1, obstructions):
                left, right = _split_word(slot, cut)
                partner = cell[:p + 1] + (left, right) + cell[p + 2:]
                weight = _merge_weight(partner, cell)
                return partner, "up", weight

    # split end: merge slots q+2, q+3 where the merged cell has prefix degree q
    hits = []
    for q in range(-1, m - 2):
        joined = normal_form(cell_letters(cell[q + 1:q + 3]))
        words = [w for w in joined.terms if w is not UNIT]
        merged_word = None
        for w in words:
            if cell_letters((w,)) == cell_letters(cell[q + 1:q + 3]):
                merged_word = w
                break
        if merged_word is None:
            continue  # junction rewrites: merged cell is not a basis vertex
        merged = cell[:q + 1] + (merged_word,) + cell[q + 3:]
        if prefix_chain_degree(merged, obstructions) != q:
            continue
        if not is_chain(cell_letters(cell[:q + 2]), q + 1, obstructions):
            continue
        hits.append((q, merged))
    if len(hits) > 1:
        raise MatchingError(f"cell {cell} matched by {len(hits)} merge positions")
    if hits:
        q, merged = hits[0]
        weight = _merge_weight(cell, merged)
        return merged, "down", weight
    return None


# -- path-weight maps ---------------------------------------------------------------

_f_memo = {}
_ascend_memo = {}


def _combine(acc, coeff, combo):
    """acc += coeff·combo with the Λ coefficient multiplying from the left."""
    for key, val in combo.items():
        term = coeff * val
        prev = acc.get(key)
        s = prev + term if prev is not None else term
        if s.is_zero():
            acc.pop(key, None)
        else:
            acc[key] = s


def homotopy_f(cell, _stack=None):
    """Projection B → A: path weights from a bar cell to critical cells.

    Critical cells map to their chain; split ends of matched edges map to 0;
    a merged end lifts through its partner and recurses along the remaining
    bar-differential edges.  Returns a dict chain -> AlgebraElement.
    """
    cached = _f_memo.get(cell)
    if cached is not None:
        return cached
    if _stack is None:
        _stack = set()
    assert cell not in _stack, "cycle in Morse graph traversal"
    edge = matched_edge(cell)
    if edge is None:
        result = {cell_to_chain(cell): AlgebraElement.one()}
    elif edge[1] == "down":
        result = {}
    else:
        partner, _, weight = edge
        inv = -_F1 / weight
        _stack.add(cell)
        result = {}
        for target, coeff in bar_differential(partner).items():
            if target == cell:
                continue
            _combine(result, coeff.scale(inv), homotopy_f(target, _stack))
        _stack.discard(cell)
    _f_memo[cell] = result
    return result


def _ascend(cell, _stack=None):
    """Paths climbing from a merged end into split cells (used by g)."""
    cached = _ascend_memo.get(cell)
    if cached is not None:
        return cached
    edge = matched_edge(cell)
    if edge is None or edge[1] == "down":
        result = {}
    else:
        if _stack is None:
            _stack = set()
        assert cell not in _stack, "cycle in Morse graph traversal"
        partner, _, weight = edge
        inv = -_F1 / weight
        _stack.add(cell)
        result = {partner: AlgebraElement.scalar(inv)}
        for target, coeff in bar_differential(partner).items():
            if target == cell:
                continue
            _combine(result, coeff.scale(inv), _ascend(target, _stack))
        _stack.discard(cell)
    _ascend_memo[cell] = result
    return result


def homotopy_g(chain):
    """Inclusion A → B: the chain's cell plus its zig-zag corrections.

    Returns a dict BarCell -> AlgebraElement.
    """
    cell = chain_to_cell(chain)
    result = {cell: AlgebraElement.one()}
    for target, coeff in bar_differential(cell).items():
        _combine(result, coeff, _ascend(target))
    return result


def anick_delta_morse(chain):
    """Differential on critical cells as a sum of Morse-graph path weights."""
    cell = chain_to_cell(chain)
    result = {}
    for target, coeff in bar_differential(cell).items():
        _combine(result, coeff, homotopy_f(target))
    return result


def anick_delta_closed(chain):
    """Closed-form differential δₙ on a degree-n chain.

    δₙ[i₁|…|iₙ] = v(i₁)[i₂|…|iₙ]
        + Σⱼ (-1)^j iⱼ [i₁|…|iⱼ+iⱼ₊₁-1|…|iₙ]
        + Σⱼ (-1)^j v(0) [i₁|…|iⱼ+iⱼ₊₁|…|iₙ]
        + Σⱼ Σ_{k<j} (-1)^j i_k [i₁|…|i_k-1|…|iⱼ+iⱼ₊₁|…|iₙ],
    with every target violating the chain constraints dropped (an interior
    index reaching 0).  Degree 1 maps [i] to v(i) times the empty chain.
    """
    n = len(chain)
    if n == 0:
        return {}
    result = {}

    def add(target, coeff):
        if len(target) >= 2 and any(i < 1 for i in target[:-1]):
            return  # not an Anick chain
        if target and target[-1] < 0:
            return
        prev = result.get(target)
        s = prev + coeff if prev is not None else coeff
        if s.is_zero():
            result.pop(target, None)
        else:
            result[target] = s

    add(chain[1:], AlgebraElement.letter(chain[0]))
    for j in range(1, n):  # merge of 1-based positions j, j+1
        sign = -_F1 if j % 2 else _F1
        merged = chain[:j - 1] + (chain[j - 1] + chain[j],) + chain[j + 1:]
        dec_merged = chain[:j - 1] + (chain[j - 1] + chain[j] - 1,) + chain[j + 1:]
        add(dec_merged, AlgebraElement.scalar(sign * chain[j - 1]))
        add(merged, AlgebraElement({(0, 0): sign}))  # v(0)-weighted merge
        for k in range(1, j):
            dec_k = merged[:k - 1] + (merged[k - 1] - 1,) + merged[k:]
            add(dec_k, AlgebraElement.scalar(sign * chain[k - 1]))
    return result


def clear_caches():
    """Drop the memoized Morse traversals and rewriting tables."""
    _f_memo.clear()
    _ascend_memo.clear()


# -- rendering ------------------------------------------------------------------------

def render_chain(chain):
    return "[" + "|".join(str(i) for i in chain) + "]"


def parse_chain(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("chains look like [2|1|0]")
    inner = text[1:-1].strip()
    if not inner:
        return ()
    return tuple(int(part.strip()) for part in inner.split("|"))


def render_cell(cell):
    return "[" + "|".join(render_word(w) for w in cell) + "]"


def parse_cell(text):
    from .coeffalg import parse_word

    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("bar cells look like [v(1)|v(0)v(2)]")
    inner = text[1:-1].strip()
    if not inner:
        return ()
    slots = []
    for part in inner.split("|"):
        letters = parse_word(part)
        nf = normal_form(letters)
        words = list(nf.terms)
        if len(words) != 1 or words[0] is UNIT or nf.terms[words[0]] != 1 \
                or cell_letters((words[0],)) != letters:
            raise ValueError(f"slot {part!r} is not a normal word")
        slots.append(words[0])
    return tuple(slots)


def render_combination(combo, render_key):
    """'v(2)*[3] - v(0)*[5] - 2*[4]' style rendering, deterministic order."""
    if not combo:
        return "0"
    items = sorted(combo.items(), key=lambda kv: _combo_key(kv[0]))
    chunks = []
    for key, coeff in items:
        scalar = coeff.scalar_part()
        if scalar is not None:
            mag = abs(scalar)
            body = render_key(key) if mag == 1 else f"{mag}*{render_key(key)}"
            negative = scalar < 0
        else:
            terms = coeff.terms
            if len(terms) == 1:
                (w, c), = terms.items()
                word = render_word(w)
                core = word if abs(c) == 1 else f"{abs(c)} {word}"
                body = f"{core}*{render_key(key)}"
                negative = c < 0
            else:
                body = f"({coeff})*{render_key(key)}"
                negative = False
        if not chunks:
            chunks.append(body if not negative else f"-{body}")
        else:
            chunks.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(chunks)


def _combo_key(key):
    if key and isinstance(key[0], tuple):  # bar cell
        return (len(key), cell_letters(key))
    return (len(key), key)
