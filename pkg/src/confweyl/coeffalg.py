"""The augmented coefficient algebra Λ = A₊(U(2)) ⊕ k·1.

A₊ is generated by letters v(n), n ≥ 0, subject to the confluent rewriting
system

    v(n)·v(m) → v(0)·v(n+m) + n·v(n+m-1),   n ≥ 1, m ≥ 0,

whose reduced words are exactly v(0)^k v(n).  A normal word is stored as
the pair (k, n); the unit of Λ is the distinguished key ``UNIT``.  The
derivation is the Leibniz extension of ∂(v(n)) = -n·v(n-1), and the
coefficient map sends a conformal element c to its mode c(n) expressed in
the normal basis.
"""

from __future__ import annotations

from fractions import Fraction
import re

from .conformal import ConformalElement

UNIT = None  # the unit word of Λ

_F0 = Fraction(0)
_F1 = Fraction(1)

# letter-by-word products v(a)·v(0)^k v(n), keyed by (a, k, n)
_letter_word_memo = {}


def _letter_word(a, k, n):
    """Normal form of v(a)·v(0)^k v(n) as a dict {(k', n'): coeff}."""
    if a == 0:
        return {(k + 1, n): _F1}
    key = (a, k, n)
    cached = _letter_word_memo.get(key)
    if cached is not None:
        return cached
    if k == 0:
        # single rewriting step; n ≥ 0 and a ≥ 1 keep a+n-1 ≥ 0
        out = {(1, a + n): _F1, (0, a + n - 1): Fraction(a)}
    else:
        # v(a)v(0) = v(0)v(a) + a·v(a-1), then recurse past the v(0)
        out = {}
        for w, c in _letter_word(a, k - 1, n).items():
            out[(w[0] + 1, w[1])] = out.get((w[0] + 1, w[1]), _F0) + c
        for w, c in _letter_word(a - 1, k - 1, n).items():
            out[w] = out.get(w, _F0) + Fraction(a) * c
        out = {w: c for w, c in out.items() if c}
    _letter_word_memo[key] = out
    return out


def _word_sort_key(word):
    if word is UNIT:
        return (1, 0, 0)
    k, n = word
    return (0, -k, -n)


class AlgebraElement:
    """Exact linear combination of normal words of Λ."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    cleaned[w] = c
        self.terms = cleaned

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({UNIT: 1})

    @classmethod
    def scalar(cls, q):
        return cls({UNIT: q})

    @classmethod
    def word(cls, k, n):
        if k < 0 or n < 0:
            raise ValueError("normal words need k >= 0 and n >= 0")
        return cls({(k, n): 1})

    @classmethod
    def letter(cls, n):
        return cls.word(0, n)

    # -- ring structure -------------------------------------------------------

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, _F0) + c
            if s:
                terms[w] = s
            else:
                del terms[w]
        out = AlgebraElement.__new__(AlgebraElement)
        out.terms = terms
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = AlgebraElement.__new__(AlgebraElement)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def scale(self, q):
        q = Fraction(q)
        out = AlgebraElement.__new__(AlgebraElement)
        out.terms = {w: c * q for w, c in self.terms.items()} if q else {}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        terms = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                c = ca * cb
                for w, cw in _word_product(wa, wb).items():
                    s = terms.get(w, _F0) + c * cw
                    if s:
                        terms[w] = s
                    else:
                        del terms[w]
        out = AlgebraElement.__new__(AlgebraElement)
        out.terms = terms
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def augmentation(self):
        """ε: kills every non-unit word."""
        return self.terms.get(UNIT, _F0)

    def scalar_part(self):
        """The k·1 component as a Fraction, or None if non-scalar terms exist."""
        if not self.terms:
            return _F0
        if len(self.terms) == 1 and UNIT in self.terms:
            return self.terms[UNIT]
        return None

    def __str__(self):
        return render_algebra_element(self)

    def __repr__(self):
        return f"AlgebraElement({render_algebra_element(self)!r})"


def _word_product(wa, wb):
    """Product of two normal words as a dict over normal words."""
    if wa is UNIT:
        return {wb: _F1}
    if wb is UNIT:
        return {wa: _F1}
    ka, na = wa
    kb, nb = wb
    # v(0)^ka v(na) · v(0)^kb v(nb): push v(na) through, then prepend v(0)^ka
    out = _letter_word(na, kb, nb)
    if ka:
        out = {(k + ka, n): c for (k, n), c in out.items()}
    return out


def normal_form(word):
    """Rewrite a raw word (sequence of letter indices) to the normal basis."""
    if isinstance(word, str):
        word = parse_word(word)
    result = {UNIT: _F1}
    for letter in reversed(tuple(word)):
        if letter < 0:
            raise ValueError("letter indices must be nonnegative")
        new = {}
        for w, c in result.items():
            if w is UNIT:
                new[(0, letter)] = new.get((0, letter), _F0) + c
            else:
                for w2, c2 in _letter_word(letter, w[0], w[1]).items():
                    s = new.get(w2, _F0) + c * c2
                    if s:
                        new[w2] = s
                    else:
                        del new[w2]
        result = new
    return AlgebraElement(result)


def multiply(x, y):
    """Product in Λ (bilinear extension of concatenation + rewriting)."""
    return x * y


def derivation(x):
    """Leibniz extension of ∂(v(n)) = -n·v(n-1); ∂(v(0)) = 0, ∂(1) = 0."""
    terms = {}
    for w, c in x.terms.items():
        if w is UNIT:
            continue
        k, n = w
        if n:
            # only the tail letter survives: ∂ kills each v(0) factor
            key = (k, n - 1)
            s = terms.get(key, _F0) - Fraction(n) * c
            if s:
                terms[key] = s
            else:
                del terms[key]
    return AlgebraElement(terms)


def coeff_image(c, n):
    """Image of the mode c(n) of a conformal element in the normal basis.

    Uses (∂^a x)(n) = (-1)^a n(n-1)…(n-a+1) x(n-a), x(m) = 0 for m < 0,
    and (v^j)(m) = v(0)^{j-1} v(m).
    """
    if n < 0:
        return AlgebraElement.zero()
    out = AlgebraElement.zero()
    for a, j, coeff in c.monomials():
        m = n - a
        if m < 0:
            continue
        fall = _F1
        for i in range(a):
            fall *= n - i
        sign = -_F1 if a % 2 else _F1
        out = out + AlgebraElement({(j - 1, m): coeff * sign * fall})
    return out


# -- text form ------------------------------------------------------------------

_WORD_TOKEN = re.compile(r"\s*(?:v\((\d+)\)|\*)")


def parse_word(text):
    """Parse 'v(2)v(3)v(1)' (whitespace and '*' separators allowed)."""
    pos = 0
    letters = []
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"cannot parse word near {text[pos:]!r}")
            break
        if m.group(1) is not None:
            letters.append(int(m.group(1)))
        pos = m.end()
    if not letters:
        raise ValueError("empty word")
    return tuple(letters)


def render_word(word):
    if word is UNIT:
        return "1"
    k, n = word
    if k == 0:
        return f"v({n})"
    prefix = "v(0)" if k == 1 else f"v(0)^{k}"
    return f"{prefix} v({n})"


def render_algebra_element(x):
    if not x.terms:
        return "0"
    chunks = []
    for w in sorted(x.terms, key=_word_sort_key):
        c = x.terms[w]
        if w is UNIT:
            body = str(abs(c))
        elif abs(c) == 1:
            body = render_word(w)
        else:
            body = f"{abs(c)} {render_word(w)}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(chunks)
