"""Words and linear combinations over the two alphabets of the theory.

The working alphabet A consists of the letter xi and the letters z_k for
k >= 1. A-letters are stored as small integers: 0 encodes xi and k >= 1
encodes z_k. An A-word is a tuple of letter codes, the empty tuple being
the word 1. Degrees: xi has degree 1, z_k has degree k.

The ambient alphabet is {x, y, r} (r prints the letter rho). An x/y/r word
is stored as a plain string over "xyr", each letter of degree 1. The two
bases are linked by xi = y - r and z_k = x^(k-1) y; in the other direction
r = z_1 - xi, so contraction is exact on the span of block-decomposable
words.

Linear combinations carry HPoly coefficients and are held in Element, which
works for both bases since tuples and strings share concatenation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, NotAnIndexWord, NotHomogeneous, NotInH1
from .hpoly import HPoly, ONE, ZERO

XI = 0
RHO = -1  # evaluation-only letter handle; never stored inside A-words

X_LETTERS = "xyr"

SPACES = ("H0hat", "H0", "H0tilde", "Hge1", "Hge2")


def letter_degree(u):
    """Degree of an A-letter code: xi has degree 1, z_k degree k."""
    if u == XI:
        return 1
    if u >= 1:
        return u
    raise ValueError("not an A-letter code: %r" % (u,))


def word_degree(w):
    """Degree of a word in either basis."""
    if isinstance(w, str):
        return len(w)
    return sum(letter_degree(u) for u in w)


def weight(hbar_power, word):
    """Total weight of the monomial h^j * word."""
    return hbar_power + word_degree(word)


def word_sort_key(w):
    """Graded lexicographic key; letter orders xi < z_1 < z_2 < ... and x < y < r."""
    if isinstance(w, str):
        return (len(w), tuple(X_LETTERS.index(c) for c in w))
    return (word_degree(w), w)


class Element:
    """Finite linear combination of words with HPoly coefficients.

    terms maps a word (an A-basis tuple or an x/y/r string) to a nonzero
    HPoly. Treat instances as immutable; all operations return new values.
    Multiplication by another Element is the concatenation product; by an
    HPoly, Fraction, or int it is scalar multiplication.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        data = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for word, coeff in items:
            if not isinstance(coeff, HPoly):
                coeff = HPoly(coeff)
            if coeff:
                prev = data.get(word)
                if prev is None:
                    data[word] = coeff
                else:
                    total = prev + coeff
                    if total:
                        data[word] = total
                    else:
                        del data[word]
        object.__setattr__(self, "terms", data)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @classmethod
    def from_word(cls, word, coeff=ONE):
        return cls(((word, coeff),))

    @classmethod
    def unit(cls, basis="a"):
        return cls((((), ONE),)) if basis == "a" else cls((("", ONE),))

    @classmethod
    def zero(cls):
        return cls()

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            prev = out.get(word)
            if prev is None:
                out[word] = coeff
            else:
                total = prev + coeff
                if total:
                    out[word] = total
                else:
                    del out[word]
        return _raw(out)

    def __neg__(self):
        return _raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    word = w1 + w2
                    coeff = c1 * c2
                    prev = out.get(word)
                    if prev is None:
                        out[word] = coeff
                    else:
                        total = prev + coeff
                        if total:
                            out[word] = total
                        else:
                            del out[word]
            return _raw(out)
        if isinstance(other, (HPoly, Fraction, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (HPoly, Fraction, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, coeff):
        if not isinstance(coeff, HPoly):
            coeff = HPoly(coeff)
        if not coeff:
            return Element()
        return _raw({w: c * coeff for w, c in self.terms.items()})

    def coeff(self, word):
        return self.terms.get(word, ZERO)

    def sorted_terms(self):
        """Terms in canonical graded lexicographic word order."""
        return sorted(self.terms.items(), key=lambda item: word_sort_key(item[0]))

    def words(self):
        return self.terms.keys()

    def map_words(self, fn):
        """Linear extension of a word -> Element map."""
        out = Element()
        for word, coeff in self.terms.items():
            out = out + fn(word).scale(coeff)
        return out

    def __repr__(self):
        from .expr import format_element

        return "Element(%r)" % (format_element(self),)

    def __str__(self):
        from .expr import format_element

        return format_element(self)


def _raw(data):
    """Wrap an already-normalized dict without copying."""
    e = Element()
    object.__setattr__(e, "terms", data)
    return e


def monomials(e):
    """Yield (hbar_power, word, Fraction coefficient) over all stored terms."""
    for word, coeff in e.terms.items():
        for j, c in enumerate(coeff.coeffs):
            if c:
                yield j, word, c


def element_weight(e):
    """The common total weight of all monomials; None for the zero element.

    Raises NotHomogeneous when monomials of different weights are present.
    """
    w = None
    for j, word, _ in monomials(e):
        wt = j + word_degree(word)
        if w is None:
            w = wt
        elif w != wt:
            raise NotHomogeneous("mixed weights %d and %d" % (w, wt))
    return w


def is_admissible_start(word):
    """True for the empty word and words starting with xi or z_k, k >= 2."""
    return not word or word[0] != 1


def word_in_space(word, space):
    if space == "H0hat":
        return is_admissible_start(word)
    if space == "H0":
        return all(u >= 1 for u in word) and (not word or word[0] >= 2)
    if space == "H0tilde":
        return bool(word) and word[0] != 1
    if space == "Hge1":
        return not word or word[0] >= 1
    if space == "Hge2":
        return not word or word[0] >= 2
    raise ValueError("unknown space %r (expected one of %s)" % (space, ", ".join(SPACES)))


def membership(e, space):
    """True iff every term of e lies in the named submodule."""
    return all(word_in_space(w, space) for w in e.terms)


def index_to_word(parts):
    """The index (k_1,...,k_r) as the word z_{k_1}...z_{k_r}."""
    parts = tuple(parts)
    if any(k < 1 for k in parts):
        raise ValueError("index parts must be positive")
    return parts


def word_to_index(word):
    """Inverse of index_to_word; rejects words containing xi."""
    if any(u == XI for u in word):
        raise NotAnIndexWord("word %r contains xi" % (word,))
    return tuple(word)


def is_admissible_index(parts):
    return not parts or parts[0] >= 2


def index_to_text(parts):
    return ",".join(str(k) for k in parts)


def index_from_text(text):
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise ValueError("bad index text %r" % (text,)) from exc
    if any(k < 1 for k in parts):
        raise ValueError("index parts must be positive: %r" % (text,))
    return parts


_XI_EXPANSION = (("y", ONE), ("r", HPoly(-1)))


def expand_to_x(e):
    """Rewrite an A-element over {x, y, r}: xi -> y - r, z_k -> x^(k-1)y."""
    out = {}
    for word, coeff in e.terms.items():
        partial = [("", coeff)]
        for u in word:
            if u == XI:
                partial = [(w + c, k * s) for w, k in partial for c, s in _XI_EXPANSION]
            else:
                block = "x" * (u - 1) + "y"
                partial = [(w + block, k) for w, k in partial]
        for w, c in partial:
            prev = out.get(w)
            total = c if prev is None else prev + c
            if total:
                out[w] = total
            elif prev is not None:
                del out[w]
    return _raw(out)


def _rho_block():
    return Element((((1,), ONE), ((XI,), HPoly(-1))))


def contract_to_a(e):
    """Inverse of expand_to_x on block-decomposable words.

    Each x/y/r word must factor as blocks x^(k-1)y (giving z_k) and single
    letters r (giving z_1 - xi). Raises NotInH1 otherwise.
    """
    rho = _rho_block()
    out = Element()
    for word, coeff in e.terms.items():
        factors = Element.unit()
        i = 0
        n = len(word)
        while i < n:
            c = word[i]
            if c == "r":
                factors = factors * rho
                i += 1
            elif c == "y":
                factors = factors * Element.from_word((1,))
                i += 1
            else:
                j = i
                while j < n and word[j] == "x":
                    j += 1
                if j >= n or word[j] != "y":
                    raise NotInH1("x-run not followed by y in %r" % (word,))
                factors = factors * Element.from_word((j - i + 1,))
                i = j + 1
        out = out + factors.scale(coeff)
    return out


def decompose_h0hat(e):
    """Split an element of the admissible span into its direct summands.

    Returns (part2, buckets) where part2 collects the constants and the
    z_k-leading words (k >= 2), and buckets maps r >= 0 to the element w
    such that xi r^r w was contributed, with w ranging over z-leading or
    empty words. Uses the triangular rewriting xi = z_1 - r repeatedly:
    xi r^r xi u = xi r^r z_1 u - xi r^(r+1) u.

    Raises DomainError when some word starts with z_1.
    """
    part2 = {}
    buckets = {}
    for word, coeff in e.terms.items():
        if not word or word[0] >= 2:
            _accumulate(part2, word, coeff)
            continue
        if word[0] == 1:
            raise DomainError("word %r starts with z_1" % (word,))
        stack = [(0, word[1:], coeff)]
        while stack:
            r, rest, c = stack.pop()
            if rest and rest[0] == XI:
                stack.append((r, (1,) + rest[1:], c))
                stack.append((r + 1, rest[1:], -c))
            else:
                _accumulate(buckets.setdefault(r, {}), rest, c)
    return _raw(part2), {r: _raw(data) for r, data in buckets.items() if data}


def _accumulate(data, word, coeff):
    prev = data.get(word)
    total = coeff if prev is None else prev + coeff
    if total:
        data[word] = total
    elif prev is not None:
        del data[word]


def xi_rho_times(r, e):
    """Left-multiply an A-element by xi r^r, expanded in the A-basis."""
    prefix = Element.from_word((XI,))
    rho = _rho_block()
    for _ in range(r):
        prefix = prefix * rho
    return prefix * e


def a_words_of_degree(m, admissible_only=False):
    """All A-words of the given degree, in canonical lexicographic order.

    Letters are drawn in code order xi < z_1 < z_2 < ...; admissible_only
    restricts the first letter to xi or z_k with k >= 2.
    """
    if m < 0:
        return
    if m == 0:
        yield ()
        return
    for u in range(0, m + 1):
        if admissible_only and u == 1:
            continue
        for tail in a_words_of_degree(m - letter_degree(u)):
            yield (u,) + tail
