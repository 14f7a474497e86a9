"""Relation spaces among the normalized series values.

Builds the double-shuffle generators (harmonic minus integral shuffle) and
the resummation-duality generators (phi-rho words minus their duals),
intersects their span with the z-word part of the weight-d component by
exact rational elimination, and reports relation bases over admissible
indices together with the dimension table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import NotAdmissible, NotHomogeneous
from .hpoly import h_power
from .words import (
    Element,
    a_words_of_degree,
    index_from_text,
    index_to_text,
    is_admissible_index,
    word_degree,
    word_in_space,
    word_to_index,
)
from .products import harmonic, phi, shuffle
from .evaluate import zbar_q


@dataclass(frozen=True)
class GradedBasis:
    """Monomial basis of the weight-d admissible span, canonically ordered.

    monomials holds (hbar_power, word) pairs; h0_flags marks the monomials
    whose word is a z-word with leading part >= 2 (or the empty word).
    """

    weight: int
    monomials: tuple
    h0_flags: tuple


def enumerate_basis(d):
    """All monomials of total weight d: h^d and h^(d-m) * (admissible word)."""
    if d < 0:
        raise ValueError("weight must be >= 0")
    monomials = [(d, ())]
    for m in range(1, d + 1):
        for w in a_words_of_degree(m, admissible_only=True):
            monomials.append((d - m, w))
    flags = tuple(word_in_space(w, "H0") for _, w in monomials)
    return GradedBasis(d, tuple(monomials), flags)


def gen_double_shuffle(d, caches=None):
    """Generators w * w' - w sh w' spanning the double-shuffle space.

    Enumerates unordered pairs of admissible-start words with degree sum
    d - j for every j >= 0 and lifts by h^j, so the list is homogeneous of
    weight d. Deterministic order: j ascending, then degrees, then words.
    """
    if d < 2:
        raise ValueError("double shuffle needs weight >= 2")
    if caches is None:
        caches = {}
    hc = caches.setdefault("harmonic", {})
    sc = caches.setdefault("shuffle", {})
    out = []
    for j in range(0, d - 1):
        rem = d - j
        lift = h_power(j)
        for m1 in range(1, rem // 2 + 1):
            m2 = rem - m1
            words1 = list(a_words_of_degree(m1, admissible_only=True))
            words2 = list(a_words_of_degree(m2, admissible_only=True)) if m2 != m1 else words1
            for i1, w1 in enumerate(words1):
                e1 = Element.from_word(w1)
                start = i1 if m1 == m2 else 0
                for w2 in words2[start:]:
                    e2 = Element.from_word(w2)
                    el = harmonic(e1, e2, hc) - shuffle(e1, e2, sc)
                    if el:
                        out.append(el.scale(lift))
    return out


def _ab_compositions(total):
    """Sequences ((a_1,b_1),...,(a_r,b_r)) of nonnegatives, sum(a+b+1) = total."""
    if total == 0:
        yield ()
        return
    for a in range(total):
        for b in range(total - a):
            head = (a, b)
            for rest in _ab_compositions(total - a - b - 1):
                yield (head,) + rest


def gen_resummation(d, include_hbar_lifts=True):
    """Duality generators phi_{a? +1} rho^b ... minus the reversed-swapped word.

    Every composition with weight sum d contributes the difference of the
    phi-rho word and its dual (reverse the factors, swap each (a, b)); the
    self-dual compositions are dropped since they vanish. With lifts on,
    h^j times the weight-(d-j) generators are appended for j >= 1.
    """
    if d < 1:
        raise ValueError("resummation needs weight >= 1")
    phis = {}
    rho_pows = {0: Element.unit()}

    def phi_cached(k):
        if k not in phis:
            phis[k] = phi(k)
        return phis[k]

    def rho_pow(r):
        if r not in rho_pows:
            rho_pows[r] = rho_pow(r - 1) * Element((((1,), 1), ((0,), -1)))
        return rho_pows[r]

    def word_of(comp):
        el = Element.unit()
        for a, b in comp:
            el = el * phi_cached(a + 1) * rho_pow(b)
        return el

    out = []
    js = range(0, d) if include_hbar_lifts else (0,)
    for j in js:
        dd = d - j
        if dd < 1:
            continue
        lift = h_power(j)
        for comp in _ab_compositions(dd):
            dual = tuple((b, a) for a, b in reversed(comp))
            if dual == comp:
                continue
            el = word_of(comp) - word_of(dual)
            if el:
                out.append(el.scale(lift))
    return out


def gen_hoffman(index):
    """Hoffman's identity for an admissible index, as an element of the z-span.

    The raising side sum_i z_{k_1} ... z_{k_i + 1} ... z_{k_r} minus the
    splitting side sum over i with k_i >= 2 and 0 <= a <= k_i - 2 of
    z_{k_1} ... z_{k_i - a} z_{a+1} ... z_{k_r}; weight |k| + 1, no h part.
    """
    index = tuple(index)
    if not is_admissible_index(index):
        raise NotAdmissible("index %s must start with a part >= 2" % (index_to_text(index) or "()",))
    terms = []
    for i, k in enumerate(index):
        terms.append((index[:i] + (k + 1,) + index[i + 1 :], 1))
    for i, k in enumerate(index):
        for a in range(0, k - 1):
            terms.append((index[:i] + (k - a, a + 1) + index[i + 1 :], -1))
    return Element(terms)


def _first_nonzero(row, start):
    for i in range(start, len(row)):
        if row[i]:
            return i
    return None


def _strip_content(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _int_echelon(int_rows, ncols):
    """Insertion echelon over the integers; returns {pivot column: row}."""
    pivots = {}
    for row in int_rows:
        col = _first_nonzero(row, 0)
        while col is not None:
            piv = pivots.get(col)
            if piv is None:
                if row[col] < 0:
                    row = [-x for x in row]
                pivots[col] = _strip_content(row)
                break
            a, b = row[col], piv[col]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            row = [mb * x - ma * y for x, y in zip(row, piv)]
            row = _strip_content(row)
            col = _first_nonzero(row, col + 1)
    return pivots


def _to_int_row(frac_row):
    den = 1
    for x in frac_row:
        if x:
            den = lcm(den, x.denominator)
    return [int(x * den) for x in frac_row]


def rref(rows):
    """Reduced row-echelon form of rational rows; returns the basis rows.

    Exact over the rationals, deterministic and canonical: the output does
    not depend on the input row order beyond the row space it spans.
    """
    rows = [list(map(Fraction, r)) for r in rows]
    if not rows:
        return ()
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("rows must have equal length")
    pivots = _int_echelon([_to_int_row(r) for r in rows], ncols)
    cols = sorted(pivots)
    for c in reversed(cols):
        row = pivots[c]
        for c2 in cols:
            if c2 > c and row[c2]:
                upper = pivots[c2]
                a, b = row[c2], upper[c2]
                g = gcd(a, b)
                row = [(b // g) * x - (a // g) * y for x, y in zip(row, upper)]
                row = _strip_content(row)
        pivots[c] = row
    out = []
    for c in cols:
        row = pivots[c]
        lead = Fraction(row[c])
        out.append(tuple(Fraction(x) / lead for x in row))
    return tuple(out)


@dataclass(frozen=True)
class RelationBasis:
    """Exact relation rows over the admissible-index coordinates at weight d."""

    weight: int
    hbar_lifts: bool
    index_basis: tuple
    rows: tuple

    @property
    def dimension(self):
        return len(self.rows)


def element_coordinates(e, basis):
    """Coordinates of a weight-homogeneous element in a GradedBasis order."""
    d = basis.weight
    col_of = {word: i for i, (_, word) in enumerate(basis.monomials)}
    row = [Fraction(0)] * len(basis.monomials)
    for word, coeff in e.terms.items():
        j = d - word_degree(word)
        if j < 0:
            raise NotHomogeneous("word %s exceeds weight %d" % (word, d))
        for power, c in enumerate(coeff.coeffs):
            if c and power != j:
                raise NotHomogeneous("term of weight %d in a weight-%d element" % (power + word_degree(word), d))
        c = coeff[j]
        if c:
            row[col_of[word]] = c
    return row


def intersect_with_h0(generators, d, hbar_lifts=True):
    """Intersection of the generator span with the z-word part at weight d.

    Orders coordinates with the non-z-part monomials first, row-reduces,
    and keeps the echelon rows supported entirely on the z-word block;
    those rows exactly span the intersection and are returned in reduced
    echelon form over the index coordinates.
    """
    basis = enumerate_basis(d)
    order = [i for i, f in enumerate(basis.h0_flags) if not f]
    h0_cols = [i for i, f in enumerate(basis.h0_flags) if f]
    order += h0_cols
    n_non = len(order) - len(h0_cols)
    int_rows = []
    for e in generators:
        coords = element_coordinates(e, basis)
        row = [coords[i] for i in order]
        if any(row):
            int_rows.append(_to_int_row(row))
    pivots = _int_echelon(int_rows, len(order))
    h0_rows = [pivots[c][n_non:] for c in sorted(pivots) if c >= n_non]
    reduced = rref(h0_rows)
    index_basis = tuple(word_to_index(basis.monomials[i][1]) for i in h0_cols)
    return RelationBasis(d, hbar_lifts, index_basis, reduced)


def relation_basis(d, include_hbar_lifts=True, caches=None):
    """The full pipeline at weight d: generators, intersection, index rows."""
    gens = gen_double_shuffle(d, caches) + gen_resummation(d, include_hbar_lifts)
    return intersect_with_h0(gens, d, include_hbar_lifts)


def in_row_space(e, generators, d):
    """Exact membership of a weight-d element in the rational generator span."""
    basis = enumerate_basis(d)
    rows = []
    for g in generators:
        coords = element_coordinates(g, basis)
        if any(coords):
            rows.append(_to_int_row(coords))
    pivots = _int_echelon(rows, len(basis.monomials))
    row = _to_int_row(element_coordinates(e, basis))
    col = _first_nonzero(row, 0)
    while col is not None:
        piv = pivots.get(col)
        if piv is None:
            return False
        a, b = row[col], piv[col]
        g = gcd(a, b)
        row = _strip_content([(b // g) * x - (a // g) * y for x, y in zip(row, piv)])
        col = _first_nonzero(row, col + 1)
    return True


@dataclass(frozen=True)
class DimRow:
    """One column of the dimension table."""

    weight: int
    index_count: int
    dim_n: int
    implied_bound: int


def dims_table(max_d, include_hbar_lifts=True, progress=None):
    """Dimension table for weights 2..max_d.

    Per weight: the number of admissible indices of weight <= d, the
    dimension of the relation space over those indices, and the implied
    upper bound (their difference) for the span of the series values.
    """
    if max_d < 2:
        raise ValueError("max weight must be >= 2")
    caches = {}
    out = []
    for d in range(2, max_d + 1):
        if progress is not None:
            progress("weight %d: building generators" % d)
        basis = relation_basis(d, include_hbar_lifts, caches)
        n_idx = len(basis.index_basis) - 1
        out.append(DimRow(d, n_idx, basis.dimension, n_idx - basis.dimension))
        if progress is not None:
            progress("weight %d: dim %d" % (d, basis.dimension))
    return out


def relation_basis_to_doc(basis):
    """Serialize to the interchange document (all rationals as strings)."""
    return {
        "weight": basis.weight,
        "mode": {"hbar_lifts": basis.hbar_lifts},
        "index_basis": [index_to_text(ix) for ix in basis.index_basis],
        "relations": [[str(c) for c in row] for row in basis.rows],
    }


def relation_basis_from_doc(doc):
    """Inverse of relation_basis_to_doc; validates shape and exact values."""
    try:
        weight = int(doc["weight"])
        lifts = bool(doc["mode"]["hbar_lifts"])
        index_basis = tuple(index_from_text(t) for t in doc["index_basis"])
        rows = tuple(tuple(Fraction(c) for c in row) for row in doc["relations"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError("malformed relation document: %s" % exc) from exc
    for row in rows:
        if len(row) != len(index_basis):
            raise ValueError("relation row length %d != index count %d" % (len(row), len(index_basis)))
    return RelationBasis(weight, lifts, index_basis, rows)


@dataclass(frozen=True)
class RowCheck:
    row: int
    value: float
    allowed: float
    ok: bool


@dataclass(frozen=True)
class VerifyReport:
    weight: int
    max_abs: float
    all_ok: bool
    rows: tuple


def verify_numeric(basis, ctx):
    """Evaluate every relation row against the normalized series values.

    Each row must vanish within the context tolerance plus the combined,
    weight-normalized tail bounds of the indices it touches.
    """
    values = {}
    tails = {}
    for ix in basis.index_basis:
        res = zbar_q(Element.from_word(ix), ctx)
        values[ix] = res.value
        tails[ix] = res.tail_bound
    checks = []
    max_abs = 0.0
    for rno, row in enumerate(basis.rows):
        val = 0
        allowed = ctx.tol
        for c, ix in zip(row, basis.index_basis):
            if c:
                val += float(c) * values[ix]
                allowed += abs(float(c)) * tails[ix]
        dev = abs(val)
        max_abs = max(max_abs, dev)
        checks.append(RowCheck(rno, dev, allowed, dev <= allowed))
    return VerifyReport(basis.weight, max_abs, all(c.ok for c in checks), tuple(checks))
