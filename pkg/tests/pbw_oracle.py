"""Brute-force graded dimensions of simple affine sl(2) modules.

Test fixture only.  Builds the Verma module over affine sl(2) at level k
in its PBW monomial basis (lowering operators f_0 and e_{-m}, h_{-m},
f_{-m} applied to the highest-weight vector), generates the maximal
proper submodule from its two singular vectors f_0^{lam+1}|lam> and
e_{-1}^{k-lam+1}|lam>, and reads off quotient dimensions per (conformal
grade, h-weight) by exact rank computation.  Slow and tiny on purpose:
an independent route to the same numbers as the resolution characters.
"""

from fractions import Fraction

_RANK = {"e": 0, "h": 1, "f": 2}
_WEIGHT = {"e": 2, "h": 0, "f": -2}


def _key(gen):
    letter, n = gen
    return (n, _RANK[letter])


def _is_lowering(gen):
    letter, n = gen
    return n < 0 or (n == 0 and letter == "f")


def _bracket(g1, g2, level):
    """[g1, g2] as a list of (coefficient, generator-or-None) terms,
    None marking the central element."""
    (l1, m), (l2, n) = g1, g2
    if l1 == l2 and l1 in ("e", "f"):
        return []
    if {l1, l2} == {"e", "f"}:
        sign = 1 if l1 == "e" else -1
        out = [(Fraction(sign), ("h", m + n))]
        if m + n == 0:
            lead = m if l1 == "e" else n
            out.append((Fraction(sign * level * lead), None))
        return [(c, g) for c, g in out if c != 0]
    if l1 == "h" and l2 == "h":
        if m + n == 0 and m != 0:
            return [(Fraction(2 * level * m), None)]
        return []
    if l1 == "h":
        factor = 2 if l2 == "e" else -2
        return [(Fraction(factor), (l2, m + n))]
    # l2 == 'h'
    factor = -2 if l1 == "e" else 2
    return [(Fraction(factor), (l1, m + n))]


class VermaOracle:
    """Exact normal-ordering engine for V(level, lam)."""

    def __init__(self, level, lam):
        self.level = level
        self.lam = lam
        self._memo = {}

    # -- action -----------------------------------------------------------

    def _apply_to_monomial(self, gen, mono):
        memo_key = (gen, mono)
        if memo_key in self._memo:
            return self._memo[memo_key]
        letter, n = gen
        if not mono:
            if n > 0 or (n == 0 and letter == "e"):
                result = {}
            elif n == 0 and letter == "h":
                result = {(): Fraction(self.lam)}
            else:
                result = {(gen,): Fraction(1)}
        elif _is_lowering(gen) and _key(gen) <= _key(mono[0]):
            result = {(gen,) + mono: Fraction(1)}
        else:
            head, rest = mono[0], mono[1:]
            result = {}
            moved = self._apply_to_monomial(gen, rest)
            for m2, c2 in moved.items():
                for m3, c3 in self._apply_to_monomial(head, m2).items():
                    result[m3] = result.get(m3, Fraction(0)) + c2 * c3
            for coeff, g2 in _bracket(gen, head, self.level):
                if g2 is None:
                    result[rest] = result.get(rest, Fraction(0)) + coeff
                else:
                    for m3, c3 in self._apply_to_monomial(g2, rest).items():
                        result[m3] = result.get(m3, Fraction(0)) + coeff * c3
            result = {m: c for m, c in result.items() if c != 0}
        self._memo[memo_key] = result
        return result

    def apply(self, gen, state):
        out = {}
        for mono, coeff in state.items():
            for m2, c2 in self._apply_to_monomial(gen, mono).items():
                out[m2] = out.get(m2, Fraction(0)) + coeff * c2
        return {m: c for m, c in out.items() if c != 0}

    def apply_word(self, word, state):
        """word = (g1, ..., gl) acting as the product g1 g2 ... gl."""
        for gen in reversed(word):
            state = self.apply(gen, state)
        return state

    # -- bases -------------------------------------------------------------

    def _negative_multisets(self, grade):
        """All canonical tuples of strictly-negative-mode generators with
        total conformal grade ``grade``."""
        gens = sorted(
            ((letter, -m) for m in range(1, grade + 1) for letter in "ehf"), key=_key
        )

        def rec(idx, remaining):
            if remaining == 0:
                yield ()
                return
            if idx == len(gens):
                return
            letter, mode = gens[idx]
            cost = -mode
            max_count = remaining // cost
            for count in range(max_count, -1, -1):
                for tail in rec(idx + 1, remaining - count * cost):
                    yield ((letter, mode),) * count + tail

        yield from rec(0, grade)

    def monomials(self, grade, weight_delta):
        """Canonical lowering monomials with the given conformal grade and
        h-weight change (f_0 count solved from the weight)."""
        out = []
        for neg in self._negative_multisets(grade):
            moved = sum(_WEIGHT[letter] for letter, _ in neg)
            twice_f0 = moved - weight_delta
            if twice_f0 < 0 or twice_f0 % 2 != 0:
                continue
            out.append(neg + (("f", 0),) * (twice_f0 // 2))
        return out

    def verma_dimension(self, grade, weight):
        return len(self.monomials(grade, weight - self.lam))

    # -- quotient dimensions --------------------------------------------------

    def _singular_vectors(self):
        sv1 = {(("f", 0),) * (self.lam + 1): Fraction(1)}
        g1 = (0, self.lam - 2 * (self.lam + 1))
        count = self.level - self.lam + 1
        sv2 = {(("e", -1),) * count: Fraction(1)}
        g2 = (count, self.lam + 2 * count)
        return [(sv1, g1), (sv2, g2)]

    def simple_dimension(self, grade, weight):
        """dim L(level, lam) at conformal grade ``grade`` and h-weight
        ``weight``: Verma dimension minus the rank of the submodule."""
        basis = self.monomials(grade, weight - self.lam)
        index = {mono: i for i, mono in enumerate(basis)}
        vectors = []
        for sv, (g0, w0) in self._singular_vectors():
            extra = grade - g0
            if extra < 0:
                continue
            for word in self.monomials(extra, weight - w0):
                state = self.apply_word(word, dict(sv))
                if state:
                    row = [Fraction(0)] * len(basis)
                    for mono, coeff in state.items():
                        row[index[mono]] = coeff
                    vectors.append(row)
        return len(basis) - _rank(vectors)

    def grade_row(self, grade):
        """Sparse {weight: dimension} map of L(level, lam) at a grade."""
        row = {}
        bound = self.lam + 2 * grade + 2
        for weight in range(-bound, bound + 1):
            if (weight - self.lam) % 2 != 0:
                continue
            dim = self.simple_dimension(grade, weight)
            if dim:
                row[weight] = dim
        return row


def _rank(rows):
    rows = [list(r) for r in rows if any(c != 0 for c in r)]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rows and col < ncols:
        pivot = next((i for i, r in enumerate(rows) if r[col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[0], rows[pivot] = rows[pivot], rows[0]
        lead = rows[0][col]
        head = rows[0]
        rest = []
        for r in rows[1:]:
            if r[col] != 0:
                factor = r[col] / lead
                r = [a - factor * b for a, b in zip(r, head)]
            if any(c != 0 for c in r):
                rest.append(r)
        rank += 1
        rows = rest
        col += 1
    return rank
