"""Rank-4 uniform chirotopes on 8 points.

A chirotope assigns +1 or -1 to each of the 70 sorted 4-subsets of 1..8
and extends to arbitrary orderings by the alternating rule.  Circuits of
5-subsets, the 3-term exchange condition and acyclicity are computed here;
they drive both the SAT encoding and the independent validation of solver
output.
"""

from __future__ import annotations

from itertools import combinations

BASES: tuple[tuple[int, int, int, int], ...] = tuple(combinations(range(1, 9), 4))
BASIS_INDEX = {b: i for i, b in enumerate(BASES)}
N_BASES = len(BASES)

FIVE_SUBSETS: tuple[tuple[int, ...], ...] = tuple(combinations(range(1, 9), 5))


def perm_parity(seq) -> int:
    """+1 for an even permutation of its sorted order, -1 for odd."""
    inv = 0
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


class Chirotope:
    """Sign vector over the 70 sorted bases, alternating on lookups."""

    __slots__ = ("signs",)

    def __init__(self, signs):
        signs = tuple(int(s) for s in signs)
        if len(signs) != N_BASES or any(s not in (-1, 1) for s in signs):
            raise ValueError("need 70 signs, each +-1 (uniform chirotope)")
        self.signs = signs

    def __eq__(self, other):
        return isinstance(other, Chirotope) and self.signs == other.signs

    def __hash__(self):
        return hash(self.signs)

    def __repr__(self):
        return f"Chirotope({self.to_string()!r})"

    def sign(self, a, b, c, d) -> int:
        """Chirotope value on the ordered tuple (a, b, c, d)."""
        t = (a, b, c, d)
        return perm_parity(t) * self.signs[BASIS_INDEX[tuple(sorted(t))]]

    def sign_sorted(self, basis) -> int:
        return self.signs[BASIS_INDEX[basis]]

    def negate(self) -> "Chirotope":
        return Chirotope(tuple(-s for s in self.signs))

    def relabel(self, g) -> "Chirotope":
        """Chirotope of the relabeled points q_v = p_{g^{-1}(v)}."""
        inv = [0] * 9
        for v in range(1, 9):
            inv[g[v]] = v
        out = []
        for b in BASES:
            pre = tuple(inv[v] for v in b)
            out.append(perm_parity(pre) * self.signs[BASIS_INDEX[tuple(sorted(pre))]])
        return Chirotope(out)

    def to_string(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    @classmethod
    def from_string(cls, s: str) -> "Chirotope":
        return cls(tuple(1 if ch == "+" else -1 for ch in s))


def circuit_signs(chi: Chirotope, five) -> tuple[int, ...]:
    """Per-element signs of the circuit of a sorted 5-subset.

    Element a_i (1-based position i) gets (-1)^i * chi(five minus a_i);
    the two sign groups are the Radon partition of the 5 points.
    """
    five = tuple(five)
    out = []
    for j in range(5):
        rest = five[:j] + five[j + 1 :]
        f = -1 if j % 2 == 0 else 1  # (-1)^(j+1) for 1-based position j+1
        out.append(f * chi.sign_sorted(rest))
    return tuple(out)


def circuit(chi: Chirotope, five) -> tuple[frozenset[int], frozenset[int]]:
    """Radon partition (X+, X-) of a 5-subset, canonicalized so the
    smallest element lands in X+."""
    five = tuple(sorted(five))
    s = circuit_signs(chi, five)
    if s[0] < 0:
        s = tuple(-x for x in s)
    plus = frozenset(five[j] for j in range(5) if s[j] > 0)
    minus = frozenset(five[j] for j in range(5) if s[j] < 0)
    return plus, minus


def exchange_violation(chi: Chirotope):
    """First (sigma, quadruple) violating the 3-term exchange condition."""
    labels = range(1, 9)
    for sigma in combinations(labels, 2):
        rest = [x for x in labels if x not in sigma]
        for e1, e2, e3, e4 in combinations(rest, 4):
            t1 = chi.sign(*sigma, e1, e2) * chi.sign(*sigma, e3, e4)
            t2 = chi.sign(*sigma, e1, e3) * chi.sign(*sigma, e2, e4)
            t3 = chi.sign(*sigma, e1, e4) * chi.sign(*sigma, e2, e3)
            # addend signs of the Grassmann-Pluecker relation t1 - t2 + t3
            if t1 == -t2 == t3:
                return sigma, (e1, e2, e3, e4)
    return None


def acyclicity_violation(chi: Chirotope):
    """A 5-subset carrying a positive circuit, if any."""
    for five in FIVE_SUBSETS:
        s = circuit_signs(chi, five)
        if all(x > 0 for x in s) or all(x < 0 for x in s):
            return five
    return None


def check_chirotope(chi: Chirotope) -> bool:
    """Exchange condition and acyclicity (uniform and alternating hold by
    construction of the data type)."""
    return exchange_violation(chi) is None and acyclicity_violation(chi) is None
