"""Bi-quadratic final polynomials: algebraic non-realizability certificates.

Every 3-term exchange relation of a chirotope splits, by its known signs,
into one "large" product of two brackets equal to the sum of the two other
products.  Taking logarithms of the bracket magnitudes gives two linear
inequalities per relation:

    y[m1] + y[m2] - y[a1] - y[a2] >= 1   (after scaling the strict > 0)

A realization would provide a solution y; if the system is infeasible the
chirotope has no realization, and the exact Farkas multipliers returned by
the rational simplex are the final polynomial's exponents.  Certificates
re-verify with exact arithmetic only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .chirotope import BASIS_INDEX, Chirotope, N_BASES
from .exactlp import farkas_certificate, verify_farkas

LABELS = range(1, 9)


def _product_sign_and_bases(chi: Chirotope, sigma, pair_a, pair_b):
    b1 = tuple(sorted(sigma + pair_a))
    b2 = tuple(sorted(sigma + pair_b))
    s = chi.sign(*sigma, *pair_a) * chi.sign(*sigma, *pair_b)
    return s, BASIS_INDEX[b1], BASIS_INDEX[b2]


def biquadratic_rows(chi: Chirotope):
    """Sparse inequality rows over the 70 log-bracket variables.

    One row per (sigma, quadruple, majority addend): +1 on the two bases of
    the minority product, -1 on the two bases of one majority product.
    Rows are keyed (sigma, quad, j) with j the majority addend index.
    """
    rows = []
    keys = []
    for sigma in combinations(LABELS, 2):
        rest = [x for x in LABELS if x not in sigma]
        for quad in combinations(rest, 4):
            e1, e2, e3, e4 = quad
            terms = []
            for j, (pa, pb) in enumerate(
                (((e1, e2), (e3, e4)), ((e1, e3), (e2, e4)), ((e1, e4), (e2, e3)))
            ):
                s, i1, i2 = _product_sign_and_bases(chi, sigma, pa, pb)
                addend = -s if j == 1 else s  # middle term of the relation is negated
                terms.append((addend, i1, i2))
            signs = [t[0] for t in terms]
            minority_sign = -1 if signs.count(1) == 2 else 1
            m = signs.index(minority_sign)
            _, m1, m2 = terms[m]
            for j in range(3):
                if j == m:
                    continue
                _, a1, a2 = terms[j]
                row: dict[int, Fraction] = {}
                for c, delta in ((m1, 1), (m2, 1), (a1, -1), (a2, -1)):
                    row[c] = row.get(c, Fraction(0)) + delta
                rows.append({c: v for c, v in row.items() if v != 0})
                keys.append((sigma, quad, j))
    return rows, keys


@dataclass
class FinalPolynomialCertificate:
    chirotope: Chirotope
    multipliers: list[Fraction]  # one per biquadratic row, mostly zero

    def nonzero(self):
        _, keys = biquadratic_rows(self.chirotope)
        return [
            (keys[i], m) for i, m in enumerate(self.multipliers) if m != 0
        ]

    def verify(self) -> bool:
        rows, _ = biquadratic_rows(self.chirotope)
        return verify_farkas(rows, self.multipliers, N_BASES)

    def to_dict(self) -> dict:
        return {
            "chirotope": self.chirotope.to_string(),
            "multipliers": {
                str(i): str(m) for i, m in enumerate(self.multipliers) if m != 0
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FinalPolynomialCertificate":
        chi = Chirotope.from_string(d["chirotope"])
        rows, _ = biquadratic_rows(chi)
        mult = [Fraction(0)] * len(rows)
        for i, m in d["multipliers"].items():
            mult[int(i)] = Fraction(m)
        return cls(chi, mult)


def _float_farkas(rows) -> list[Fraction] | str:
    """HiGHS screen for the dual system; returns rationalized multipliers,
    'feasible' when the primal log-bracket system looks feasible, or
    'unknown' when the float answer cannot be trusted."""
    try:
        import numpy as np
        from scipy.optimize import linprog
    except ImportError:  # pragma: no cover
        return "unknown"
    m = len(rows)
    a_eq = np.zeros((N_BASES + 1, m))
    for j, row in enumerate(rows):
        for c, v in row.items():
            a_eq[c, j] = float(v)
        a_eq[N_BASES, j] = 1.0
    b_eq = np.zeros(N_BASES + 1)
    b_eq[N_BASES] = 1.0
    res = linprog(np.zeros(m), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if res.status == 2:
        return "feasible"
    if not res.success:
        return "unknown"
    out = []
    for x in res.x:
        out.append(Fraction(float(x)).limit_denominator(10**6))
    return out


def find_final_polynomial(
    chi: Chirotope, prescreen: bool = True
) -> FinalPolynomialCertificate | None:
    """Exact-certified final polynomial, or None when the log-bracket system
    is feasible (realizability stays undecided).

    The float prescreen only short-circuits the no-certificate answer,
    which carries no proof obligation; every returned certificate passes
    the exact Farkas recheck, found either by rationalizing the float dual
    or by the rational simplex.
    """
    rows, _ = biquadratic_rows(chi)
    if prescreen:
        screened = _float_farkas(rows)
        if screened == "feasible":
            return None
        if isinstance(screened, list):
            cert = FinalPolynomialCertificate(chi, screened)
            if cert.verify():
                return cert
    lam = farkas_certificate(rows, N_BASES)
    if lam is None:
        return None
    cert = FinalPolynomialCertificate(chi, lam)
    if not cert.verify():
        raise AssertionError("Farkas certificate failed exact re-verification")
    return cert
