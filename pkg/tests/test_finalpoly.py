from fractions import Fraction

from hextet.exactgeom import chirotope_of_points
from hextet.finalpoly import (
    FinalPolynomialCertificate,
    biquadratic_rows,
    find_final_polynomial,
)


def _moment_curve_chirotope():
    pts = {i + 1: (Fraction(t), Fraction(t) ** 2, Fraction(t) ** 3)
           for i, t in enumerate(range(8))}
    return chirotope_of_points(pts)


def test_row_shape():
    rows, keys = biquadratic_rows(_moment_curve_chirotope())
    assert len(rows) == 28 * 15 * 2
    assert len(keys) == len(rows)
    for row in rows[:50]:
        assert sum(1 for v in row.values() if v > 0) == 2
        assert sum(1 for v in row.values() if v < 0) == 2


def test_realizable_chirotope_has_no_certificate():
    assert find_final_polynomial(_moment_curve_chirotope()) is None


def test_certificate_for_hull_constrained_13AA(catalog_by_id):
    from hextet.realize import admissible_chirotopes

    e = catalog_by_id["13_AA"]
    chis = list(admissible_chirotopes(e.tets, convex=True, hull_boundary=True, limit=8))
    assert len(chis) == 1
    cert = find_final_polynomial(chis[0])
    assert cert is not None
    assert cert.verify()


def test_certificate_serialization_round_trip(store):
    import json

    path = store.get("certificates-convex")
    data = json.loads(path.read_text())
    assert len(data) >= 1
    for d in data:
        cert = FinalPolynomialCertificate.from_dict(d)
        assert cert.verify()
        again = FinalPolynomialCertificate.from_dict(cert.to_dict() | {"classId": "x"})
        assert again.verify()


def test_tampered_certificate_fails(store):
    import json

    path = store.get("certificates-convex")
    d = json.loads(path.read_text())[0]
    cert = FinalPolynomialCertificate.from_dict(d)
    bad = FinalPolynomialCertificate(cert.chirotope, list(cert.multipliers))
    i = next(i for i, m in enumerate(bad.multipliers) if m != 0)
    bad.multipliers[i] += Fraction(1, 3)
    assert not bad.verify()
    zeroed = FinalPolynomialCertificate(cert.chirotope, [Fraction(0)] * len(cert.multipliers))
    assert not zeroed.verify()
