import pytest

from socle_lab.catalog import named_group
from socle_lab.errors import InvalidAutomorphism, InvalidRelation, SingularSystem
from socle_lab.extensions import (
    Automorphism,
    ExtensionInstance,
    GaloisData,
    disjointness_check,
    leading_coeff_certificate,
    peel_leading_terms,
    socle_rank,
    vandermonde_coordinates,
)
from socle_lab.parsing import parse_field

BIQUAD = parse_field("Q(a:x^2-2)(b:x^2-3)")
A, B = BIQUAD.gen("a"), BIQUAD.gen("b")


def biquad_galois():
    maps = [Automorphism(BIQUAD, [s * A, e * B]) for s in (1, -1) for e in (1, -1)]
    return GaloisData.from_automorphisms(maps)


def test_biquadratic_disjointness():
    gd = biquad_galois()
    assert gd.group.order == 4 and gd.group.is_abelian
    res = disjointness_check(ExtensionInstance(BIQUAD, [A], [B], gd))
    assert res.as_tuple() == (2, 2, 4, True)
    assert res.galois_cross_check is True
    same = disjointness_check(ExtensionInstance(BIQUAD, [A], [A * B * B], gd))
    assert same.as_tuple() == (2, 2, 2, False)


def test_fixed_space_and_fixing_subgroup():
    gd = biquad_galois()
    H = gd.fixing([A * B])
    assert H.order == 2
    fixed = gd.fixed_space(H)
    assert len(fixed) == 2
    for x in fixed:
        assert all(gd.maps[g](x) == x for g in H.members)


def test_automorphism_validation():
    with pytest.raises(InvalidAutomorphism):
        Automorphism(BIQUAD, [A])
    with pytest.raises(InvalidAutomorphism):
        Automorphism(BIQUAD, [B, A])  # b^2 = 3, not 2
    with pytest.raises(InvalidAutomorphism):
        GaloisData.from_automorphisms([Automorphism(BIQUAD, [A, B]), Automorphism(BIQUAD, [-A, B]), Automorphism(BIQUAD, [A, -B])])


@pytest.mark.parametrize("name, p, expected", [("C4", 2, 1), ("C2xC2", 2, 2), ("S3", 3, 0), ("S3", 2, 1), ("C3xC3", 3, 2)])
def test_socle_rank_of_trivial_subgroup(name, p, expected):
    G = named_group(name)
    assert socle_rank(G, G.trivial, p) == expected
    assert socle_rank(G, G.whole, p) == 0


def test_vandermonde_recovers_coefficients():
    F = parse_field("F7")
    thetas = [F(c) for c in (1, 2, 3)]
    ell = [F(4), F(0), F(5)]
    images = [ell[0] + ell[1] * th + ell[2] * th**2 for th in thetas]
    assert vandermonde_coordinates(images, thetas) == ell
    with pytest.raises(SingularSystem):
        vandermonde_coordinates(images, [F(1), F(1), F(2)])


def test_leading_coefficient_certificate():
    # phi = a t + 1 satisfies phi^2 - 2 phi + (1 - 2 t^2) = 0 over Q[t]
    phi = [BIQUAD.one, A]
    rel = [[1, 0, -2], [-2], [1]]
    cert = leading_coeff_certificate(phi, rel)
    assert cert.alpha == A and cert.evaluate().is_zero()
    assert not cert.preprocessed
    certs = peel_leading_terms(phi, rel)
    assert [c.alpha for c in certs] == [A, BIQUAD.one]


def test_leading_certificate_with_nonmonic_relation():
    # (t+1) phi - a t (t+1) = 0 gives phi = a t; f_n has positive degree
    phi = [BIQUAD.zero, A]
    rel = [[0, -A, -A], [1, 1]]
    L = BIQUAD
    cert = leading_coeff_certificate(phi, [[L(c) for c in f] for f in rel])
    assert cert.preprocessed and cert.evaluate().is_zero()


def test_invalid_relations():
    phi = [BIQUAD.one, A]
    with pytest.raises(InvalidRelation):
        leading_coeff_certificate(phi, [[1], [1]])
    with pytest.raises(InvalidRelation):
        leading_coeff_certificate(phi, [[1]])
