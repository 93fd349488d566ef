import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqcover import (
    FieldSpec,
    Poly,
    crt,
    enumerate_irreducibles,
    enumerate_monic,
    factor,
    format_poly,
    is_irreducible,
    parse_poly,
    poly_gcd,
    poly_lcm,
)
from fqcover.algebra import NEG_INF, canonical_key, divisors, poly_from_index, poly_to_index
from fqcover.errors import (
    CoefficientOutOfRangeError,
    CompositeCharacteristicError,
    DegreeZeroError,
    NonCoprimeModuliError,
    NotMonicError,
    PolyParseError,
    ReducibleModulusError,
    UnsupportedFieldSizeError,
    ZeroPolynomialError,
)
from helpers import brute_crt_solutions, random_poly

# -- fields -------------------------------------------------------------------


def test_prime_field():
    f = FieldSpec(2)
    assert (f.p, f.e, f.q) == (2, 1, 2)


def test_extension_field_with_modulus():
    # t^2+t+1 has no root in F_2, so it is irreducible and F_4 is valid
    f = FieldSpec(2, 2, (1, 1, 1))
    assert f.q == 4
    t = 2  # code of the generator
    assert f.mul(t, t) == f.add(t, 1)  # t^2 = t + 1


def test_composite_characteristic_rejected():
    with pytest.raises(CompositeCharacteristicError):
        FieldSpec(4)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulusError):
        FieldSpec(2, 2, (1, 0, 1))  # t^2+1 = (t+1)^2


def test_builtin_moduli_cover_small_sizes():
    for p, e in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)]:
        f = FieldSpec(p, e)
        assert f.q == p**e


def test_unsupported_extension_needs_modulus():
    with pytest.raises(UnsupportedFieldSizeError):
        FieldSpec(3, 4)  # q = 81 > 64, no built-in table entry


@pytest.mark.parametrize("p,e", [(2, 2), (3, 2), (2, 3)])
def test_field_axioms_exhaustive(p, e):
    f = FieldSpec(p, e)
    els = list(f.elements())
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a in els:
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)


# -- parsing / formatting -------------------------------------------------------


def test_parse_examples(F2):
    assert parse_poly("x^2+x+1", F2).coeffs == (1, 1, 1)
    assert parse_poly("0", F2).is_zero
    assert parse_poly("x", F2).coeffs == (0, 1)
    assert parse_poly(" x ^ 2 + 1 ", F2).coeffs == (1, 0, 1)


def test_parse_coefficient_out_of_range(F2):
    with pytest.raises(CoefficientOutOfRangeError):
        parse_poly("2x+1", F2)


def test_parse_garbage_rejected(F2):
    for text in ["", "x^", "^2", "x+", "y+1", "x^2a"]:
        with pytest.raises(PolyParseError):
            parse_poly(text, F2)


def test_parse_extension_tuples(F4):
    f = parse_poly("(1,0)x^2+(1,1)", F4)
    assert f.coeffs == (3, 0, 2)  # codes: (1,1) -> t+1 = 3, (1,0) -> t = 2
    assert parse_poly(format_poly(f), F4) == f


def test_format_examples(F2):
    assert format_poly(parse_poly("x^2+x+1", F2)) == "x^2+x+1"
    assert format_poly(Poly.zero(F2)) == "0"
    assert format_poly(Poly.one(F2)) == "1"
    assert format_poly(Poly.x(F2)) == "x"


def test_roundtrip_randomized():
    rng = random.Random(20260809)
    fields = [FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(2, 2), FieldSpec(3, 2)]
    for _ in range(10_000):
        field = rng.choice(fields)
        f = random_poly(field, rng, 9)
        assert parse_poly(format_poly(f), field) == f


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=2), max_size=10))
def test_roundtrip_hypothesis_f3(coeffs):
    field = FieldSpec(3)
    f = Poly(field, coeffs + [1])
    assert parse_poly(format_poly(f), field) == f


# -- ring operations -------------------------------------------------------------


def test_char2_square(F2):
    x1 = parse_poly("x+1", F2)
    assert format_poly(x1 * x1) == "x^2+1"


def test_divmod_examples(F2):
    q, r = divmod(parse_poly("x^2+x", F2), Poly.x(F2))
    assert (format_poly(q), r.is_zero) == ("x+1", True)
    # long division by hand: x^2+x+1 = (x+1)*x + 1
    q, r = divmod(parse_poly("x^2+x+1", F2), parse_poly("x+1", F2))
    assert format_poly(q) == "x"
    assert format_poly(r) == "1"


def test_divmod_by_zero(F2):
    with pytest.raises(ZeroDivisionError):
        divmod(Poly.x(F2), Poly.zero(F2))


def test_divmod_exhaustive_f2(F2):
    polys = [poly_from_index(F2, i) for i in range(2**9)]  # all deg <= 8
    for g in polys:
        if g.is_zero:
            continue
        for f in polys:
            q, r = divmod(f, g)
            assert q * g + r == f
            assert r.is_zero or r.degree < g.degree


def test_zero_degree_and_norm(F2):
    z = Poly.zero(F2)
    assert z.degree == NEG_INF
    with pytest.raises(ZeroPolynomialError):
        _ = z.norm
    assert parse_poly("x^3", F2).norm == 8


def test_ring_axioms_randomized():
    rng = random.Random(7)
    for field in [FieldSpec(2), FieldSpec(3), FieldSpec(2, 2)]:
        for _ in range(300):
            a, b, c = (random_poly(field, rng, 6) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a - b) + b == a


# -- gcd / lcm --------------------------------------------------------------------


def test_gcd_examples(F2):
    assert format_poly(poly_gcd(parse_poly("x^2+x", F2), Poly.x(F2))) == "x"
    assert format_poly(poly_gcd(Poly.zero(F2), parse_poly("x+1", F2))) == "x+1"
    assert format_poly(poly_lcm(Poly.x(F2), parse_poly("x+1", F2))) == "x^2+x"


def test_gcd_lcm_contracts():
    rng = random.Random(11)
    for field in [FieldSpec(2), FieldSpec(3)]:
        for _ in range(300):
            f = random_poly(field, rng, 6)
            g = random_poly(field, rng, 6)
            if f.is_zero and g.is_zero:
                continue
            d = poly_gcd(f, g)
            assert d.is_monic
            for h in (f, g):
                if not h.is_zero:
                    assert (h % d).is_zero
            if not f.is_zero and not g.is_zero:
                m = poly_lcm(f, g)
                assert m.is_monic
                assert (m % f.monic()).is_zero and (m % g.monic()).is_zero
                assert m * d == (f * g).monic()


def test_lcm_zero_argument(F2):
    with pytest.raises(ZeroDivisionError):
        poly_lcm(Poly.zero(F2), Poly.x(F2))


# -- irreducibility and factorization ----------------------------------------------


def test_irreducible_examples(F2):
    assert is_irreducible(parse_poly("x^2+x+1", F2))
    assert not is_irreducible(parse_poly("x^2+1", F2))  # (x+1)^2
    assert is_irreducible(Poly.x(F2))


def test_irreducible_preconditions(F2):
    with pytest.raises(DegreeZeroError):
        is_irreducible(Poly.one(F2))
    f3 = FieldSpec(3)
    with pytest.raises(NotMonicError):
        is_irreducible(Poly(f3, (0, 2)))


def test_factor_examples(F2):
    x = Poly.x(F2)
    x1 = parse_poly("x+1", F2)
    fac = factor(parse_poly("x^2+x", F2))
    assert fac.factors == ((x, 1), (x1, 1))
    fac = factor(parse_poly("x^2+x+1", F2))
    assert fac.factors == ((parse_poly("x^2+x+1", F2), 1),)
    fac = factor(parse_poly("x^4+x^2", F2))
    assert fac.factors == ((x, 2), (x1, 2))


def test_factor_zero(F2):
    with pytest.raises(ZeroPolynomialError):
        factor(Poly.zero(F2))


@pytest.mark.parametrize("spec", [(2, 1), (3, 1), (2, 2)])
def test_factor_reconstruction_exhaustive(spec):
    field = FieldSpec(*spec)
    for degree in range(1, 9):
        for f in enumerate_monic(field, degree):
            fac = factor(f)
            assert fac.unit == 1
            assert fac.expand(field) == f
            for p, _ in fac.factors:
                assert is_irreducible(p)
            for (p1, _), (p2, _) in zip(fac.factors, fac.factors[1:]):
                assert canonical_key(p1) < canonical_key(p2)


# -- enumeration --------------------------------------------------------------------


def test_enumerate_monic_examples(F2, F3):
    assert [format_poly(f) for f in enumerate_monic(F2, 1)] == ["x", "x+1"]
    assert [format_poly(f) for f in enumerate_monic(F2, 0)] == ["1"]
    assert len(enumerate_monic(F3, 1)) == 3
    assert len(enumerate_monic(F3, 3)) == 27


def test_enumerate_irreducibles_examples(F2):
    assert [format_poly(f) for f in enumerate_irreducibles(F2, 1)] == ["x", "x+1"]
    assert [format_poly(f) for f in enumerate_irreducibles(F2, 2)] == ["x^2+x+1"]
    assert len(enumerate_irreducibles(F2, 3)) == 2


def test_divisors(F2):
    divs = divisors(parse_poly("x^2+x", F2))
    assert [format_poly(d) for d in divs] == ["1", "x", "x+1", "x^2+x"]


# -- chinese remaindering --------------------------------------------------------------


def test_crt_example(F2):
    x = Poly.x(F2)
    x1 = parse_poly("x+1", F2)
    res, mod = crt([(Poly.one(F2), x), (Poly.zero(F2), x1)])
    assert format_poly(mod) == "x^2+x"
    # enumeration oracle over the 4 residues mod x^2+x
    sols = brute_crt_solutions([(Poly.one(F2), x), (Poly.zero(F2), x1)], mod)
    assert sols == [res]
    assert format_poly(res) == "x+1"


def test_crt_single(F2):
    res, mod = crt([(Poly.zero(F2), Poly.x(F2))])
    assert res.is_zero and mod == Poly.x(F2)


def test_crt_non_coprime(F2):
    with pytest.raises(NonCoprimeModuliError):
        crt([(Poly.one(F2), Poly.x(F2)), (Poly.zero(F2), parse_poly("x^2", F2))])


def test_crt_not_monic(F3):
    with pytest.raises(NotMonicError):
        crt([(Poly.zero(F3), Poly(F3, (1, 2)))])


def test_crt_randomized():
    rng = random.Random(13)
    for field in [FieldSpec(2), FieldSpec(3)]:
        for _ in range(200):
            # build pairwise coprime monic moduli with product degree <= 12
            from fqcover.algebra import _irreducibles

            primes = list(_irreducibles(field, 1)) + list(_irreducibles(field, 2))
            rng.shuffle(primes)
            moduli = []
            total = 0
            for p in primes:
                e = rng.randint(1, 2)
                d = int(p.degree) * e
                if total + d > 12:
                    continue
                moduli.append(p**e)
                total += d
                if len(moduli) == 3:
                    break
            if not moduli:
                continue
            pairs = [
                (poly_from_index(field, rng.randrange(m.norm)), m) for m in moduli
            ]
            res, mod = crt(pairs)
            assert res.degree < mod.degree or res.is_zero
            for a, m in pairs:
                assert ((res - a) % m).is_zero
            # projecting a random residue and re-lifting is the identity
            r = poly_from_index(field, rng.randrange(mod.norm))
            lifted, _ = crt([(r % m, m) for m in moduli])
            assert lifted == r


# -- index encoding ----------------------------------------------------------------


def test_index_roundtrip():
    rng = random.Random(3)
    for field in [FieldSpec(2), FieldSpec(3), FieldSpec(2, 2)]:
        for _ in range(500):
            f = random_poly(field, rng, 8)
            assert poly_from_index(field, poly_to_index(f)) == f
