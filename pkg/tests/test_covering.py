import random
from fractions import Fraction

import pytest

from fqcover import (
    CoveringSystem,
    FieldSpec,
    Poly,
    Progression,
    covers,
    density_sum,
    is_distinct,
    lcm_modulus,
    multiplicity,
    parse_poly,
    parse_system,
    search_distinct,
)
from fqcover.covering import (
    format_system,
    random_system,
    system_digest,
    system_to_json,
)
from fqcover.errors import (
    DegreeZeroError,
    ExhaustiveLimitExceededError,
    NotMonicError,
    PolyParseError,
)
from fqcover.algebra import format_poly


def sys_of(field, *pairs):
    return CoveringSystem(
        field,
        [Progression(parse_poly(a, field), parse_poly(d, field)) for a, d in pairs],
    )


# -- structure -----------------------------------------------------------------


def test_progression_reduces_offset(F2):
    pr = Progression(parse_poly("x^2+x+1", F2), parse_poly("x^2", F2))
    assert format_poly(pr.offset) == "x+1"


def test_progression_validation(F2, F3):
    with pytest.raises(DegreeZeroError):
        Progression(Poly.zero(F2), Poly.one(F2))
    with pytest.raises(NotMonicError):
        Progression(Poly.zero(F3), Poly(F3, (0, 2)))


def test_multiplicity_examples(F2):
    assert multiplicity(sys_of(F2, ("0", "x"), ("1", "x"))) == 2
    assert multiplicity(sys_of(F2, ("0", "x"), ("1", "x^2"))) == 1
    assert multiplicity(sys_of(F2, ("0", "x"), ("1", "x^2"), ("x+1", "x^2"))) == 2


def test_is_distinct_examples(F2):
    assert is_distinct(sys_of(F2, ("0", "x"), ("1", "x^2")))
    assert not is_distinct(sys_of(F2, ("0", "x"), ("1", "x")))
    assert is_distinct(sys_of(F2, ("0", "x")))


def test_lcm_examples(F2):
    assert format_poly(lcm_modulus(sys_of(F2, ("0", "x"), ("1", "x")))) == "x"
    assert (
        format_poly(lcm_modulus(sys_of(F2, ("0", "x"), ("1", "x^2"), ("x+1", "x^2"))))
        == "x^2"
    )
    assert format_poly(lcm_modulus(sys_of(F2, ("0", "x"), ("0", "x+1")))) == "x^2+x"


def test_density_examples(F2):
    assert density_sum(sys_of(F2, ("0", "x"), ("1", "x"))) == 1
    assert density_sum(sys_of(F2, ("0", "x"), ("1", "x^2"), ("x+1", "x^2"))) == 1
    assert density_sum(sys_of(F2, ("1", "x^2"))) == Fraction(1, 4)


# -- coverage oracle ---------------------------------------------------------------


def test_covers_examples(F2):
    rep = covers(sys_of(F2, ("0", "x"), ("1", "x")))
    assert rep.covers and rep.witness is None

    rep = covers(sys_of(F2, ("1", "x")))
    assert not rep.covers
    assert rep.witness == Poly.zero(F2)

    rep = covers(sys_of(F2, ("0", "x"), ("1", "x^2"), ("x+1", "x^2")))
    assert rep.covers
    assert rep.residues_checked == 4


def test_covers_limit(F2):
    big = sys_of(F2, ("0", "x^9"))
    with pytest.raises(ExhaustiveLimitExceededError):
        covers(big, limit_bits=8)
    assert covers(big, limit_bits=9).covers is False


def test_witness_is_canonical_least(F3):
    # only residue 0 mod x is uncovered; canonical least uncovered is 0
    rep = covers(sys_of(F3, ("1", "x"), ("2", "x")))
    assert rep.witness == Poly.zero(F3)
    # cover 0 and 1, leave 2: witness should be the constant 2
    rep = covers(sys_of(F3, ("0", "x"), ("1", "x")))
    assert format_poly(rep.witness) == "2"


def test_witness_canonical_order_prefers_low_constant_term(F2):
    # uncovered residues mod x^2: x and x+1; canonical order puts x first
    rep = covers(sys_of(F2, ("0", "x^2"), ("1", "x^2")))
    assert format_poly(rep.witness) == "x"


def test_witness_not_in_any_progression_randomized():
    rng = random.Random(101)
    for field in [FieldSpec(2), FieldSpec(3)]:
        for _ in range(300):
            system = random_system(field, rng, max_lcm_degree=7)
            rep = covers(system)
            if rep.witness is not None:
                assert not any(pr.contains(rep.witness) for pr in system)


def test_monotonicity_randomized():
    # adding a progression never turns covers=true into covers=false
    rng = random.Random(55)
    checked = 0
    for field in [FieldSpec(2), FieldSpec(3)]:
        for _ in range(500):
            system = random_system(field, rng, max_lcm_degree=6)
            base = covers(system)
            divs = [pr.modulus for pr in system]
            extra = Progression(
                Poly(field, [rng.randrange(field.q)]), rng.choice(divs)
            )
            grown = CoveringSystem(field, list(system.progressions) + [extra])
            bigger = covers(grown)
            if base.covers:
                assert bigger.covers
            checked += 1
    assert checked == 1000


def test_density_below_one_never_covers():
    rng = random.Random(77)
    for field in [FieldSpec(2), FieldSpec(3)]:
        for _ in range(500):
            system = random_system(field, rng, max_lcm_degree=7)
            if density_sum(system) < 1:
                assert not covers(system).covers


# -- search -------------------------------------------------------------------------


def test_search_absent_by_density(F2):
    assert search_distinct(F2, 1, parse_poly("x^2", F2)) is None
    assert search_distinct(F2, 2, parse_poly("x^2", F2)) is None


def test_search_finds_cover(F2):
    bound = parse_poly("x^3+x^2", F2)  # x^2 (x+1)
    system = search_distinct(F2, 1, bound)
    assert system is not None
    assert covers(system).covers
    assert is_distinct(system)
    assert min(int(pr.modulus.degree) for pr in system) >= 1
    for pr in system:
        assert pr.modulus.divides(bound)


def test_search_respects_min_degree(F2):
    bound = parse_poly("x^3+x^2", F2)
    system = search_distinct(F2, 2, bound)
    # moduli of degree >= 2 dividing x^2(x+1): x^2, x^2+x, x^3+x^2; density 3/4 < 1
    assert system is None


def test_search_bound_validation(F2):
    with pytest.raises(NotMonicError):
        search_distinct(FieldSpec(3), 1, Poly(FieldSpec(3), (0, 2)))
    with pytest.raises(DegreeZeroError):
        search_distinct(F2, 1, Poly.one(F2))


# -- text and JSON round trips ---------------------------------------------------------


def test_parse_system_roundtrip(F2):
    text = "# demo\nq=2\n0 | x\n1 | x^2  # inline comment\n"
    system = parse_system(text)
    assert len(system) == 2
    assert parse_system(format_system(system)) == system


def test_parse_system_extension():
    text = "q=2^2;modulus=t^2+t+1\n(1,0) | x^2+(1,1)x+1\n"
    system = parse_system(text)
    assert system.field.q == 4
    assert parse_system(format_system(system)) == system


def test_parse_system_errors():
    with pytest.raises(PolyParseError):
        parse_system("")
    with pytest.raises(PolyParseError):
        parse_system("q=six\n0 | x\n")
    with pytest.raises(PolyParseError):
        parse_system("q=2\n0 x\n")


def test_digest_and_json_stability(F2):
    system = sys_of(F2, ("0", "x"), ("1", "x^2"))
    assert system_digest(system) == system_digest(parse_system(format_system(system)))
    assert system_to_json(system) == system_to_json(system)


def test_sorted_by_modulus_then_offset(F2):
    system = sys_of(F2, ("1", "x^2"), ("0", "x"), ("x", "x^2"))
    mods = [format_poly(pr.modulus) for pr in system]
    assert mods == ["x", "x^2", "x^2"]
    offs = [format_poly(pr.offset) for pr in system.progressions[1:]]
    assert offs == ["1", "x"]  # constant term compared first
