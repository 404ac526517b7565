"""Group spec mini-language: parsing, canonical printing, realization, roster."""

import numpy as np
import pytest

from compseries import DomainError, SpecParseError, parse_spec, print_spec, realize, realize_text
from compseries.catalog import (
    Abelian,
    Alternating,
    Cyclic,
    DirectProduct,
    ElemAbelian,
    abelian_prime_partitions,
    is_abelian_spec,
    is_cyclic_spec,
    is_elem_sylow_spec,
    standard_roster,
)
from compseries.errors import CapacityError


# ---------------------------------------------------------------------------
# parsing


def test_parse_cyclic():
    assert parse_spec("Z360") == Cyclic(360)


def test_parse_product_of_alternating():
    spec = parse_spec("A5xA5")
    assert spec == DirectProduct((Alternating(5), Alternating(5)))
    assert spec.order() == 3600


def test_parse_mixed_elementary_product():
    spec = parse_spec("E(2,4)xE(3,2)xE(5,2)")
    assert spec.order() == 3600
    assert is_abelian_spec(spec) and is_elem_sylow_spec(spec)


def test_parse_ignores_whitespace():
    assert parse_spec(" Z 12 ") == Cyclic(12)
    assert parse_spec("E( 2 , 3 ) x Z5") == parse_spec("E(2,3)xZ5")


def test_parse_abelian_partitions():
    spec = parse_spec("Ab(2^2+1;3^1)")
    assert spec == Abelian(((2, (2, 1)), (3, (1,))))
    assert spec.order() == 24


def test_parse_syntax_errors_carry_position():
    for text in ["", "Zx", "Z12x", "W5", "Ab()", "Ab(2^)"]:
        with pytest.raises(SpecParseError) as exc:
            parse_spec(text)
        assert exc.value.position is not None


def test_parse_unsupported_degrees_are_domain_errors():
    for text in ["S6", "A6", "S0", "D5", "D4", "E(4,2)", "Ab(6^2)"]:
        with pytest.raises(DomainError):
            parse_spec(text)


# ---------------------------------------------------------------------------
# canonical printing


def test_print_sorts_product_factors():
    assert print_spec(parse_spec("A5xZ2")) == "Z2xA5"
    # ties on order break on spec text: "E(2,2)" < "Z4"
    assert print_spec(parse_spec("S3xZ4xE(2,2)")) == "E(2,2)xZ4xS3"


def test_print_round_trip():
    for text in ["Z360", "A5xA5", "Ab(2^2+1;3^1)", "D12xQ8", "E(2,4)xE(3,2)xE(5,2)"]:
        spec = parse_spec(text)
        again = parse_spec(print_spec(spec))
        assert print_spec(again) == print_spec(spec)
        assert again.order() == spec.order()


# ---------------------------------------------------------------------------
# structural predicates


def test_is_abelian_spec():
    assert is_abelian_spec(parse_spec("Z12xE(3,2)"))
    assert is_abelian_spec(parse_spec("S2"))  # S2 is Z2
    assert not is_abelian_spec(parse_spec("S3"))
    assert not is_abelian_spec(parse_spec("Z5xQ8"))


def test_abelian_prime_partitions():
    assert abelian_prime_partitions(parse_spec("Ab(2^2+1;3^1)")) == {
        2: (2, 1),
        3: (1,),
    }
    assert abelian_prime_partitions(parse_spec("Z12")) == {2: (2,), 3: (1,)}
    assert abelian_prime_partitions(parse_spec("E(2,3)xZ9")) == {2: (1, 1, 1), 3: (2,)}
    with pytest.raises(DomainError):
        abelian_prime_partitions(parse_spec("S4"))


def test_is_cyclic_and_elem_sylow_predicates():
    assert is_cyclic_spec(parse_spec("Z360"))
    assert is_cyclic_spec(parse_spec("Z4xZ3"))  # coprime factors, still cyclic
    assert not is_cyclic_spec(parse_spec("E(2,2)"))
    assert is_elem_sylow_spec(parse_spec("E(2,3)xE(3,2)"))
    assert is_elem_sylow_spec(parse_spec("Z30"))  # squarefree order
    assert not is_elem_sylow_spec(parse_spec("Z4"))


# ---------------------------------------------------------------------------
# realization


def test_realize_cyclic_is_modular_addition():
    G = realize_text("Z12")
    ar = np.arange(12)
    assert np.array_equal(G.mult, (ar[:, None] + ar[None, :]) % 12)


def test_realize_orders():
    for text, order in [
        ("S4", 24),
        ("S5", 120),
        ("A4", 12),
        ("A5", 60),
        ("D12", 12),
        ("Q8", 8),
        ("E(3,3)", 27),
        ("Ab(2^2+1;3^1)", 24),
        ("S3xZ4", 24),
    ]:
        assert realize_text(text).order == order, text


def test_realize_dihedral_and_symmetric_nonabelian():
    assert not realize_text("D12").is_abelian
    assert not realize_text("S3").is_abelian
    assert not realize_text("Q8").is_abelian


def test_realize_q8_structure():
    G = realize_text("Q8")
    # exactly one element of order 2 (the central -1)
    order2 = [x for x in range(1, 8) if G.mult[x, x] == 0]
    assert len(order2) == 1
    # every subgroup of Q8 is normal
    from compseries import all_subgroups, is_normal

    assert all(is_normal(G, H) for H in all_subgroups(G))


def test_realize_abelian_specs_commute():
    for text in ["E(2,4)", "Ab(2^3+2)", "Z4xZ6", "E(3,2)xZ5"]:
        assert realize_text(text).is_abelian, text


def test_realize_product_order_is_lexicographic():
    G = realize_text("Z2xZ3")
    # element (i, j) sits at index 3*i + j; (1,0)*(0,1) = (1,1) -> index 4
    assert G.mult[3, 1] == 4


def test_realize_cap():
    with pytest.raises(CapacityError):
        realize_text("A5xA5", cap=100)


def test_realize_trivial_atoms():
    assert realize_text("Z1").order == 1
    assert realize_text("S1").order == 1
    assert realize_text("A2").order == 1
    assert realize_text("E(2,0)").order == 1


# ---------------------------------------------------------------------------
# roster


def test_roster_orders_match_arithmetic():
    roster = standard_roster(4096)
    assert len(roster) > 60
    for name, spec in roster:
        assert spec.order() <= 4096
        assert print_spec(spec) == name


def test_roster_realized_orders(roster_tables):
    for name, spec, G in roster_tables:
        assert G.order == spec.order(), name


def test_roster_contains_key_groups():
    names = {name for name, _ in standard_roster(4096)}
    assert {"E(2,6)", "E(2,8)", "S4", "S5", "A5", "Q8", "Z256"} <= names


def test_roster_max_order_filters():
    assert all(spec.order() <= 24 for _, spec in standard_roster(24))
