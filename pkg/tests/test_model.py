"""Domain records: contexts, problems, witnesses, validation, JSON schema."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pairstab.model import (
    PairProblem,
    Regime,
    SchemaError,
    SubobjectWitness,
    TargetSheafDescriptor,
    VarietyContext,
    classify_regime,
    problem_from_json,
    problem_to_json,
    validate_witness,
)
from pairstab.polynomial import RationalPolynomial


def poly(*coefficients):
    return RationalPolynomial(coefficients)


CURVE = VarietyContext.curve(genus=2)
TORSION = TargetSheafDescriptor(
    "torsion_on_divisor", 0, Fraction(2), chi_e0=poly(2), h0_e0=2, level_length=1
)


def level_problem(**overrides):
    kwargs = dict(
        ctx=CURVE,
        r=2,
        d=Fraction(0),
        chi=poly(-2, 2),
        delta=poly(1),
        target=TORSION,
    )
    kwargs.update(overrides)
    return PairProblem(**kwargs)


# -- contexts ------------------------------------------------------------------


def test_curve_context():
    assert CURVE.e == 1
    assert CURVE.canonical_degree == 2
    assert CURVE.genus == 2
    with pytest.raises(ValueError):
        CURVE.h_squared


def test_surface_context():
    ctx = VarietyContext.surface(h_squared=3, canonical_degree=-1)
    assert ctx.e == 2
    assert ctx.h_squared == 3


def test_context_rejects_bad_data():
    with pytest.raises(ValueError):
        VarietyContext(3, Fraction(1), Fraction(0))
    with pytest.raises(ValueError):
        VarietyContext(1, Fraction(0), Fraction(0))


# -- targets and problems --------------------------------------------------------


def test_target_kind_rank_consistency():
    with pytest.raises(ValueError):
        TargetSheafDescriptor("structure_sheaf", 0)
    with pytest.raises(ValueError):
        TargetSheafDescriptor("torsion_on_divisor", 1)
    with pytest.raises(ValueError):
        TargetSheafDescriptor("mystery", 1)


def test_problem_validates_chi_shape():
    with pytest.raises(ValueError):
        level_problem(chi=poly(0, 2))  # wrong subleading coefficient
    with pytest.raises(ValueError):
        level_problem(chi=poly(-2, 1))  # wrong leading coefficient
    with pytest.raises(ValueError):
        level_problem(chi=poly(-2, 2, 1))  # wrong degree


def test_problem_requires_positive_delta():
    with pytest.raises(ValueError):
        level_problem(delta=poly(-1))
    with pytest.raises(ValueError):
        level_problem(delta=poly())


def test_from_invariants_builds_chi():
    problem = PairProblem.from_invariants(CURVE, 2, 0, poly(1), TORSION)
    assert problem.chi == poly(-2, 2)
    assert problem.delta1 == 1


def test_delta1_is_the_coefficient_of_z_to_e_minus_one():
    assert level_problem().delta1 == 1
    surface = VarietyContext.surface(h_squared=1, canonical_degree=0)
    problem = PairProblem.from_invariants(
        surface, 1, 0, poly(1, "3/2"), TargetSheafDescriptor("general", 1), lower=(0,)
    )
    assert problem.delta1 == Fraction(3, 2)


# -- regime ---------------------------------------------------------------------


def test_regime_frozen_cases():
    surface = VarietyContext.surface(h_squared=1, canonical_degree=0)
    general = TargetSheafDescriptor("general", 1)
    quot = PairProblem.from_invariants(surface, 1, 0, poly(0, 0, 1), general, lower=(0,))
    assert classify_regime(quot) is Regime.QUOT
    pair = PairProblem.from_invariants(surface, 1, 0, poly(1, 1), general, lower=(0,))
    assert classify_regime(pair) is Regime.PAIR
    assert classify_regime(level_problem()) is Regime.PAIR


@given(st.integers(min_value=1, max_value=100), st.integers(min_value=1, max_value=100))
def test_regime_invariant_under_positive_scaling(num, den):
    problem = level_problem()
    scaled = level_problem(delta=problem.delta * Fraction(num, den))
    assert classify_regime(scaled) is classify_regime(problem)


# -- witness validation ------------------------------------------------------------


def test_validate_rank_out_of_bounds():
    witness = SubobjectWitness(3, Fraction(0))
    codes = {v.code for v in validate_witness(level_problem(), witness)}
    assert "rank_bounds" in codes


def test_validate_kernel_torsion_is_nonfatal():
    witness = SubobjectWitness(0, Fraction(1), chi_g=poly(1), in_kernel=True)
    violations = validate_witness(level_problem(), witness)
    assert [v.code for v in violations] == ["kernel_torsion"]
    assert not violations[0].fatal


def test_validate_full_rank_kernel_is_nonfatal():
    witness = SubobjectWitness(2, Fraction(-2), chi_g=poly(-4, 2), in_kernel=True)
    violations = validate_witness(level_problem(), witness)
    assert [v.code for v in violations] == ["full_rank_kernel"]
    assert not violations[0].fatal


def test_validate_chi_consistency():
    bad_top = SubobjectWitness(1, Fraction(0), chi_g=poly(-1, 2))
    assert {v.code for v in validate_witness(level_problem(), bad_top)} == {
        "leading_coefficient"
    }
    bad_both = SubobjectWitness(1, Fraction(0), chi_g=poly(0, 2))
    assert {v.code for v in validate_witness(level_problem(), bad_both)} == {
        "leading_coefficient",
        "degree_mismatch",
    }
    bad_degree = SubobjectWitness(1, Fraction(0), chi_g=poly(-2, 1))
    assert {v.code for v in validate_witness(level_problem(), bad_degree)} == {
        "degree_mismatch"
    }


def test_validate_improper_witness():
    not_full_rank = SubobjectWitness(1, Fraction(0), proper=False)
    codes = {v.code for v in validate_witness(level_problem(), not_full_rank)}
    assert "improper_rank" in codes
    wrong_chi = SubobjectWitness(2, Fraction(0), chi_g=poly(0, 2), proper=False)
    codes = {v.code for v in validate_witness(level_problem(), wrong_chi)}
    assert "improper_chi" in codes
    in_kernel = SubobjectWitness(2, Fraction(0), chi_g=poly(-2, 2), in_kernel=True, proper=False)
    codes = {v.code for v in validate_witness(level_problem(), in_kernel)}
    assert "improper_kernel" in codes


def test_validate_well_formed_witness():
    witness = SubobjectWitness(1, Fraction(-1), chi_g=poly(-2, 1), in_kernel=True)
    assert validate_witness(level_problem(), witness) == []


# -- JSON schema -------------------------------------------------------------------


def canonical_witnesses():
    return (
        SubobjectWitness(1, Fraction(0), chi_g=poly(-1, 1), in_kernel=True),
        SubobjectWitness(1, Fraction(-1), chi_g=poly(-2, 1), in_kernel=True),
        SubobjectWitness(1, Fraction(0), chi_g=poly(-1, 1)),
        SubobjectWitness(2, Fraction(-2), chi_g=poly(-4, 2), in_kernel=True),
        SubobjectWitness(0, Fraction(1), chi_g=poly(1), in_kernel=True),
    )


def test_json_round_trip():
    problem = level_problem()
    witnesses = canonical_witnesses()
    data = problem_to_json(problem, witnesses)
    back_problem, back_witnesses = problem_from_json(data)
    assert back_problem == problem
    assert back_witnesses == witnesses


def test_json_preserves_exact_rationals():
    surface = VarietyContext.surface(h_squared=1, canonical_degree=Fraction(1, 3))
    problem = PairProblem.from_invariants(
        surface,
        3,
        Fraction(-7, 2),
        poly("1/5", "2/3"),
        TargetSheafDescriptor("general", 2, Fraction(5, 4)),
        lower=(Fraction(9, 8),),
        integral_degrees=False,
    )
    back, _ = problem_from_json(problem_to_json(problem))
    assert back == problem


def test_schema_tag_is_enforced():
    data = problem_to_json(level_problem())
    data["schema"] = "pairstab/2"
    with pytest.raises(SchemaError):
        problem_from_json(data)
    with pytest.raises(SchemaError):
        problem_from_json("not an object")


def test_schema_missing_and_malformed_fields():
    data = problem_to_json(level_problem())
    del data["pair"]
    with pytest.raises(SchemaError):
        problem_from_json(data)

    data = problem_to_json(level_problem())
    data["delta"] = "1"
    with pytest.raises(SchemaError):
        problem_from_json(data)

    data = problem_to_json(level_problem())
    data["pair"]["degree"] = "one"
    with pytest.raises(SchemaError):
        problem_from_json(data)

    data = problem_to_json(level_problem())
    data["pair"]["rank"] = "2"
    with pytest.raises(SchemaError):
        problem_from_json(data)


def test_domain_errors_are_not_schema_errors():
    data = problem_to_json(level_problem())
    data["delta"] = ["-1"]
    with pytest.raises(ValueError) as err:
        problem_from_json(data)
    assert not isinstance(err.value, SchemaError)
