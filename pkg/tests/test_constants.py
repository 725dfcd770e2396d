"""Tests for the symbolic constant expressions.

The named formulas are pinned by their small exact values (and by digit
counts where the values are astronomically large), by structural facts a
refactor must preserve (which variables and which opaque leaves appear),
and by a full hash of one rendered mid-size expression.  Evaluation is
checked for DAG sharing, laziness of opaque-leaf arguments, and the bit
guards that keep runaway towers from materializing.
"""

from __future__ import annotations

import hashlib

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from pwtrees.constants import (
    BLACK_BOX_NAMES,
    DEFAULT_BIT_LIMIT,
    TOY_BINDINGS,
    Add,
    Binom,
    BlackBox,
    ConstError,
    Lit,
    Max,
    Mul,
    Pow,
    Var,
    binaryisg_radius,
    black_box_names_in,
    decimal_digits,
    digraph_fan_threshold,
    digraph_stable_threshold,
    evaluate,
    f_bigramsey,
    f_main_tree_indm,
    f_obtain_a_seedling,
    f_pwisg,
    f_rspw,
    f_rstw,
    f_seedling_branches,
    f_seedling_to_tree,
    free_vars,
    g_obtain_a_seedling,
    g_seedling_branches,
    parse_expr,
    phi_obtain_a_seedling,
    psi_obtain_a_seedling,
    recursion_branching,
    recursion_lambda,
    text_length,
    to_text,
    wrap,
    xi,
)

PROPERTY_SETTINGS = settings(
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


# ---------------------------------------------------------------------------
# Evaluation core
# ---------------------------------------------------------------------------


def test_evaluate_arithmetic():
    e = Add((Lit(2), Mul((Lit(3), Lit(4))), Max((Lit(1), Lit(9)))))
    assert evaluate(e) == 2 + 12 + 9
    assert evaluate(Pow(Lit(2), Lit(10))) == 1024
    assert evaluate(Binom(Lit(6), Lit(2))) == 15
    assert evaluate(7) == 7


def test_evaluate_variables_and_boxes():
    e = Add((Var("x"), BlackBox("rstw", (Var("x"),))))
    got = evaluate(
        e,
        bindings={"rstw": lambda t: t() + 1},
        variables={"x": 5},
    )
    assert got == 11
    with pytest.raises(ConstError):
        evaluate(Var("x"))
    with pytest.raises(ConstError):
        evaluate(BlackBox("rstw", ()))
    with pytest.raises(ConstError):
        evaluate(BlackBox("rstw", ()), bindings={"rstw": lambda: "no"})


def test_evaluate_box_arguments_are_lazy():
    # The argument holds an unbound variable; a binding that never forces
    # its thunk must still succeed.
    e = BlackBox("noblock", (Var("unbound"),))
    assert evaluate(e, bindings={"noblock": lambda t: 42}) == 42
    with pytest.raises(ConstError):
        evaluate(e, bindings={"noblock": lambda t: t()})


def test_evaluate_shares_dag_nodes():
    calls = []

    def box(*thunks):
        calls.append(1)
        return 3

    shared = BlackBox("rspw", ())
    e = Add((shared, shared, Mul((shared, shared))))
    assert evaluate(e, bindings={"rspw": box}) == 3 + 3 + 9
    assert len(calls) == 1


def test_evaluate_bit_guards():
    with pytest.raises(ConstError):
        evaluate(Pow(Lit(2), Lit(DEFAULT_BIT_LIMIT + 1)))
    with pytest.raises(ConstError):
        evaluate(Pow(Lit(2), Lit(100)), bit_limit=50)
    with pytest.raises(ConstError):
        evaluate(Pow(Lit(2), Lit(-1)))
    with pytest.raises(ConstError):
        evaluate(Pow(Lit(-2), Lit(3)))
    with pytest.raises(ConstError):
        evaluate(Binom(Lit(-1), Lit(2)))
    # Within the limit everything is exact.
    assert evaluate(Pow(Lit(2), Lit(100)), bit_limit=101) == 2**100


def test_wrap_rejects_foreign_objects():
    assert wrap(3) == Lit(3)
    v = Var("x")
    assert wrap(v) is v
    with pytest.raises(TypeError):
        wrap("x")
    with pytest.raises(TypeError):
        wrap(3.5)


# ---------------------------------------------------------------------------
# Digit counting and text length
# ---------------------------------------------------------------------------


@PROPERTY_SETTINGS
@given(st.integers(0, 10**40))
def test_decimal_digits_matches_str(n: int):
    assert decimal_digits(n) == len(str(n))


def test_decimal_digits_at_power_boundaries():
    for e in (1, 2, 5, 10, 100):
        assert decimal_digits(10**e) == e + 1
        assert decimal_digits(10**e - 1) == e
    assert decimal_digits(0) == 1
    assert decimal_digits(-1234) == 4


def desk_expressions():
    return [
        Lit(0),
        Lit(-17),
        Var("kappa"),
        Add((Lit(1), Var("x"), Lit(22))),
        Mul((Pow(Var("d"), Lit(3)), Binom(Lit(7), Lit(2)))),
        Max((Lit(4), BlackBox("rstw", (Lit(1), Var("y"))))),
        BlackBox("rspw", ()),
        f_bigramsey(1, 2, 3),
        xi(2, 1, 2, 3),
        f_main_tree_indm(2, 3),
        digraph_stable_threshold(Var("r"), Var("s"), "corrected"),
    ]


@pytest.mark.parametrize("idx", range(11))
def test_text_length_matches_rendered_length(idx: int):
    e = desk_expressions()[idx]
    assert text_length(e) == len(to_text(e))


def test_text_length_saturates_on_towers():
    deep = xi(60, 1, 1, 1)
    assert text_length(deep, cap=10**6) == 10**6
    # Exactness below the cap is preserved for the same walk.
    small = xi(2, 1, 1, 1)
    assert text_length(small, cap=10**9) == len(to_text(small))


# ---------------------------------------------------------------------------
# Serialization roundtrip
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("idx", range(11))
def test_parse_inverts_to_text(idx: int):
    e = desk_expressions()[idx]
    assert parse_expr(to_text(e)) == e


def test_parse_expr_rejections():
    with pytest.raises(ConstError):
        parse_expr("(+ 1 2")
    with pytest.raises(ConstError):
        parse_expr("(? 1 2)")
    with pytest.raises(ConstError):
        parse_expr("(^ 1 2 3)")
    with pytest.raises(ConstError):
        parse_expr("(binom 1)")
    with pytest.raises(ConstError):
        parse_expr("1 2")
    with pytest.raises(ConstError):
        parse_expr("(+ 1 @)")


# ---------------------------------------------------------------------------
# The named formulas
# ---------------------------------------------------------------------------


def test_xi_base_case_and_small_values():
    assert evaluate(xi(1, 2, 2, 5)) == 4
    assert evaluate(xi(1, 3, 2, 1)) == 8
    with pytest.raises(ValueError):
        xi(0, 1, 1, 1)


def test_xi_two_level_unrolling_identity():
    a, b, c = wrap(5), wrap(6), wrap(7)
    expected = f_seedling_branches(
        a,
        Mul((Lit(2), a, b)),
        Pow(f_bigramsey(b, b, a), a),
        c,
    )
    assert xi(2, a, b, c) == expected


def test_f_seedling_to_tree_base_case():
    # At r=1 the member demand is d**t regardless of kappa.
    for kappa in (1, 9, 100):
        assert evaluate(f_seedling_to_tree(2, 1, 2, kappa)) == 4


def test_f_seedling_branches_values():
    assert evaluate(f_seedling_branches(1, 1, 1, 1)) == 1
    big = evaluate(f_seedling_branches(1, 1, 1, 2))
    assert big == 2**24010
    assert decimal_digits(big) == 7228
    with pytest.raises(ConstError):
        evaluate(f_seedling_branches(2, 1, 1, 2))


def test_f_bigramsey_arguments():
    e = f_bigramsey(1, 1, 1)
    assert isinstance(e, BlackBox) and e.name == "productramsey"
    assert [evaluate(a) for a in e.args] == [2, 1, 16]


def test_g_formulas_take_no_member_count():
    g1 = g_obtain_a_seedling(Var("d"), Var("r"), Var("t"))
    assert free_vars(g1) == {"d", "r", "t"}
    assert black_box_names_in(g1) == {"g_comp_model_rigid"}
    g2 = g_seedling_branches(Var("t"), Var("kappa"))
    assert free_vars(g2) == {"kappa", "t"}
    assert black_box_names_in(g2) == {"productramsey"}


def test_recursion_formulas():
    assert recursion_branching(2, 1) == f_bigramsey(2, 2, 1)
    lam = recursion_lambda(2, 2, 1, 1)
    assert evaluate(lam, TOY_BINDINGS) == 1
    with pytest.raises(ValueError):
        recursion_lambda(2, 1, 1, 1)


def test_obtain_a_seedling_chain():
    phi = phi_obtain_a_seedling(Var("d"), Var("r"), Var("t"))
    assert black_box_names_in(phi) == {"comp_model_rigid"}
    psi = psi_obtain_a_seedling(Var("d"), Var("r"), Var("t"), Var("lam"))
    assert black_box_names_in(psi) == {"comp_model_rigid", "noblock"}
    assert "lam" in free_vars(psi)
    f = f_obtain_a_seedling(1, 1, 1, 1)
    assert isinstance(f, BlackBox) and f.name == "completeminor"
    assert evaluate(f, TOY_BINDINGS) == 1


def test_f_main_tree_indm_pinned_rendering():
    e = f_main_tree_indm(2, 3)
    assert evaluate(e, TOY_BINDINGS) == 1
    text = to_text(e)
    assert len(text) == 1280
    assert text_length(e) == 1280
    assert (
        hashlib.sha256(text.encode()).hexdigest()
        == "ec7569202bf4ccc607f62f23588846bb30efe8b3562f7be748e9e42ce338f7c9"
    )
    assert parse_expr(text) == e


def test_binaryisg_radius():
    assert evaluate(binaryisg_radius(3)) == 24
    assert evaluate(binaryisg_radius(1)) == 8


def test_f_pwisg_builds_and_toy_evaluates():
    # Depth 2**17 - 1 is forced by the formula even at r=1, so this is the
    # one deliberately heavy build in the suite (about 15 seconds); scanning
    # the multi-million-node DAG again is skipped on purpose.
    e = f_pwisg(1, 1, 1, 1, 1, 1)
    assert isinstance(e, BlackBox) and e.name == "completeminor"
    assert evaluate(e, TOY_BINDINGS) == 1


def test_opaque_leaf_families():
    e = f_rstw(1, 2)
    assert isinstance(e, BlackBox) and e.name == "rstw" and len(e.args) == 2
    assert evaluate(e, TOY_BINDINGS) == 1
    e = f_rspw(Var("w"))
    assert black_box_names_in(e) == {"rspw"}


def test_thresholds():
    assert evaluate(digraph_stable_threshold(2, 3)) == 12
    assert evaluate(digraph_stable_threshold(2, 3, "corrected")) == 15
    assert evaluate(digraph_fan_threshold(2, 1, 3)) == 12
    assert evaluate(digraph_fan_threshold(2, 1, 3, "corrected")) == 15
    with pytest.raises(ValueError):
        digraph_stable_threshold(1, 1, "fixed")
    with pytest.raises(ValueError):
        digraph_fan_threshold(1, 1, 1, "fixed")


def test_toy_bindings_cover_every_box_name():
    assert set(TOY_BINDINGS) == set(BLACK_BOX_NAMES)
    assert BLACK_BOX_NAMES == frozenset(
        {
            "noblock",
            "completeminor",
            "comp_model_rigid",
            "g_comp_model_rigid",
            "mother_ktt",
            "g_mother_ktt",
            "productramsey",
            "rstw",
            "rspw",
        }
    )
