"""Acceptance sweeps, one test per check, each printing a pass/fail line.

The lines are also collected into an "acceptance" section of the pytest
terminal summary so they show up without ``-s``.
"""
import pytest

from multicirc import verify

from .conftest import ACCEPTANCE_LINES


def check(func):
    r = func()
    line = r.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert r.passed, line


def test_smith_form_of_worked_example():
    check(verify.criterion_1)


def test_smith_coordinate_presentation_is_isomorphic():
    check(verify.criterion_2)


@pytest.mark.slow
def test_two_step_rule_matches_cyclic_automorphism_search():
    check(verify.criterion_3)


@pytest.mark.slow
def test_entry_formula_matches_two_step_rule():
    check(verify.criterion_4)


def test_exceptional_family_isomorphic_but_not_adam():
    check(verify.criterion_5)


def test_products_of_prime_circulants():
    check(verify.criterion_6)


def test_cube_dimension():
    check(verify.criterion_7)


def test_element_order_formula():
    check(verify.criterion_8)


def test_components_and_reduction():
    check(verify.criterion_9)


def test_direction_recovery():
    check(verify.criterion_10)


def test_normal_form_invariants():
    check(verify.criterion_11)
