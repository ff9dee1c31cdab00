"""Reference-data loader sanity."""

import numpy as np
import pytest

from imspe import CovarianceFamily, imspe_value, load_reference_cases, reference_notes


def test_case_counts():
    assert len(load_reference_cases("1")) == 3
    assert len(load_reference_cases("2")) == 6
    assert len(load_reference_cases("all")) == 9
    assert len(load_reference_cases(1)) == 3


def test_unknown_table_rejected():
    with pytest.raises(ValueError):
        load_reference_cases("7")


def test_case_fields_are_consistent():
    for case in load_reference_cases("all"):
        assert case.family in ("exponential", "gaussian")
        assert case.theta in (0.1, 1.0, 10.0)
        assert case.n == len(case.design) == len(case.design_digits)
        assert case.imspe == float(case.imspe_digits)
        assert all(x == float(s) for x, s in zip(case.design, case.design_digits))
        assert 0.0 < case.imspe_rtol < 1e-9
        assert 0.0 < case.coord_atol < 1e-5


def test_two_point_designs_are_nearly_symmetric():
    for case in load_reference_cases("2"):
        assert abs(case.design[0] + case.design[1]) <= 1e-10


def test_reference_designs_achieve_reference_values():
    # the tabulated criterion value must be what the criterion actually
    # produces at the tabulated design
    for case in load_reference_cases("all"):
        fam = CovarianceFamily(case.family, [case.theta])
        value = imspe_value(fam, list(case.design))
        assert value == pytest.approx(case.imspe, rel=5e-13)


def test_corrected_cell_is_noted():
    noted = [case for case in load_reference_cases("2") if case.note]
    assert len(noted) == 1
    assert noted[0].family == "exponential"
    assert noted[0].theta == 0.1
    assert noted[0].imspe == pytest.approx(0.03975156744848410, rel=1e-14)


def test_notes_text_present():
    assert "reference" in reference_notes().lower()
