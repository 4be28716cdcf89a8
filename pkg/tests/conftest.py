"""Shared fixtures: synthetic multiplier tables and county profiles."""

import pytest

from solarval import economics as econ


def category_names() -> list[str]:
    """Every category name the lifecycle model can look up."""
    names = [c.name for c in econ.INSTALLATION_PROFILE.categories]
    names += [
        c.name
        for c in econ.OM_PROFILE.categories
        if c.name not in econ.OM_INDUCED_CATEGORIES
    ]
    names += [c.name for c in econ.DECOMMISSIONING_PROFILE.categories]
    names += [econ.ROW_HOUSEHOLD, econ.ROW_GOVERNMENT, econ.ROW_AGRICULTURE]
    return names


def uniform_table(
    state="OH",
    size="large",
    output=1.5,
    earnings=0.5,
    jobs=5.0,
    value_added=1.0,
    ag_value_added=None,
) -> econ.MultiplierTable:
    """A multiplier table with identical rows for every category."""
    rows = {}
    for name in category_names():
        va = value_added
        if name == econ.ROW_AGRICULTURE and ag_value_added is not None:
            va = ag_value_added
        rows[name] = econ.MultiplierRow(output, earnings, jobs, va)
    return econ.MultiplierTable(state=state, size_class=size, rows=rows)


@pytest.fixture
def ohio_tax() -> econ.TaxSchedule:
    return econ.TaxSchedule("OH", 8750.0, "flat_pilot")


@pytest.fixture
def plain_county(ohio_tax) -> econ.CountyProfile:
    return econ.CountyProfile(
        name="demo",
        state="OH",
        size_class="large",
        yield_class="average",
        multipliers=uniform_table(),
        tax=ohio_tax,
    )
