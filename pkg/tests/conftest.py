import pytest

from csection.catalog import build_group, builtin_battery


@pytest.fixture(scope="session")
def battery500():
    """Built battery groups with labels, order bound 500."""
    return [(e.label, build_group(e.spec)) for e in builtin_battery(500)]


@pytest.fixture(scope="session")
def battery200(battery500):
    return [(label, G) for label, G in battery500 if G.order <= 200]


@pytest.fixture(scope="session")
def psl2_16():
    """One shared simple group outside the identification catalog (order 4080);
    session scope because identifying it costs seconds."""
    from csection.catalog import named_spec
    return build_group(named_spec("PSL2", 16))
