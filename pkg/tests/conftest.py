import pytest

from dispersive_lamb import CATALOG, make_relation


@pytest.fixture(params=list(CATALOG))
def relation(request):
    return make_relation(request.param)
