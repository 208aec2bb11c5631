import pytest
from hypothesis import HealthCheck, settings

from cgpetersen.catalog import Member

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ALL_MEMBERS = list(Member)


@pytest.fixture(params=ALL_MEMBERS, ids=lambda m: m.value)
def member(request):
    return request.param
