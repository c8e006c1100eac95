import os

import pytest
from hypothesis import HealthCheck, settings

from freefill import kernels

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

IMPLEMENTATIONS = ["python"] + (["cython"] if kernels.compiled_kernels is not None else [])


@pytest.fixture(params=IMPLEMENTATIONS)
def kernel_impl(request):
    """Run a test once per available kernel implementation."""
    prev = kernels.select(request.param)
    yield request.param
    kernels.select(prev)
