import math

import pytest

from ncqm.params import NCParams

# one representative point per non-critical region (theta = hbar = mu = 1)
REGION_POINTS = {
    "NegativeKappa": NCParams(1.0, -0.5),
    "ZeroKappa": NCParams(1.0, 0.0),
    "SubCritical": NCParams(1.0, 0.3),
    "SuperCritical": NCParams(1.0, 2.0),
}

SQRT2 = math.sqrt(2.0)


@pytest.fixture(params=["NegativeKappa", "SubCritical", "SuperCritical"])
def three_regions(request):
    return REGION_POINTS[request.param]
