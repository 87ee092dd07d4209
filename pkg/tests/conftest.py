import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ebeta.core import Beta, make_beta  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"

# beta >= 3 with small denominators; 3 is included on purpose
betas = st.tuples(st.integers(3, 40), st.integers(1, 4)).filter(lambda t: t[0] >= 3 * t[1]).map(
    lambda t: Beta(Fraction(*t))
)

words = st.text(alphabet="01B", max_size=7)


@pytest.fixture(params=[(3, 1), (7, 2), (4, 1), (5, 1)], ids=["3", "7/2", "4", "5"])
def beta(request):
    return make_beta(*request.param)


@pytest.fixture
def golden_dir():
    return GOLDEN
