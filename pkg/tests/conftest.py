import pytest
from hypothesis import strategies as st

from app.models.tableau import Composition
from app.services.analysis import Analysis, analysis_service

WORKED = (1, 2, 4, 3, 2, 3, 4, 1, 1, 2)

WORKED_ONES = {
    (1, 2), (2, 4), (3, 5), (4, 8), (5, 9), (6, 10), (7, 15), (8, 11), (10, 12),
    (11, 13), (12, 14), (13, 16), (14, 17), (15, 18), (16, 21), (17, 20), (18, 23), (21, 22),
}
WORKED_STARS = {(9, 12), (9, 15), (9, 19), (16, 20), (20, 21), (20, 23)}

compositions = (
    st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=7)
    .filter(lambda parts: sum(parts) <= 14)
    .map(lambda parts: Composition.of(*parts))
)


def analyze(*parts: int) -> Analysis:
    return analysis_service.analyze(Composition.of(*parts))


@pytest.fixture(scope="session")
def worked() -> Analysis:
    return analyze(*WORKED)


@pytest.fixture(scope="session")
def small_sample() -> Analysis:
    return analyze(2, 1, 1, 2, 2)
