import os
import pathlib

import pytest

from fibexp import mod_mul_group, symbolic_group

GOLDEN_DIR = pathlib.Path(
    os.environ.get("FIBEXP_TRACE_DIR", pathlib.Path(__file__).parent / "golden")
)


@pytest.fixture(scope="session")
def sym179():
    return symbolic_group(179)


@pytest.fixture(scope="session")
def mod359():
    # 4 has order exactly 179 in Z_359^*
    return mod_mul_group(359, 179, 4, r_factors=(179,))


@pytest.fixture(scope="session")
def mod101():
    return mod_mul_group(101, 100, 2, r_factors=(2, 5))


def golden_text(name: str) -> str:
    return (GOLDEN_DIR / name).read_text()
