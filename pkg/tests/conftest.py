import pytest

import fluxsat as fs


@pytest.fixture(scope="session")
def m_desk():
    """Synthesized speed-limited family at (L, R, N, M) = (1, 1, 1, 2)."""
    return fs.synthesize_M_params(1.0, 1.0, 1, 2.0)


@pytest.fixture(scope="session")
def rel_desk():
    """Synthesized relativistic family at (L, R, N, m) = (1, 1, 1, 2)."""
    return fs.synthesize_rel_params(1.0, 1.0, 1, 2.0)
