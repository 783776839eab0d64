import numpy as np
import pytest

from fractal_dirac import presets

# registry filled by the acceptance module; one line per criterion at session end
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_orthogonal(rng, n):
    """Deterministic random orthogonal matrix via QR with sign fixing."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


OSC_PRESETS = [
    "cantor_set",
    "cantor_dust2",
    "cantor_dust3",
    "lifted_cantor",
    "sierpinski_carpet",
    "menger_sponge",
    "lifted_carpet",
    "rotation",
]

ALL_PRESETS = OSC_PRESETS + ["non_osc"]


@pytest.fixture(params=ALL_PRESETS)
def any_preset(request):
    return presets.preset(request.param)
