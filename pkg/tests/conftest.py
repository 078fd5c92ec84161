import pytest

from marcumq import _kernels_py

try:
    from marcumq import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
if _kernels_c is not None:
    BACKENDS.append(pytest.param(_kernels_c, id="cython"))


@pytest.fixture(params=BACKENDS)
def kernel_module(request):
    return request.param


@pytest.fixture
def each_backend(request, monkeypatch, kernel_module):
    """Route every package module through the given kernel implementation."""
    from marcumq import laguerre_series, oracle, special_functions

    for mod in (laguerre_series, oracle, special_functions):
        monkeypatch.setattr(mod, "kernels", kernel_module)
    return kernel_module


# One line per acceptance criterion, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        from marcumq import BACKEND

        terminalreporter.section(f"acceptance criteria (kernels: {BACKEND})")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
