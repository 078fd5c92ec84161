"""Full evaluations agree bit for bit between the compiled and pure-Python kernels."""
import pytest

from marcumq import MarcumArgs, eval_laguerre_series, quadrature_q
from marcumq import _kernels_py
from marcumq.special_functions import bessel_i, laguerre, reg_upper_gamma

from .conftest import _kernels_c
from .helpers import TABLE_POINTS

POINTS = [(nu, a, b) for nu, a, b, _ in TABLE_POINTS] + [(0.5, 1.0, 1.0), (2.5, 3.1, 4.4)]


def _evaluate_all():
    out = []
    for nu, a, b in POINTS:
        args = MarcumArgs(nu, a, b)
        out.append(eval_laguerre_series(args, force=True))
        out.append(quadrature_q(args))
    out.append(reg_upper_gamma(7.7, 3.38))
    out.append(bessel_i(2.5, 17.0))
    out.append(laguerre(40, 1.5, 9.0))
    return out


def test_tables_on_each_backend(each_backend):
    for nu, a, b, ref in TABLE_POINTS:
        assert abs(eval_laguerre_series(MarcumArgs(nu, a, b)).value - ref) <= 1e-12


@pytest.mark.skipif(_kernels_c is None, reason="compiled kernels not built")
def test_backends_identical(monkeypatch):
    from marcumq import laguerre_series, oracle, special_functions

    results = []
    for mod in (_kernels_py, _kernels_c):
        for target in (laguerre_series, oracle, special_functions):
            monkeypatch.setattr(target, "kernels", mod)
        results.append(_evaluate_all())
    assert results[0] == results[1]


def test_benchmark_script_runs(capsys):
    import runpy
    from pathlib import Path

    script = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    module = runpy.run_path(str(script))
    assert module["main"](["--repeat", "1", "--number", "1"]) == 0
    out = capsys.readouterr().out
    assert "quadrature, 54 points" in out and "speedup" in out
