import pytest

import mldeg.oracle as oracle_pkg
from mldeg.runtime import parallel_map, thread_count


class TestThreadCount:
    def test_default_is_auto(self, monkeypatch):
        monkeypatch.delenv("MLDEG_THREADS", raising=False)
        assert thread_count() >= 1

    def test_zero_means_auto(self, monkeypatch):
        monkeypatch.setenv("MLDEG_THREADS", "0")
        assert thread_count() >= 1

    def test_explicit(self, monkeypatch):
        monkeypatch.setenv("MLDEG_THREADS", "3")
        assert thread_count() == 3

    @pytest.mark.parametrize("bad", ["-2", "many"])
    def test_invalid(self, monkeypatch, bad):
        monkeypatch.setenv("MLDEG_THREADS", bad)
        with pytest.raises(ValueError):
            thread_count()


class TestParallelMap:
    @pytest.mark.parametrize("threads", ["1", "4"])
    def test_order_preserved(self, monkeypatch, threads):
        monkeypatch.setenv("MLDEG_THREADS", threads)
        items = list(range(37))
        assert parallel_map(lambda x: x * x, items) == [x * x for x in items]

    def test_empty(self):
        assert parallel_map(lambda x: x, []) == []


class TestBackendSelection:
    def test_python_fallback_when_extension_missing(self, monkeypatch):
        monkeypatch.setattr(oracle_pkg, "_compiled", None)
        assert oracle_pkg.available_backends() == ("python",)
        assert oracle_pkg.default_backend() == "python"
        with pytest.raises(RuntimeError):
            oracle_pkg._resolve_backend("compiled")

    def test_auto_resolution(self):
        name, solver = oracle_pkg._resolve_backend(None)
        assert name in ("compiled", "python")
        assert callable(solver)
