import numpy as np
import pytest

import srgseg.cli
import srgseg.pipeline
from oracles import seed_criteria_violations
from srgseg import _backend

ACCEPTANCE_LINES = []
PIPELINE_RUNS = {"checked": 0}


@pytest.fixture(params=sorted(_backend.available()))
def kernels(request):
    """Each importable kernel backend in turn."""
    return _backend.available()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(autouse=True)
def check_seed_criteria(monkeypatch):
    """Assert the seed criteria on every pipeline run anywhere in the suite."""
    original = srgseg.pipeline.select_stage

    def checked(img, cfg):
        stage = original(img, cfg)
        problems = seed_criteria_violations(
            stage.seeds, stage.mask.data, {r.id: r.pixels for r in stage.rois}, cfg.r
        )
        assert problems == [], problems
        PIPELINE_RUNS["checked"] += 1
        return stage

    monkeypatch.setattr(srgseg.pipeline, "select_stage", checked)
    monkeypatch.setattr(srgseg.cli, "select_stage", checked)
    yield


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section(f"acceptance criteria (kernel backend: {_backend.NAME})")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    terminalreporter.write_line(f"seed criteria checked on {PIPELINE_RUNS['checked']} pipeline runs")
