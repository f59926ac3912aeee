import json

import pytest

from oddclass.errors import ConfigInvalid, IOFailure
from oddclass.survey import (
    ROW_FIELDS,
    SurveyConfig,
    SurveyReport,
    emit_report,
    grid,
    load_config,
    read_csv_rows,
    read_report,
    report_json,
    run_survey,
    summarize,
)


def test_survey_n3_k2():
    rep = run_survey(SurveyConfig(n=3, k_min=2, k_max=2, p_max=20, workers=1))
    rows = {r["p"]: r for r in rep.rows}
    assert rows[3]["certified"] and rows[3]["claimed_order"] == 3 and rows[3]["oracle_order"] == 3
    assert rows[5]["error"] == "DegenerateField" and rows[5]["d"] is None
    assert rows[7]["d"] == 339 and rows[7]["D"] == -339
    assert [r["p"] for r in rep.rows] == sorted(rows)


def test_survey_n5_k4():
    rep = run_survey(SurveyConfig(n=5, k_min=4, k_max=4, p_max=10, workers=1))
    row = rep.rows[0]
    assert (row["p"], row["certified"], row["h"], row["oracle_order"]) == (3, True, 5, 5)


def test_k1_never_certified():
    rep = run_survey(SurveyConfig(n=3, k_min=1, k_max=1, p_max=50, workers=1))
    assert rep.summary["certified_count"] == 0
    assert all(r["failed_condition"] == "i" for r in rep.rows if r["d"] is not None)


def test_no_silent_loss():
    cfg = SurveyConfig(n=3, k_min=1, k_max=10, p_max=50, validate=False, workers=1)
    rep = run_survey(cfg)
    s = rep.summary
    assert s["instances_built"] + s["error_rows"] == len(grid(cfg)) == len(rep.rows) == s["attempted"]
    assert all(r["oracle_order"] is None for r in rep.rows)


def test_empty_survey_and_zeroed_summary(tmp_path):
    rep = run_survey(SurveyConfig(n=3, k_min=3, k_max=3, p_max=3, workers=1))
    assert rep.rows == []
    assert rep.summary["instances_built"] == 0 and rep.summary["oracle_mismatches"] == 0
    emit_report(rep, "json", tmp_path / "e.json")
    doc = json.loads((tmp_path / "e.json").read_text())
    assert doc["rows"] == [] and doc["schema"] == 1


def test_json_round_trip(tmp_path):
    rep = run_survey(SurveyConfig(n=3, k_min=2, k_max=4, p_max=13, workers=1))
    path = tmp_path / "r.json"
    emit_report(rep, "json", path)
    back = read_report(path)
    assert back == rep
    assert report_json(back) == path.read_text()
    assert len(json.loads(path.read_text())["rows"]) == len(rep.rows)


def test_csv_round_trip(tmp_path):
    rep = run_survey(SurveyConfig(n=5, k_min=4, k_max=4, p_max=10, workers=1))
    path = tmp_path / "r.csv"
    emit_report(rep, "csv", path)
    assert path.read_text().splitlines()[0] == ",".join(ROW_FIELDS)
    assert read_csv_rows(path) == rep.rows


def test_emit_errors(tmp_path):
    rep = SurveyReport({}, [], summarize([], 0))
    with pytest.raises(IOFailure):
        emit_report(rep, "json", tmp_path / "missing" / "x.json")
    with pytest.raises(ValueError):
        emit_report(rep, "xml")


@pytest.mark.parametrize("workers", [1, 4, 8])
def test_determinism_across_workers(workers):
    base = report_json(run_survey(SurveyConfig(n=5, k_min=1, k_max=6, p_max=30, workers=1)))
    assert report_json(run_survey(SurveyConfig(n=5, k_min=1, k_max=6, p_max=30, workers=workers))) == base


def test_config_files(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"n": 5, "k_range": [2, 4], "p_max": 30, "validate": False}))
    cfg = load_config(p)
    assert (cfg.n, cfg.k_min, cfg.k_max, cfg.p_max, cfg.validate) == (5, 2, 4, 30, False)
    p = tmp_path / "c.txt"
    p.write_text("# survey\nn = 7\nk_range = 1..3\np_max = 20  # primes\nvalidate = true\n")
    cfg = load_config(p, workers=2)
    assert (cfg.n, cfg.k_min, cfg.k_max, cfg.p_max, cfg.validate, cfg.workers) == (7, 1, 3, 20, True, 2)
    p.write_text("n = 4\n")
    with pytest.raises(ConfigInvalid):
        load_config(p)
    p.write_text("colour = red\n")
    with pytest.raises(ConfigInvalid):
        load_config(p)


def test_config_validation(monkeypatch):
    for bad in (dict(n=4), dict(k_min=3, k_max=2), dict(p_max=2), dict(workers=0)):
        with pytest.raises(ConfigInvalid):
            SurveyConfig(**bad).check()
    monkeypatch.setenv("ODDCLASS_WORKERS", "3")
    assert SurveyConfig().workers == 3


def test_t2_count_monotone():
    counts = [run_survey(SurveyConfig(n=5, k_min=4, k_max=4, p_max=pm, validate=False, workers=1))
              .summary["certified_prime_count_per_k"]["4"] for pm in range(10, 101, 10)]
    assert counts == sorted(counts)
