import io
import json
import os

import pytest

from parsumlab.cli import CORPUS_ENV, main
from parsumlab.errors import MalformedInput, UnknownSuite
from parsumlab.io import load, validate_document
from parsumlab.suites import DEFAULTS, SUITES, SuiteConfig, fingerprint, run_suite


def _run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_every_suite_has_defaults_and_unique_ids():
    assert set(SUITES) == set(DEFAULTS)
    ids = [cid for checks in SUITES.values() for cid, _, _ in checks]
    assert len(ids) == len(set(ids))
    assert all(anchor for checks in SUITES.values() for _, anchor, _ in checks)


def test_support_calculus_small_window():
    rep = run_suite(SuiteConfig("support-calculus", window=6))
    assert rep.ok and [r.check for r in rep.records] == ["support.einj.A1", "support.einj.A2", "support.einj.A3"]
    assert rep.config["window"] == 6


def test_rho_laws_records():
    rep = run_suite(SuiteConfig("rho-laws"))
    assert rep.ok and len(rep.records) == 5
    doc = rep.to_dict()
    assert doc["kind"] == "report" and doc["data"]["passed"] is True
    assert load(rep.to_json())["passed"] is True


def test_record_fingerprint():
    rep = run_suite(SuiteConfig("negative-controls"))
    assert rep.ok
    for r in rep.records:
        assert len(r.fingerprint) == 16 and int(r.fingerprint, 16) >= 0


def test_negative_controls_carry_counterexamples():
    rep = run_suite(SuiteConfig("negative-controls"))
    for r in rep.records:
        assert r.witness.get("counterexample")


def test_failing_records_have_witness():
    rep = run_suite(SuiteConfig("support-calculus", window=1))
    assert [r.verdict for r in rep.records] == [True, False, False]
    assert all(r.witness.get("reason") for r in rep.records if not r.verdict)
    code, text = _run(["run", "support-calculus", "--window", "1", "--format", "text"])
    assert code == 1 and text.count("FAIL") == 2


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite(SuiteConfig("nope"))


@pytest.mark.parametrize("kw", [{"window": 0}, {"bounds": (1, 0, 1)}, {"bounds": (1, 1)}, {"format": "xml"},
                                {"probe_groups": ("A5",)}, {"jobs": -1}])
def test_malformed_config(kw):
    with pytest.raises(MalformedInput):
        run_suite(SuiteConfig("rho-laws", **kw))


def test_deterministic_across_runs_and_jobs():
    a = run_suite(SuiteConfig("simplicial-support", seed=3)).to_json()
    b = run_suite(SuiteConfig("simplicial-support", seed=3)).to_json()
    c = run_suite(SuiteConfig("simplicial-support", seed=3, jobs=4)).to_json()
    assert a == b == c


def test_fingerprint_is_sha_prefix():
    import hashlib
    assert fingerprint("x|y") == hashlib.sha256(b"x|y").hexdigest()[:16]


def test_cli_run_text_and_json(tmp_path):
    code, text = _run(["run", "rho-laws", "--format", "text"])
    assert code == 0 and text.count("PASS") == 5
    target = tmp_path / "r.json"
    code, _ = _run(["run", "negative-controls", "--output", str(target)])
    assert code == 0 and json.loads(target.read_text())["data"]["passed"] is True


def test_cli_errors_exit_two(capsys):
    assert _run(["run", "nope"])[0] == 2
    assert "UnknownSuite" in capsys.readouterr().err
    assert _run(["run", "rho-laws", "--window", "0"])[0] == 2
    assert "MalformedInput" in capsys.readouterr().err
    assert _run(["validate", "does-not-exist.json"])[0] == 2


def test_cli_list():
    code, text = _run(["list"])
    assert code == 0
    for name, checks in SUITES.items():
        assert name in text and all(cid in text for cid, _, _ in checks)


def test_cli_export_and_validate(tmp_path, monkeypatch):
    code, text = _run(["export-corpus", str(tmp_path)])
    assert code == 0
    files = sorted(os.listdir(tmp_path))
    assert len(files) == 8
    for name in files:
        ok, _ = validate_document(str(tmp_path / name))
        negative = name.startswith("negative_")
        if name != "negative_non_equivalence_functor.json":
            assert ok != negative, name
    monkeypatch.setenv(CORPUS_ENV, str(tmp_path))
    code, text = _run(["validate", "finite_subsets_w3.json"])
    assert code == 0 and json.loads(text)["valid"] is True
    code, text = _run(["validate", "negative_corrupted_sum_table.json"])
    res = json.loads(text)
    assert code == 1 and res["valid"] is False and res["counterexample"]
    code, _ = _run(["validate", "negative_nonmonotone_delta_map.json"])
    assert code == 1


def test_cli_export_uses_env(tmp_path, monkeypatch):
    monkeypatch.setenv(CORPUS_ENV, str(tmp_path / "c"))
    assert _run(["export-corpus"])[0] == 0
    assert len(os.listdir(tmp_path / "c")) == 8
    monkeypatch.delenv(CORPUS_ENV)
    assert _run(["export-corpus"])[0] == 2
