import json

import pytest

from sp8local import checks, cli


def test_registry_ids_unique():
    ids = [e.check_id for e in checks.REGISTRY]
    assert len(ids) == len(set(ids))


def test_coverage_manifest_satisfied():
    ids = [e.check_id for e in checks.REGISTRY]
    for fam in checks.COVERAGE_MANIFEST:
        assert any(i == fam or i.startswith(fam + "-") for i in ids), fam


def test_select_unknown_pattern_raises():
    with pytest.raises(checks.UnknownCheckError):
        checks.select("no-such-check", include_slow=True)


def test_select_filters_cost():
    fast_only = checks.select("lemma-4.7-*", include_slow=False)
    everything = checks.select("lemma-4.7-*", include_slow=True)
    assert len(everything) > len(fast_only)


def test_cli_list_returns_zero(capsys):
    assert cli.main(["list", "--filter", "lemma-3.1-*"]) == 0
    out = capsys.readouterr().out
    assert out.count("lemma-3.1-") == 8


def test_cli_unknown_filter_is_usage_error(capsys):
    assert cli.main(["run", "--filter", "bogus-*"]) == 2
    assert "valid ids" in capsys.readouterr().err


def test_cli_run_json_passes(capsys):
    code = cli.main(["run", "--filter", "lemma-3.1-*", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["totals"] == {"count": 8, "passed": 8, "failed": 0}
    for item in payload["results"]:
        assert set(item) == {"check_id", "expected", "computed", "passed", "ms"}
        assert set(item["expected"]) == {"value", "provenance"}


def test_cli_run_markdown(capsys, tmp_path):
    out_file = tmp_path / "report.md"
    code = cli.main(["run", "--filter", "lemma-4.6-*", "--format", "markdown",
                     "--out", str(out_file)])
    assert code == 0
    text = out_file.read_text()
    assert "| lemma-4.6-i | pass |" in text


def test_json_deterministic_apart_from_timing():
    a = cli.execute("lemma-3.1-*", seed=0, include_slow=False)
    b = cli.execute("lemma-3.1-*", seed=0, include_slow=False)

    def strip(report):
        data = json.loads(cli.report_json(report))
        data.pop("wall_ms")
        for item in data["results"]:
            item.pop("ms")
        return data

    assert strip(a) == strip(b)


def test_cli_report_writes_artifacts(tmp_path):
    out_dir = tmp_path / "rep"
    code = cli.main(["report", "--filter", "lemma-3.1-*", "--out", str(out_dir)])
    assert code == 0
    assert (out_dir / "report.md").exists()
    assert (out_dir / "results.csv").exists()
    assert (out_dir / "check_runtimes.png").stat().st_size > 0
    assert (out_dir / "family_coverage.png").stat().st_size > 0


def test_worker_count_respects_env(monkeypatch):
    monkeypatch.setenv("VERIFY_THREADS", "1")
    assert cli._worker_count() == 1
