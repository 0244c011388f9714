import json
import os

import pytest

from detachlab import census, report


def test_registry_lint_clean():
    assert census.lint_registry() == []


def test_listing_contains_expected_names():
    names = census.list_examples()
    for expected in (
        "example-two",
        "bowtie-end-dim",
        "components-dims",
        "triple-point-limit",
        "case-templates",
        "codim3-dimension-ledger",
    ):
        assert expected in names


def test_unknown_example_raises():
    with pytest.raises(census.CensusError):
        census.example_source("no-such-example")


def test_example_two_passes():
    rep = census.run_example("example-two")
    assert rep.passed
    kinds = {r.kind for r in rep.results}
    assert "kernel_equals" in kinds


def test_blowup_criterion_passes():
    rep = census.run_example("blowup-criterion")
    assert rep.passed


def test_every_cited_check_carries_reference():
    for name in census.list_examples():
        doc = census.example_source(name)
        parsed = census.parse_source(doc)
        for chk in parsed.checks:
            if chk.tag == "cited":
                assert chk.ref, f"{name}:{chk.name}"


def test_prime_field_agreement_spot_check():
    """The fast prime-field mode reproduces the rational results."""
    for name in ("example-two", "bowtie-end-dim", "triple-point-limit"):
        rq = census.run_example(name)
        rp = census.run_example(name, field_override="FF:32003")
        assert rq.passed and rp.passed
        for a, b in zip(rq.results, rp.results):
            assert a.passed == b.passed, (name, a.name)


def test_report_files(tmp_path):
    reports = [census.run_example("example-two"), census.run_example("hilbert-ledger")]
    files = report.write_reports(reports, str(tmp_path), seed=123)
    names = {os.path.basename(f) for f in files}
    assert "census.csv" in names
    assert "census.json" in names
    assert "census_summary.png" in names
    assert "hilbert_functions.png" in names
    with open(tmp_path / "census.json") as fh:
        payload = json.load(fh)
    assert payload["passed"]
    with open(tmp_path / "census.csv") as fh:
        header = fh.readline().strip().split(",")
    assert header[:4] == ["example", "check", "kind", "tag"]


def test_summary_table_runs():
    reports = [census.run_example("example-two")]
    text = report.summary_table(reports)
    assert "PASS" in text
