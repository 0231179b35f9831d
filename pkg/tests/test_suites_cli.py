"""Suite runner determinism, pipeline contract, CLI exit codes."""

import json

import pytest

from aft.cli import main
from aft.corpus import corpus_entry, load_corpus
from aft.suites import pipeline, run_suite


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("nonsense")
    with pytest.raises(ValueError):
        run_suite("smith", scale="huge")


def test_reports_are_deterministic():
    a = run_suite("descent", seed=11).to_json(include_timing=False)
    b = run_suite("descent", seed=11).to_json(include_timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    c = run_suite("descent", seed=12).to_json(include_timing=False)
    assert json.dumps(a, sort_keys=True) != json.dumps(c, sort_keys=True)


def test_pipeline_trivial_action_keeps_whole_group():
    report = pipeline(corpus_entry("trivial-z2-on-triangle"))
    assert report["passed"]
    assert report["index"] == 1


def test_pipeline_rotation_disk_model():
    report = pipeline(corpus_entry("model-z3-rotation-disk"))
    assert report["passed"]
    assert report["index"] == 1
    assert report["component_checks"][0]["chi_fixed"] == 1


def test_pipeline_antipodal_sphere_model():
    report = pipeline(corpus_entry("model-z2-antipodal-sphere"))
    assert report["passed"]
    assert report["index"] == 2
    assert report["index"] <= report["composite_bound"]


def test_pipeline_rejects_odd_cohomology_entry():
    with pytest.raises(ValueError):
        pipeline(corpus_entry("z2-antipodal-hexagon"))


def test_pipeline_contract_on_corpus():
    for entry in load_corpus():
        if entry.kind == "complex" or not entry.metadata.get(
            "no_odd_cohomology"
        ):
            continue
        report = pipeline(entry)
        assert report["passed"], entry.name
        assert report["index"] <= report["composite_bound"]
        for check in report["component_checks"]:
            assert check["ok"]


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_cli_analyze(tmp_path, capsys):
    path = _write(
        tmp_path,
        "cx.json",
        {"maximal_simplices": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]},
    )
    assert main(["analyze", path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema"] == "aft/1"
    assert data["homology"]["euler"] == 2


def test_cli_action_check_good_and_bad(tmp_path, capsys):
    good = _write(
        tmp_path,
        "good.json",
        {
            "group": {"primary": [{"p": 2, "exponents": [1]}]},
            "complex": {
                "maximal_simplices": [[i, (i + 1) % 6] for i in range(6)]
            },
            "generator_images": [[3, 4, 5, 0, 1, 2]],
        },
    )
    assert main(["action", "check", good]) == 0
    bad = _write(
        tmp_path,
        "bad.json",
        {
            "group": {"primary": [{"p": 2, "exponents": [1]}]},
            "complex": {"maximal_simplices": [[0, 1]]},
            "generator_images": [[1, 0]],
        },
    )
    # Violation of goodness reports exit code 1.
    assert main(["action", "check", bad]) == 1
    out = capsys.readouterr().out
    assert '"is_good": false' in out


def test_cli_descent(tmp_path, capsys):
    path = _write(
        tmp_path,
        "model.json",
        {
            "group": {"primary": [{"p": 2, "exponents": [2]}]},
            "shape": "disk",
            "summands": [
                {"kind": "rotation", "character": [1]},
                {"kind": "trivial"},
            ],
        },
    )
    assert main(["descent", path, "--lambda", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["per_prime"][0]["p"] == 2


def test_cli_verify_and_out_file(tmp_path):
    out = tmp_path / "report.json"
    code = main(
        [
            "verify",
            "--suite",
            "chain-bound",
            "--seed",
            "5",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    data = json.loads(out.read_text())
    assert data["schema"] == "aft/1"
    assert data["passed"] and data["cases_run"] == 91


def test_cli_bounds(tmp_path, capsys):
    path = _write(
        tmp_path,
        "cfg.json",
        {
            "dim": 2,
            "betti_Z": [1, 0, 1],
            "betti_mod_p": {"2": [1, 0, 1]},
            "torsion_primes": [],
            "mu": 1,
        },
    )
    assert main(["bounds", path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["constants"]["P_chi"] == 5

    assert main(["bounds", "--table", "f", "--max-k", "6"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["values"]["6"] == 2880


def test_cli_usage_errors(tmp_path):
    assert main(["analyze", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["analyze", str(bad)]) == 2
    assert main(["bounds"]) == 2
