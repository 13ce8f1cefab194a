"""The command-line surface: grammar, exit codes, determinism, round trips."""

import json
import random

import pytest

from freeconv.cli import main
from freeconv.freeprob import CumulantSpec
from freeconv.multiseries import TruncSeries, random_series


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_count_golden(capsys):
    code, out, _ = run(capsys, "enumerate", "--kind", "trees", "--n", "3",
                       "--format", "count")
    assert code == 0
    assert out.strip() == "5"


def test_enumerate_json_lists_the_level(capsys):
    code, out, _ = run(capsys, "enumerate", "--kind", "ncp", "--n", "3")
    assert code == 0
    level = json.loads(out)
    assert len(level) == 5
    assert [[1], [2], [3]] in level


def test_enumerate_ascii_runs(capsys):
    code, out, _ = run(capsys, "enumerate", "--kind", "ncp", "--n", "2",
                       "--format", "ascii")
    assert code == 0 and "1 2" in out
    code, out, _ = run(capsys, "enumerate", "--kind", "pt", "--n", "2",
                       "--format", "ascii")
    assert code == 0 and out.strip()


def test_map_phi_golden(capsys):
    code, out, _ = run(capsys, "map", "--name", "phi",
                       "--input", "((|,|),|)")
    assert code == 0
    assert out.strip() == "[[1],[2]]"


def test_map_output_feeds_back_as_input(capsys):
    code, out, _ = run(capsys, "map", "--name", "phi", "--input", "(|,(|,|))")
    assert code == 0
    code, back, _ = run(capsys, "map", "--name", "phi_inv",
                        "--input", out.strip())
    assert code == 0
    assert json.loads(back) == "(|,(|,|))"


def test_map_between_arbitrary_families(capsys):
    code, out, _ = run(capsys, "map", "--from", "y", "--to", "ndpf",
                       "--input", "((|,|),|)")
    assert code == 0
    assert isinstance(json.loads(out), list)


def test_map_rejects_conflicting_selectors(capsys):
    code, _, err = run(capsys, "map", "--name", "phi", "--from", "y",
                       "--to", "ncp1", "--input", "(|,|)")
    assert code == 3 and "excludes" in err


def test_map_rejects_wrong_family_member(capsys):
    code, _, err = run(capsys, "map", "--name", "phi",
                       "--input", "[[1,3],[2,4]]")
    assert code == 3


def test_rmap_golden(capsys):
    code, out, _ = run(capsys, "rmap", "--input", "(|,|)")
    assert code == 0
    assert out.strip() == "((|,|),|)"


def test_kreweras_golden(capsys):
    code, out, _ = run(capsys, "kreweras",
                       "--input", "[[1,2],[3,6,8],[4],[5],[7]]")
    assert code == 0
    assert json.loads(out) == [[1], [2, 8], [3, 4, 5], [6, 7]]


def test_kreweras_rejects_crossing(capsys):
    code, _, err = run(capsys, "kreweras", "--input", "[[1,3],[2,4]]")
    assert code == 3 and "noncrossing" in err


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "enumerate", "--kind", "polygons", "--n", "1")[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys)[0] == 2


def test_missing_file_exits_three(capsys):
    code, _, err = run(capsys, "stransform", "--f", "no-such-file.json")
    assert code == 3 and "error:" in err


@pytest.fixture()
def series_files(tmp_path):
    rng = random.Random(5)
    paths = {}
    for name in ("ka", "kb"):
        spec = CumulantSpec(random_series(rng, 2, 3, "gi", bound=2))
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(spec.to_json()))
        paths[name] = str(p)
    f = random_series(rng, 2, 3, "gi", bound=2)
    p = tmp_path / "f.json"
    p.write_text(json.dumps(f.to_json()))
    paths["f"] = str(p)
    return paths


def test_convolve_and_transform_emit_valid_series(capsys, series_files):
    code, out, _ = run(capsys, "convolve", "--variant", "box",
                       "--f", series_files["ka"], "--g", series_files["kb"])
    assert code == 0
    assert TruncSeries.from_json(json.loads(out)).N == 3

    code, out, _ = run(capsys, "stransform", "--f", series_files["f"])
    assert code == 0
    assert TruncSeries.from_json(json.loads(out)).N == 2


def test_convolve_rejects_wrong_class_for_transform(capsys, series_files,
                                                    tmp_path):
    bad = random_series(random.Random(6), 2, 3, "ginv")
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad.to_json()))
    code, _, err = run(capsys, "stransform", "--f", str(p))
    assert code == 3


def test_moment_cumulant_round_trip_through_files(capsys, series_files,
                                                  tmp_path):
    code, out, _ = run(capsys, "moments", "--cumulants", series_files["ka"])
    assert code == 0
    m = tmp_path / "m.json"
    m.write_text(out)
    code, out, _ = run(capsys, "cumulants", "--moments", str(m))
    assert code == 0
    assert json.loads(out) == json.loads(open(series_files["ka"]).read())


def test_product_with_check_passes(capsys, series_files):
    code, out, _ = run(capsys, "product", "--ka", series_files["ka"],
                       "--kb", series_files["kb"], "--order", "2", "--check")
    assert code == 0
    payload = json.loads(out)
    assert payload["check"]["status"] == "pass"
    assert TruncSeries.from_json(payload["product"]).N == 2


def test_verify_exit_zero_and_report_shape(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "operad", "--order", "2",
                       "--trials", "1", "--seed", "0")
    assert code == 0
    report = json.loads(out)
    assert report["suite"] == "operad" and report["status"] == "pass"
    assert {"id", "statement", "status"} <= set(report["checks"][0])


def test_verify_seed_comes_from_the_environment(capsys, monkeypatch):
    monkeypatch.setenv("FREECONV_SEED", "77")
    code, out, _ = run(capsys, "verify", "--suite", "operad", "--order", "2",
                       "--trials", "1")
    assert code == 0 and json.loads(out)["seed"] == 77
    # --seed wins over the environment
    code, out, _ = run(capsys, "verify", "--suite", "operad", "--order", "2",
                       "--trials", "1", "--seed", "3")
    assert json.loads(out)["seed"] == 3


def test_verify_output_is_deterministic(capsys):
    argv = ("verify", "--suite", "bijections", "--order", "3", "--seed", "1")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    a, b = json.loads(first), json.loads(second)
    a.pop("elapsed"), b.pop("elapsed")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
