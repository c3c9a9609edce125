"""End-to-end tests of the command line through main()."""

import json

import numpy as np
import pytest

import src.cli.commands as commands
from main import main
from src.validation import run_benchmark


def _number(text):
    return float(text.strip().split()[0])


# =============================================================================
# embed
# =============================================================================

def test_embed_origin_is_zero(clouds_dir, tmp_path):
    out = tmp_path / "embedding.json"
    code = main(["embed", str(clouds_dir / "origin.csv"), "--seed", "3", "--m", "9", "--out", str(out)])
    assert code == 0
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["params"] == {"seed": 3, "d": 3, "m": 9, "variant": "basic"}
    entry = document["embeddings"][0]
    assert entry["weights"] == "uniform"
    assert entry["coords"] == [0.0] * 9


def test_embed_is_byte_identical_for_a_seed(clouds_dir, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    args = ["embed", str(clouds_dir / "triangle.csv"), str(clouds_dir / "triangle_shifted.csv"), "--seed", "42"]
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_embed_default_m_and_printed_seed(clouds_dir, capsys):
    assert main(["embed", str(clouds_dir / "triangle.csv")]) == 0
    captured = capsys.readouterr()
    document = json.loads(captured.out)
    assert document["params"]["m"] == 2 * 3 * 2 + 1
    assert f"--seed {document['params']['seed']}" in captured.err


def test_embed_weight_column_and_mass_variant(clouds_dir, capsys):
    code = main(["embed", str(clouds_dir / "light_measure.csv"), "--seed", "1", "--variant", "mass-reg"])
    assert code == 0
    document = json.loads(capsys.readouterr().out)
    entry = document["embeddings"][0]
    assert entry["weights"] == "file"
    assert entry["coords"][0] == pytest.approx(0.5)
    assert document["params"]["rho"] == pytest.approx(0.5)


def test_embed_basic_rejects_light_measure(clouds_dir, capsys):
    assert main(["embed", str(clouds_dir / "light_measure.csv"), "--seed", "1"]) == 2
    assert "mass-reg" in capsys.readouterr().err


def test_embed_warns_about_cardinality(clouds_dir, tmp_path, capsys):
    pair = tmp_path / "pair.csv"
    pair.write_text("x1\n0.1\n0.9\n", encoding="utf-8")
    with pytest.warns(UserWarning, match="mass-reg"):
        assert main(["embed", str(clouds_dir / "line_a.csv"), str(pair), "--seed", "1"]) == 0


def test_embed_parse_error_has_line_number(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x1,x2\n0,0\n0,zero\n", encoding="utf-8")
    assert main(["embed", str(bad), "--seed", "1"]) == 2
    assert f"{bad}:3" in capsys.readouterr().err


def test_embed_dimension_mismatch(clouds_dir):
    assert main(["embed", str(clouds_dir / "origin.csv"), str(clouds_dir / "triangle.csv"), "--seed", "1"]) == 3


def test_flag_out_of_range(clouds_dir):
    assert main(["embed", str(clouds_dir / "origin.csv"), "--m", "0"]) == 2
    assert main(["embed", str(clouds_dir / "origin.csv"), "--rho", "-1"]) == 2


def test_unknown_variant_is_a_usage_error(clouds_dir):
    with pytest.raises(SystemExit) as info:
        main(["embed", str(clouds_dir / "origin.csv"), "--variant", "fancy"])
    assert info.value.code == 2


# =============================================================================
# distance and sw
# =============================================================================

def test_distance_of_translated_triangle(clouds_dir, capsys):
    assert main(["distance", str(clouds_dir / "triangle.csv"), str(clouds_dir / "triangle_shifted.csv")]) == 0
    assert _number(capsys.readouterr().out) == pytest.approx(1.0, rel=1e-10)


def test_distance_identical_files(clouds_dir, capsys):
    path = str(clouds_dir / "triangle.csv")
    assert main(["distance", path, path]) == 0
    assert _number(capsys.readouterr().out) == pytest.approx(0.0, abs=1e-7)


def test_distance_matches_exact_1d(clouds_dir, capsys):
    files = [str(clouds_dir / "line_a.csv"), str(clouds_dir / "line_b.csv")]
    for p in ("1", "2", "3"):
        assert main(["distance", *files, "--p", p]) == 0
        exact = _number(capsys.readouterr().out)
        assert main(["sw", *files, "--exact-1d", "--p", p]) == 0
        assert _number(capsys.readouterr().out) == pytest.approx(exact, rel=1e-9)


def test_distance_infinity_needs_one_dimension(clouds_dir, capsys):
    files = [str(clouds_dir / "line_a.csv"), str(clouds_dir / "line_b.csv")]
    assert main(["distance", *files, "--p", "inf"]) == 0
    assert _number(capsys.readouterr().out) > 0
    triangles = [str(clouds_dir / "triangle.csv"), str(clouds_dir / "triangle_shifted.csv")]
    assert main(["distance", *triangles, "--p", "inf"]) == 3


def test_distance_plan_dump(clouds_dir, tmp_path):
    plan = tmp_path / "plan.json"
    code = main(["distance", str(clouds_dir / "triangle.csv"), str(clouds_dir / "triangle_shifted.csv"),
                 "--plan", str(plan)])
    assert code == 0
    data = json.loads(plan.read_text(encoding="utf-8"))
    assert data["cost"] == pytest.approx(1.0)
    assert np.array(data["plan"]).sum() == pytest.approx(1.0)


def test_distance_oversize_input(tmp_path, capsys):
    big = tmp_path / "big.csv"
    big.write_text("x1\n" + "\n".join(str(i / 100) for i in range(65)) + "\n", encoding="utf-8")
    small = tmp_path / "small.csv"
    small.write_text("x1\n0\n", encoding="utf-8")
    assert main(["distance", str(big), str(small)]) == 4
    assert "sw" in capsys.readouterr().err


def test_distance_needs_two_inputs(clouds_dir):
    with pytest.raises(SystemExit):
        main(["distance", str(clouds_dir / "triangle.csv")])


def test_sw_identical_inputs(clouds_dir, capsys):
    path = str(clouds_dir / "triangle.csv")
    assert main(["sw", path, path, "--seed", "1"]) == 0
    assert capsys.readouterr().out.strip() == "0 +/- 0"


def test_sw_monte_carlo_on_collinear_pair(clouds_dir, capsys):
    files = [str(clouds_dir / "diagonal_2.csv"), str(clouds_dir / "diagonal_3.csv")]
    assert main(["sw", *files, "--seed", "5", "--L", "100000"]) == 0
    estimate, _, std_error = capsys.readouterr().out.split()
    target = np.sqrt(1 / 72)
    assert abs(float(estimate) ** 2 - target ** 2) <= 3.0 * float(std_error)


def test_sw_through_embedding(clouds_dir, capsys):
    files = [str(clouds_dir / "diagonal_2.csv"), str(clouds_dir / "diagonal_3.csv")]
    assert main(["sw", *files, "--seed", "6", "--fsw", "--m", "10000"]) == 0
    assert _number(capsys.readouterr().out) == pytest.approx(np.sqrt(1 / 72), rel=0.05)


def test_sw_modes_are_exclusive(clouds_dir):
    files = [str(clouds_dir / "line_a.csv"), str(clouds_dir / "line_b.csv")]
    with pytest.raises(SystemExit):
        main(["sw", *files, "--fsw", "--exact-1d"])


# =============================================================================
# validate and bench
# =============================================================================

def test_validate_empty_selection(tmp_path):
    out = tmp_path / "report.json"
    assert main(["validate", "--checks", "--out", str(out)]) == 0
    assert json.loads(out.read_text(encoding="utf-8")) == []


def test_validate_reports_failure(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["validate", "--checks", "boundedness", "--bounded-constant", "1.5", "--out", str(out)])
    assert code == 1
    assert "boundedness" in capsys.readouterr().err
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report[0]["passed"] is False


def test_validate_passing_check(tmp_path):
    out = tmp_path / "report.json"
    assert main(["validate", "--checks", "symmetries", "oracle_equivalence", "--seed", "9",
                 "--out", str(out)]) == 0
    names = [r["name"] for r in json.loads(out.read_text(encoding="utf-8"))]
    assert names == ["symmetries", "oracle_equivalence"]


@pytest.mark.slow
def test_bench_writes_table(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--d", "2", "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8").startswith("sweep,d,m,N,seconds,ratio")


def test_embed_warns_below_injectivity_threshold(clouds_dir):
    with pytest.warns(UserWarning, match="injectivity"):
        assert main(["embed", str(clouds_dir / "triangle.csv"), "--seed", "1", "--m", "4"]) == 0


def test_bench_prints_seed_and_verdict(monkeypatch, capsys):
    seen = {}

    def small_benchmark(seed, verbose, d=2):
        seen["seed"] = seed
        return run_benchmark(d=d, m_grid=[8, 16], n_grid=[4, 8], fixed_m=8, fixed_n=4, repeats=1, seed=seed)

    monkeypatch.setattr(commands, "run_benchmark", small_benchmark)
    assert main(["bench"]) == 0
    captured = capsys.readouterr()
    assert f"--seed {seen['seed']}" in captured.err
    assert "median_ratio" in captured.out
