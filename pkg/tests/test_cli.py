import json

import pytest

from yangbaxter import braces, fileio, groups
from yangbaxter.cli import main


@pytest.fixture()
def sol_file(tmp_path, sol4_irr):
    path = tmp_path / "sol.txt"
    path.write_text(fileio.solution_to_text(sol4_irr))
    return str(path)


@pytest.fixture()
def sol5_file(tmp_path, sol5_mp):
    path = tmp_path / "sol57.txt"
    path.write_text(fileio.solution_to_text(sol5_mp))
    return str(path)


@pytest.fixture()
def brace_file(tmp_path):
    A = braces.make_trivial_brace(groups.symmetric_group(3))
    path = tmp_path / "brace.txt"
    path.write_text(fileio.brace_to_text(A))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_valid_solution(capsys, sol_file):
    code, out, _ = run_cli(capsys, "verify", sol_file)
    assert code == 0
    assert "involutive: true" in out


def test_verify_structured(capsys, sol_file):
    code, out, _ = run_cli(capsys, "verify", sol_file, "--format", "structured")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["ok"] is True
    assert payload["involutive"] is True


def test_verify_corrupted_solution(capsys, tmp_path, sol4_irr):
    text = fileio.solution_to_text(sol4_irr).replace("1 0 2 3", "1 1 2 3", 1)
    path = tmp_path / "bad.txt"
    path.write_text(text)
    code, out, _ = run_cli(capsys, "verify", str(path))
    assert code == 1
    assert "non-degenerate" in out


def test_verify_missing_file(capsys):
    code, _, _ = run_cli(capsys, "verify", "/no/such/file.txt")
    assert code == 2


def test_analyze_size5_tower(capsys, sol5_file):
    code, out, _ = run_cli(capsys, "analyze", sol5_file)
    assert code == 0
    assert "multipermutation_level: 3" in out


def test_analyze_size4_irretractable(capsys, sol_file):
    code, out, _ = run_cli(capsys, "analyze", sol_file)
    assert code == 0
    assert "multipermutation_level: none" in out
    assert "indecomposable: true" in out


def test_analyze_brace_r_order(capsys, brace_file):
    code, out, _ = run_cli(capsys, "analyze", brace_file)
    assert code == 0
    assert "solution_order_measured: 12" in out
    assert "solution_order_predicted: 12" in out


def test_enumerate_count_only_involutive(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate", "--size", "4", "--involutive", "--count-only"
    )
    assert code == 0
    assert out.strip() == "23"


def test_enumerate_count_only_all(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--size", "3", "--count-only")
    assert code == 0
    assert "involutive: 5" in out
    assert "non-involutive: 21" in out
    assert "total: 26" in out


def test_enumerate_jobs_determinism(capsys):
    code1, out1, _ = run_cli(
        capsys, "enumerate", "--size", "2", "--count-only", "--jobs", "4"
    )
    code2, out2, _ = run_cli(
        capsys, "enumerate", "--size", "2", "--count-only", "--jobs", "1"
    )
    assert code1 == code2 == 0
    assert out1 == out2


def test_enumerate_stream_round_trip(capsys, tmp_path):
    out_file = tmp_path / "stream.txt"
    code, _, _ = run_cli(
        capsys, "enumerate", "--size", "3", "--involutive", "--out", str(out_file)
    )
    assert code == 0
    stream = fileio.parse_text(out_file.read_text())
    assert stream.header.count == 5
    assert len(stream.solutions) == 5
    # round trip: writing the parsed stream again is byte-identical
    again = fileio.stream_to_text(stream.header, stream.solutions)
    assert again == out_file.read_text()


def test_enumerate_out_dir(capsys, tmp_path):
    out_dir = tmp_path / "classes"
    code, _, _ = run_cli(
        capsys, "enumerate", "--size", "2", "--out-dir", str(out_dir)
    )
    assert code == 0
    files = sorted(out_dir.glob("*.txt"))
    assert len(files) == 4
    for f in files:
        fileio.parse_text(f.read_text())  # each one parses as a solution


def test_enumerate_seed_recorded(capsys, tmp_path):
    out_file = tmp_path / "s.txt"
    code, out, _ = run_cli(
        capsys, "enumerate", "--size", "2", "--involutive", "--seed", "7",
        "--out", str(out_file),
    )
    assert code == 0
    assert "seed: 7 (no-op)" in out
    assert "seed: 7 (no-op)" in out_file.read_text()


def test_enumerate_cap_error(capsys):
    code, _, err = run_cli(capsys, "enumerate", "--size", "9", "--involutive",
                           "--count-only")
    assert code == 1
    assert "cap" in err


def test_repr_prints_matrices(capsys, sol_file):
    code, out, _ = run_cli(capsys, "repr", sol_file)
    assert code == 0
    assert "x_1:" in out
    assert "0 1 0 0 1" in out


def test_repr_rejects_noninvolutive(capsys, tmp_path, sol_3_noninvolutive):
    path = tmp_path / "ni.txt"
    path.write_text(fileio.solution_to_text(sol_3_noninvolutive))
    code, _, err = run_cli(capsys, "repr", str(path))
    assert code == 1
    assert "involutive" in err


def test_growth_with_guess(capsys, tmp_path):
    from yangbaxter import solutions

    path = tmp_path / "triv1.txt"
    path.write_text(fileio.solution_to_text(solutions.make_trivial(1)))
    code, out, _ = run_cli(capsys, "growth", str(path), "--radius", "5", "--guess")
    assert code == 0
    assert "0 1" in out and "5 11" in out
    assert "guess (conjecture): (1 + t) / (1 - 2*t + t^2)" in out


def test_upp_falsified_on_size4(capsys, sol_file):
    code, out, _ = run_cli(capsys, "upp", sol_file, "--x", "1 2'", "--y", "1 3'")
    assert code == 0
    assert "FALSIFIED" in out
    assert "multiplicity table" in out


def test_brace_verify_and_analyze(capsys, brace_file):
    code, out, _ = run_cli(capsys, "brace", "verify", brace_file)
    assert code == 0
    code, out, _ = run_cli(capsys, "brace", "analyze", brace_file)
    assert code == 0
    assert "right_nilpotency: 2" in out


def test_brace_solution_output_parses(capsys, brace_file):
    code, out, _ = run_cli(capsys, "brace", "solution", brace_file)
    assert code == 0
    parsed = fileio.parse_text(out)
    assert parsed.size == 6


def test_brace_ring_round_trip(capsys, tmp_path):
    A = braces.brace_from_radical_ring(braces.mod4_radical_ring())
    brace_path = tmp_path / "b.txt"
    brace_path.write_text(fileio.brace_to_text(A))
    code, out, _ = run_cli(capsys, "brace", "ring", str(brace_path))
    assert code == 0
    ring = fileio.parse_text(out)
    ring_path = tmp_path / "r.txt"
    ring_path.write_text(fileio.ring_to_text(ring))
    code, out, _ = run_cli(capsys, "brace", "ring", str(ring_path))
    assert code == 0
    back = fileio.parse_text(out)
    assert back.add == A.add and back.mul == A.mul


def test_brace_ring_rejects_one_sided(capsys, tmp_path):
    # a brace that is not two-sided: order 6 with nonabelian multiplicative part
    from yangbaxter.enumeration import enumerate_braces

    one_sided = next(
        A for A in enumerate_braces(6)
        if not braces.is_two_sided(A)
    )
    path = tmp_path / "os.txt"
    path.write_text(fileio.brace_to_text(one_sided))
    code, _, err = run_cli(capsys, "brace", "ring", str(path))
    assert code == 1


def test_checkpoint_env_var_override(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("YBX_CHECKPOINT_DIR", str(tmp_path))
    code, out, _ = run_cli(
        capsys, "enumerate", "--size", "3", "--involutive", "--count-only"
    )
    assert code == 0
    assert out.strip() == "5"
    from yangbaxter.enumeration import subtree_tasks

    assert len(list(tmp_path.glob("involutive-n3-task*.json"))) == len(subtree_tasks(3))


def test_growth_radius_4_notes_guess_needs_more(capsys, tmp_path):
    from yangbaxter import solutions

    path = tmp_path / "triv1.txt"
    path.write_text(fileio.solution_to_text(solutions.make_trivial(1)))
    code, out, _ = run_cli(capsys, "growth", str(path), "--radius", "4", "--guess")
    assert code == 0
    assert "4 9" in out
    assert "radius >= 5" in out
