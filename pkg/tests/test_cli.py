import json
import subprocess
import sys

import pytest

from dichromatic.claims import ClaimConfig, recheck_witness, reports_text, search_delta0, verify_claims
from dichromatic.cli import main
from dichromatic.coloring import is_valid, parse_coloring
from dichromatic.digraph import format_digraph, parse_digraph
from dichromatic.exact import GuardExceeded
from dichromatic.generators import gen_fano


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def fano_file(tmp_path):
    p = tmp_path / "fano.txt"
    p.write_text(format_digraph(gen_fano()))
    return str(p)


def test_gen_and_chi(run, tmp_path):
    code, out, _ = run("gen", "fano")
    assert code == 0
    p = tmp_path / "f.txt"
    p.write_text(out)
    code, out, _ = run("chi", str(p))
    assert (code, out.strip()) == (0, "3")


def test_chi_json(run, fano_file):
    code, out, _ = run("chi", fano_file, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["chi"] == 3
    assert is_valid(gen_fano(), parse_coloring("".join(f"{v} {c}\n" for v, c in enumerate(doc["coloring"])), 7))


def test_check_invalid_coloring(run, fano_file, tmp_path):
    col = tmp_path / "c.txt"
    col.write_text("".join(f"{v} 0\n" for v in range(7)))
    code, out, _ = run("check", fano_file, "--coloring", str(col))
    assert code == 1
    assert "valid=false" in out and "cycle=" in out


def test_check_valid_coloring(run, fano_file, tmp_path):
    code, out, _ = run("color", fano_file, "--algo", "peel")
    col = tmp_path / "c.txt"
    col.write_text(out)
    code, out, _ = run("check", fano_file, "--coloring", str(col))
    assert code == 0 and "valid=true" in out


def test_color_greedy_on_k4(run, tmp_path):
    _, text, _ = run("gen", "bidirected_complete", "4")
    p = tmp_path / "k4.txt"
    p.write_text(text)
    code, out, _ = run("color", str(p), "--algo", "greedy-out")
    assert code == 0
    col = parse_coloring(out, 4)
    assert col.num_colors_used() == 4
    assert "# nl_bound=4" in out


@pytest.mark.parametrize("algo", ["greedy-out", "greedy-in", "peel", "lll"])
def test_color_algorithms_produce_valid_colorings(run, fano_file, algo):
    code, out, _ = run("color", fano_file, "--algo", algo)
    assert code == 0
    assert is_valid(gen_fano(), parse_coloring(out, 7))


def test_color_json(run, fano_file):
    code, out, _ = run("color", fano_file, "--json")
    doc = json.loads(out)
    assert doc["bounds"]["brooks_list_bound"] == 3 and len(doc["coloring"]) == 7


def test_color_extend(run, fano_file, tmp_path):
    partial = tmp_path / "p.txt"
    partial.write_text("0 0\n1 1\n2 -\n3 -\n4 -\n5 -\n6 -\n")
    code, out, _ = run("color", fano_file, "--algo", "extend", "--coloring", str(partial))
    assert code == 0
    col = parse_coloring(out, 7)
    assert col.is_total and col.colors[:2] == (0, 1)


def test_color_extend_needs_coloring(run, fano_file):
    code, _, err = run("color", fano_file, "--algo", "extend")
    assert code == 2 and "--coloring" in err


def test_stats(run, fano_file):
    code, out, _ = run("stats", fano_file)
    fields = dict(line.split("=") for line in out.split())
    assert code == 0 and fields["delta_tilde"] == "3.0" and fields["digons"] == "0"


def test_blocks(run, tmp_path):
    _, text, _ = run("gen", "shared_triangles")
    p = tmp_path / "s.txt"
    p.write_text(text)
    code, out, _ = run("blocks", str(p), "--json")
    doc = json.loads(out)
    assert code == 0 and [b["class"] for b in doc] == ["directed_cycle(3)"] * 2


def test_obstruction(run, tmp_path):
    _, text, _ = run("gen", "bidirected_cycle", "5")
    p = tmp_path / "c5.txt"
    p.write_text(text)
    code, out, _ = run("obstruction", str(p), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["obstruction_k"] == 3 and doc["critical_obstruction"]
    assert doc["components"][0]["candidate"]


def test_list_chi(run, tmp_path):
    _, text, _ = run("gen", "directed_cycle", "3")
    p = tmp_path / "c3.txt"
    p.write_text(text)
    lists = tmp_path / "l.txt"
    lists.write_text("0: 0\n1: 0\n2: 0\n")
    code, out, _ = run("list-chi", str(p), "--lists", str(lists))
    assert code == 1 and "false" in out
    lists.write_text("0: 0\n1: 0\n2: 1\n")
    code, out, _ = run("list-chi", str(p), "--lists", str(lists))
    assert code == 0
    code, out, _ = run("list-chi", str(p), "--k", "1")
    assert code == 1 and "choosable=false" in out
    code, out, _ = run("list-chi", str(p))
    assert code == 0 and out.strip() == "choice_number=2"


def test_malformed_input_exit_2(run, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("3 1\n0 0\n")
    code, _, err = run("chi", str(p))
    assert code == 2 and "loop" in err


def test_missing_file_and_unknown_flag(run, fano_file):
    assert run("chi", "/nonexistent/x")[0] == 2
    assert run("chi", fano_file, "--bogus")[0] == 2
    assert run("frobnicate")[0] == 2


def test_resource_limit_exit_3(run, tmp_path):
    _, text, _ = run("gen", "random", "14", "50", "--seed", "2")
    p = tmp_path / "r.txt"
    p.write_text(text)
    code, _, err = run("chi", str(p), "--limits-nodes", "3")
    assert code == 3 and "limit" in err


def test_guard_exit_3(run, tmp_path):
    _, text, _ = run("gen", "directed_cycle", "9")
    p = tmp_path / "c9.txt"
    p.write_text(text)
    assert run("list-chi", str(p), "--k", "2")[0] == 3


def test_gen_bad_params(run):
    assert run("gen", "directed_cycle", "1")[0] == 2
    assert run("gen", "rotational", "9", "1", "8", "2", "3")[0] == 2
    assert run("gen", "regular", "5", "3")[0] == 2


def test_gen_seeded(run):
    a = run("gen", "regular", "21", "5", "--seed", "4")[1]
    b = run("gen", "regular", "21", "5", "--seed", "4")[1]
    assert a == b
    D = parse_digraph(a)
    assert all(len(o) == 5 for o in D.out_adj)


def test_search_figure1(run):
    code, out, _ = run("search-figure1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["class_count"] == 3 and doc["fano_is_chi3"]


def test_search_delta0_writes_witnesses(run, tmp_path):
    out_dir = tmp_path / "w"
    code, out, _ = run("search-delta0", "--target", "3", "--samples", "12", "--witness-dir", str(out_dir))
    assert code == 0
    files = sorted(out_dir.iterdir())
    assert files
    D = parse_digraph((out_dir / "counterexample_0.digraph").read_text())
    code, out, _ = run("check", str(out_dir / "counterexample_0.digraph"), "--coloring", str(out_dir / "counterexample_0.coloring"))
    assert code == 0 and D.n >= 7


def test_verify_claims_subset(run):
    code, out, _ = run("verify-claims", "--only", "C01", "C05", "C14", "--structure-max-n", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert "status=confirmed" in lines[0] and "status=skipped" in lines[2]


def test_module_entry_point(fano_file):
    proc = subprocess.run([sys.executable, "-m", "dichromatic", "chi", fano_file], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "3"


def test_stdin_input(fano_file):
    text = open(fano_file).read()
    proc = subprocess.run([sys.executable, "-m", "dichromatic", "stats", "-"], input=text, capture_output=True, text=True)
    assert proc.returncode == 0 and "n=7" in proc.stdout


# --- claims harness --------------------------------------------------------


def test_verify_claims_byte_identical():
    cfg = ClaimConfig(samples=50, random_instances=30, structure_max_n=3)
    a = reports_text(verify_claims(cfg))
    b = reports_text(verify_claims(cfg))
    assert a == b
    assert "status=refuted" not in a


def test_search_delta0_witnesses_recheck():
    for target in (2, 3):
        rep = search_delta0("sample", target, samples=12, seed=1)
        assert rep["counterexample_count"] > 0
        assert all(recheck_witness(cx, target) for cx in rep["counterexamples"])


def test_search_delta0_shared_triangles_found():
    rep = search_delta0("sample", 2, samples=0)
    assert any(cx["name"] == "shared_triangles" for cx in rep["counterexamples"])


def test_search_delta0_guard():
    with pytest.raises(GuardExceeded):
        search_delta0("exhaustive", 3)
