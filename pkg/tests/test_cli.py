import json

import pytest

from signedkron.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def report_of(out: str) -> dict:
    wrapper = json.loads(out)
    assert wrapper["tool"] == "signedkron"
    assert "request" in wrapper
    return wrapper["report"]


def test_enumerate_csv(capsys):
    code, out = run_cli(capsys, "enumerate", "--k", "0", "--l", "4",
                        "--class", "p2", "--format", "csv")
    assert code == 0
    header, *rows = out.strip().split("\n")
    assert header.startswith("# signedkron ")
    assert "request=" in header
    assert rows == ["class,k,l,count", "p2,0,4,3"]


def test_enumerate_json_lists_partitions(capsys):
    code, out = run_cli(capsys, "enumerate", "--k", "0", "--l", "2",
                        "--format", "json")
    assert code == 0
    data = report_of(out)
    assert data["count"] == 1
    assert data["partitions"] == [{"k": 0, "l": 2, "blocks": [["d1", "d2"]]}]


def test_text_header_lines(capsys):
    code, out = run_cli(capsys, "liedim", "--family", "bbar", "--p", "2",
                        "--q", "0", "--eps", "-1")
    assert code == 0
    lines = out.split("\n")
    assert lines[0].startswith("tool: signedkron ")
    assert lines[1].startswith("request: ")
    assert lines[2] == "dimension: 3"


def test_build_t_named(capsys):
    code, out = run_cli(capsys, "build-t", "--named", "cup",
                        "--p", "1", "--q", "0", "--eps", "-1",
                        "--format", "json")
    assert code == 0
    assert report_of(out)["nnz"] == 2


def test_build_t_inline_json(capsys):
    code, out = run_cli(capsys, "build-t", "--json",
                        '{"k":1,"l":1,"blocks":[["u1","d1"]]}',
                        "--p", "0", "--q", "3", "--eps", "1",
                        "--format", "json")
    assert code == 0
    assert report_of(out)["nnz"] == 3


def test_build_t_csv(capsys):
    code, out = run_cli(capsys, "build-t", "--named", "cup",
                        "--p", "1", "--q", "0", "--eps", "-1",
                        "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[1] == "out,in,val"
    assert lines[2] == "1 2,-,-1"
    assert lines[3] == "2 1,-,1"


def test_delta(capsys):
    code, out = run_cli(capsys, "delta", "--named", "onethreeblock",
                        "--p", "1", "--q", "0", "--eps", "-1",
                        "--upper", "1", "--lower", "1,2,1")
    assert code == 0
    assert out.endswith("value: -1\n")


def test_laws_exit_zero(capsys):
    code, out = run_cli(capsys, "laws", "--p", "1", "--q", "0", "--eps", "-1",
                        "--max-points", "4")
    assert code == 0
    assert "identity_ok: True" in out


def test_laws_csv_lists_pairs(capsys):
    code, out = run_cli(capsys, "laws", "--p", "1", "--q", "0", "--eps", "-1",
                        "--max-points", "4", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[1] == "sigma,pi,verdict,scalar,exponent"
    assert len(lines) == 2 + 30  # 30 composable pairs at this scope
    assert sum(1 for line in lines[2:] if ",scalar," in line) == 28


def test_closure_compare_equal(capsys):
    code, out = run_cli(capsys, "closure", "--gen", "onethreeblock",
                        "--bound", "4", "--compare", "nceven")
    assert code == 0
    assert "verdict,equal" in out


def test_closure_compare_failure_exit(capsys):
    code, out = run_cli(capsys, "closure", "--bound", "4",
                        "--compare", "peven")
    assert code == 1
    assert "verdict,proper-subset" in out


def test_sample(capsys):
    code, out = run_cli(capsys, "sample", "--family", "obar", "--p", "2",
                        "--q", "1", "--eps", "1", "--seed", "42",
                        "--count", "2", "--format", "json")
    assert code == 0
    data = report_of(out)
    assert data["max_residual"] <= 1e-10
    assert len(data["elements"]) == 2


def test_enum_sbar(capsys):
    code, out = run_cli(capsys, "enum-sbar", "--p", "2", "--q", "0",
                        "--eps", "1")
    assert code == 0
    assert "count: 8" in out and "expected: 8" in out


def test_gamma(capsys):
    code, out = run_cli(capsys, "gamma", "--p", "2", "--q", "1", "--eps", "1")
    assert code == 0
    assert "residual_c_j_c_t" in out


def test_homreport_csv(capsys):
    code, out = run_cli(capsys, "homreport", "--family", "obar",
                        "--class", "p2", "--k", "0", "--l", "4",
                        "--p", "1", "--q", "0", "--eps", "-1",
                        "--samples", "16", "--seed", "7", "--format", "csv")
    assert code == 0
    comment, header, row = out.strip().split("\n")
    assert comment.startswith("# signedkron ")
    assert header == ("family,class,k,l,p,q,eps,span_rank,commutant_dim,"
                      "residual,verdict")
    fields = row.split(",")
    assert fields[0] == "obar" and fields[-1] == "equal"
    assert fields[7] == "2" and fields[8] == "2"


def test_space_subcommand(capsys):
    code, out = run_cli(capsys, "space", "--p", "1", "--q", "0",
                        "--eps", "-1", "--include-j", "--format", "json")
    assert code == 0
    data = report_of(out)
    assert data["j"] == [[0, 1], [-1, 0]]
    assert data["bar"] == [2, 1]


def test_usage_error_exit_two():
    with pytest.raises(SystemExit) as err:
        main(["enumerate", "--k", "0"])
    assert err.value.code == 2


def test_unknown_subcommand_exit_two():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run_cli(capsys, "enumerate", "--k", "0", "--l", "4",
                        "--format", "json", "--out", str(target))
    assert code == 0
    assert out == ""
    wrapper = json.loads(target.read_text())
    assert wrapper["report"]["count"] == 4
    assert wrapper["request"]["body"]["k"] == 0


def test_partition_file_input(tmp_path, capsys):
    path = tmp_path / "part.json"
    path.write_text('{"k":0,"l":2,"blocks":[["d1","d2"]]}')
    code, out = run_cli(capsys, "build-t", "--file", str(path),
                        "--p", "1", "--q", "0", "--eps", "1",
                        "--format", "json")
    assert code == 0
    assert report_of(out)["nnz"] == 2


def test_service_error_maps_to_exit_two(capsys):
    code, out = run_cli(capsys, "build-t", "--json",
                        '{"k":1,"l":1,"blocks":[["u1"],["d1"]]}',
                        "--p", "1", "--q", "0", "--eps", "-1")
    assert code == 2


def test_repeated_runs_byte_identical(capsys):
    argv = ["homreport", "--family", "obar", "--class", "p2", "--k", "2",
            "--l", "2", "--p", "1", "--q", "0", "--eps", "-1",
            "--samples", "16", "--seed", "3", "--format", "json"]
    _, a = run_cli(capsys, *argv)
    _, b = run_cli(capsys, *argv)
    assert a == b
