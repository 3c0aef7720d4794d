import json
import subprocess
import sys

import pytest

from pluscodes.cli import main
from pluscodes.registry import golden_listing, parse_entry


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_registry_list(capsys):
    code, out, _ = run(capsys, "registry", "list")
    assert code == 0
    assert "steane-8-3-3" in out
    code, data = run_json(capsys, "registry", "list")
    assert data["count"] >= 20
    assert len(data["entries"]) == data["count"]
    assert data["count"] == int(out.strip().splitlines()[-1].split()[0])


def test_registry_list_by_kind(capsys):
    _, data = run_json(capsys, "registry", "list", "--kind", "signed")
    assert {e["kind"] for e in data["entries"]} == {"signed"}


def test_registry_show_steane(capsys):
    code, out, _ = run(capsys, "registry", "show", "steane-8-3-3")
    assert code == 0
    assert "[gcos]\n01010101\n00110011\n00001111\n11111111" in out
    assert "[signs]\n3333\n0F0F\n6666" in out


def test_registry_show_five_qubit_signs(capsys):
    code, data = run_json(capsys, "registry", "show", "laflamme-5-1-3")
    assert code == 0
    assert len(data["blocks"]["gcos"]) + len(data["blocks"]["d"]) == 4
    assert data["sign_vectors"] == ["00010100", "01110010"]


def test_verify_steane(capsys):
    code, out, _ = run(capsys, "verify", "steane-8-3-3", "--t", "1")
    assert code == 0 and "pass" in out and out.strip().endswith("PASS")
    code, data = run_json(capsys, "verify", "steane-8-3-3", "--t", "1")
    assert data["pass"] and data["results"][0]["oracle"]["conflict_count"] == 0
    code, out, _ = run(capsys, "verify", "steane-8-3-3", "--t", "2")
    assert code == 1 and out.strip().endswith("FAIL")


def test_verify_naive_route_agrees(capsys):
    _, fast = run_json(capsys, "verify", "steane-8-3-3", "--t", "2")
    _, naive = run_json(capsys, "verify", "steane-8-3-3", "--t", "2", "--method", "naive")
    assert fast["results"][0]["oracle"]["conflict_count"] == naive["results"][0]["oracle"]["conflict_count"]


def test_verify_golay_classical_only(capsys):
    code, data = run_json(capsys, "verify", "golay-23-1-7", "--classical-only")
    assert code == 0
    c = data["results"][0]["classical"]
    assert (c["d1"], c["d2"]) == (7, 7)


def test_verify_plus_uses_classical_budget(capsys):
    code, data = run_json(capsys, "verify", "plus-10-2-3")
    assert code == 0
    assert data["results"][0]["oracle"]["budget"] == {"tx": 1, "tz": 1}


def test_verify_beyond_the_oracle_cap(capsys):
    code, data = run_json(capsys, "verify", "plus-17-7-3")
    assert code == 0
    assert "skipped" in data["results"][0]["oracle"]
    code, _, err = run(capsys, "verify", "plus-17-7-3", "--t", "1")
    assert code == 2 and "oracle limited" in err


def test_verify_classical_record(capsys):
    code, data = run_json(capsys, "verify", "hamming-7-4-3")
    assert code == 0 and data["results"][0]["d"] == 3


def test_verify_record_file(capsys, tmp_path, registry):
    path = tmp_path / "mutant.code"
    text = registry["steane-8-3-3"].to_text().replace("3333", "3332")
    path.write_text(text)
    code, data = run_json(capsys, "verify", str(path), "--t", "1")
    assert code == 1
    assert data["results"][0]["oracle"]["conflict_count"] > 0


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "verify", "no-such-code")[0] == 2
    assert run(capsys, "verify", "steane-8-3-3")[0] == 2
    assert run(capsys, "verify", "steane-8-3-3", "--t", "1", "--tx", "1")[0] == 2
    assert run(capsys, "verify", "qr-48-0-12")[0] == 2
    assert run(capsys, "registry", "show")[0] == 2
    assert run(capsys, "search", "signs")[0] == 2
    assert run(capsys, "search", "displacements")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_expand_matches_golden(capsys):
    code, out, _ = run(capsys, "expand", "steane-8-3-3")
    assert code == 0
    assert out == golden_listing("steane-8-3-3")


def test_expand_json_and_plus(capsys):
    code, data = run_json(capsys, "expand", "laflamme-5-1-3")
    assert code == 0 and len(data["vectors"]) == 2
    assert all(len(v["terms"]) == 8 for v in data["vectors"])
    _, out, _ = run(capsys, "expand", "plus-7-1-3")
    assert "-|" not in out
    assert run(capsys, "expand", "hamming-7-4-3")[0] == 2
    assert run(capsys, "expand", "plus-27-16-3")[0] == 2


def test_table_nmin(capsys):
    code, data = run_json(capsys, "table", "nmin")
    assert code == 0
    first = {c["d_perp"]: c["n_min"] for c in data["cells"] if c["d"] == 3}
    assert [first[dp] for dp in (3, 5, 7, 9, 11, 13, 15)] == [6, 11, 14, 20, 23, 27, 30]
    assert {(c["d"], c["d_perp"]): c["n_min"] for c in data["cells"]}[(7, 7)] == 22
    _, out, _ = run(capsys, "table", "nmin")
    assert out.splitlines()[1].split()[:2] == ["3", "6"]


def test_table_bound(capsys):
    code, data = run_json(capsys, "table", "bound", "--K", "0", "1", "2", "3", "4", "5")
    assert [r["n_min"] for r in data["rows"]] == [4, 5, 7, 8, 9, 10]
    assert data["rows"][1]["perfect"]
    _, data = run_json(capsys, "table", "bound", "--K", "1", "--t", "2")
    assert data["rows"][0]["n_min"] == 10
    assert run(capsys, "table", "bound")[0] == 2


def test_search_signs_g8(capsys):
    code, data = run_json(capsys, "search", "signs", "--skeleton", "g8", "--t", "1", "--record", "found-8")
    assert code == 0 and data["found"]
    assert data["space_size"] == 32**4 and data["examined"] <= 2 * 32**4
    rec = parse_entry(data["record"])
    assert rec.provenance == "derived"
    assert rec.command.startswith("pluscodes search signs --skeleton g8")
    assert "--record" not in rec.command


def test_search_record_round_trips_through_verify(capsys, tmp_path):
    _, data = run_json(capsys, "search", "signs", "--skeleton", "g10", "--t", "1", "--record", "g10-hit")
    path = tmp_path / "g10.code"
    path.write_text(data["record"])
    assert run(capsys, "verify", str(path), "--t", "1")[0] == 0


def test_search_signs_no_result(capsys):
    code, out, _ = run(capsys, "search", "signs", "--skeleton", "g5", "--t", "1")
    assert code == 1 and "no result" in out


def test_search_displacements(capsys):
    code, data = run_json(capsys, "search", "displacements", "--check", "cyclic-10", "--K", "2", "--target", "3")
    assert code == 0 and data["params"]["d1"] == data["params"]["d2"] == 3
    code, data = run_json(
        capsys, "search", "displacements", "--cyclic", "0,3", "--r", "5", "--n", "19", "--K", "8", "--record", "c19"
    )
    assert code == 0
    assert parse_entry(data["record"]).build().K == 8
    code, _, _ = run(capsys, "search", "displacements", "--check", "hamming-form-10-6-3", "--K", "2")
    assert code == 1


def test_derived_series_command_reproduces_the_record(capsys, registry):
    e = registry["cyclic-plus-22-11-3"]
    argv = e.command.split()[1:]
    _, data = run_json(capsys, *argv)
    assert data["d_matrix"] == e.blocks["d"]


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "pluscodes.cli", "table", "bound", "--K", "1"], capture_output=True, text=True
    )
    assert out.returncode == 0 and "perfect" in out.stdout
