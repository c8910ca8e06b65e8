"""Command line behavior: exit codes, JSON round trips, renderings."""

import json
from pathlib import Path

from logrew.cli import main
import logrew.twocell as tc

from fixture_loops import SE_LOOPS, loop_cell

PRESENTATIONS = Path(__file__).resolve().parent.parent / "presentations"
SE = str(PRESENTATIONS / "se_monoid.txt")
AB = str(PRESENTATIONS / "ab_monoid.txt")
FREE = str(PRESENTATIONS / "free_monoid.txt")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_complete_published_fixture(capsys):
    code, out, _ = run(capsys, "complete", SE, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "complete"
    assert len(data["rules"]) == 6
    assert all(rule["provenance"] == "initial" for rule in data["rules"])


def test_complete_text_mode(capsys):
    code, out, _ = run(capsys, "complete", SE)
    assert code == 0
    assert "status: complete" in out
    assert "r1: e e -> e" in out


def test_complete_free_monoid(capsys):
    code, out, _ = run(capsys, "complete", FREE, "--json")
    assert code == 0
    assert json.loads(out)["rules"] == []


def test_complete_limit_exceeded(capsys, tmp_path):
    f = tmp_path / "loopy.txt"
    f.write_text("monoid\nletters: a b\norder: shortlex\nrules:\na b a = b a a\n")
    code, out, _ = run(capsys, "complete", str(f), "--json", "--limits", "3,64,64")
    assert code == 2
    data = json.loads(out)
    assert data["status"] == "limit"


def test_parse_error_exit_code(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("monoid\nletters: a\norder: shortlex\nrules:\na x = a\n")
    code, _, err = run(capsys, "complete", str(f))
    assert code == 1
    assert "parse error" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "complete", "/no/such/file.txt")
    assert code == 1


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", SE, "s s s e")
    assert code == 0
    assert out.strip() == "s e"
    code, out, _ = run(capsys, "nf", SE, "1")
    assert out.strip() == "1"


def test_reduce_emits_valid_log(capsys, se_init):
    code, out, _ = run(capsys, "reduce", SE, "e s e s e s", "--json")
    assert code == 0
    data = json.loads(out)
    cell = tc.cell_from_json(data)
    assert tc.validate(cell, se_init.rule_map) is None
    assert data["target"] == tc.word_to_str(tc.target(cell, se_init.rule_map))


def test_reduce_expand_uses_initial_rules_only(capsys, ab_init):
    code, out, _ = run(capsys, "reduce", AB, "a a b b", "--json", "--expand")
    assert code == 0
    cell = tc.cell_from_json(json.loads(out))
    assert tc.validate(cell, ab_init.rule_map) is None
    assert {step.rule for step in cell.steps} <= {"r1", "r2"}


def test_prove_equal_words(capsys, se_init):
    code, out, _ = run(capsys, "prove", SE, "s s s e", "s e", "--json")
    assert code == 0
    data = json.loads(out)
    cell = tc.cell_from_json(data)
    assert tc.validate(cell, se_init.rule_map) is None
    assert len(data["steps"]) == 1


def test_prove_not_equal(capsys):
    code, _, err = run(capsys, "prove", SE, "e", "s")
    assert code == 3
    assert "not equal" in err


def test_prove_verify_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "prove", SE, "e s e s e", "e s e", "--json", "--expand")
    assert code == 0
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    code, out, _ = run(capsys, "verify", SE, str(cert))
    assert code == 0
    assert out.startswith("ok:")


def test_verify_all_published_loops(capsys, tmp_path):
    for name in SE_LOOPS:
        cert = tmp_path / f"{name}.json"
        cert.write_text(json.dumps(tc.cell_to_json(loop_cell(name))))
        code, out, _ = run(capsys, "verify", SE, str(cert))
        assert code == 0, name


def test_verify_corrupted_certificate(capsys, tmp_path):
    data = tc.cell_to_json(loop_cell("se_1"))
    data["steps"][1]["suffix"] = "s"
    cert = tmp_path / "broken.json"
    cert.write_text(json.dumps(data))
    code, _, err = run(capsys, "verify", SE, str(cert))
    assert code == 4
    assert "step 1" in err


def test_verify_declared_target_mismatch(capsys, tmp_path):
    data = tc.cell_to_json(loop_cell("se_1"))
    data["target"] = "s e"
    cert = tmp_path / "mismatch.json"
    cert.write_text(json.dumps(data))
    code, _, err = run(capsys, "verify", SE, str(cert))
    assert code == 4


def test_endos_groups(capsys):
    code, out, _ = run(capsys, "endos", SE, "--json")
    assert code == 0
    data = json.loads(out)
    groups = {}
    for gen in data["generators"]:
        groups[gen["base_element"]] = groups.get(gen["base_element"], 0) + 1
    assert groups == {"e": 7, "s": 1, "s s": 1, "e s": 1, "s e": 1, "e s e": 17}


def test_endos_text_grouping(capsys):
    code, out, _ = run(capsys, "endos", SE)
    assert code == 0
    assert "Endorewrites of e:" in out
    assert "Endorewrites of e s e:" in out


def test_endos_free_monoid(capsys):
    code, out, _ = run(capsys, "endos", FREE, "--json")
    assert code == 0
    assert json.loads(out)["generators"] == []


def test_endos_ab_monoid_verifies(capsys, ab_init):
    code, out, _ = run(capsys, "endos", AB, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["generators"]
    from logrew.engine import expand_log
    from logrew.completion import logged_knuth_bendix

    full = logged_knuth_bendix(ab_init).system
    for gen in data["generators"]:
        cell = tc.cell_from_json(gen["cell"])
        assert tc.validate(cell, full.rule_map) is None
        expanded = expand_log(cell, full)
        assert tc.validate(expanded, ab_init.rule_map) is None


def test_endos_minimize_is_subset(capsys):
    code, full_out, _ = run(capsys, "endos", SE, "--json")
    code2, small_out, _ = run(capsys, "endos", SE, "--json", "--minimize")
    assert code == code2 == 0
    full_ids = {g["id"] for g in json.loads(full_out)["generators"]}
    small_ids = {g["id"] for g in json.loads(small_out)["generators"]}
    assert small_ids <= full_ids
    assert small_ids


def test_express_round_trip(capsys, tmp_path, se_init):
    cellfile = tmp_path / "loop.json"
    cellfile.write_text(json.dumps(tc.cell_to_json(loop_cell("ese_3"))))
    code, out, _ = run(capsys, "express", SE, str(cellfile), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["residual"]["steps"] == []
    for factor in data["factors"]:
        conj = tc.cell_from_json(factor["conjugator"])
        assert tc.validate(conj, se_init.rule_map) is None


def test_express_identity_loop(capsys, tmp_path):
    cellfile = tmp_path / "idloop.json"
    cellfile.write_text(json.dumps({"source": "s e", "steps": []}))
    code, out, _ = run(capsys, "express", SE, str(cellfile), "--json")
    assert code == 0
    assert json.loads(out)["factors"] == []


def test_express_invalid_cell(capsys, tmp_path):
    cellfile = tmp_path / "bad.json"
    cellfile.write_text(json.dumps({
        "source": "s e",
        "steps": [{"prefix": "1", "rule": "r1", "exp": 1, "suffix": "1"}],
    }))
    code, _, err = run(capsys, "express", SE, str(cellfile), "--json")
    assert code == 4


def test_json_outputs_stable_between_runs(capsys):
    outputs = []
    for _ in range(2):
        _, out, _ = run(capsys, "endos", SE, "--json")
        outputs.append(out)
    assert outputs[0] == outputs[1]
