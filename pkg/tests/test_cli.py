import json
import subprocess
import sys

import pytest

from apery8.cli import ConfigError, RunConfig, cmd_show, cmd_verify, main


def run_json(argv, capsys):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_bad_order_exits_2(capsys):
    assert main(["verify", "--order", "4"]) == 2
    assert "order" in capsys.readouterr().err


def test_bad_prec_exits_2():
    assert main(["verify", "--prec", "5"]) == 2


def test_unknown_selector_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["show", "bogus"])
    assert exc.value.code == 2
    with pytest.raises(ConfigError):
        cmd_show("qexp", ["nope"])


def test_unknown_suite_rejected():
    with pytest.raises(ConfigError):
        RunConfig(suites=("exact", "bogus")).validate()


def test_pcf_suite(capsys):
    code, rep = run_json(["verify", "--suite", "pcf", "--nmax", "60"], capsys)
    assert code == 0 and rep["passed"]
    value = next(c for c in rep["checks"] if c["name"] == "pcf_value")
    assert float(value["residual"]["decimal"]) < 1e-40


def test_show_qexp_t():
    assert cmd_show("qexp", ["t", "7"]).startswith("t: 1, -8, 28, -64, 142, -352")


def test_show_sequence():
    out = cmd_show("sequence", ["4"])
    assert "s: 1, 4, 40, 544, 8536" in out
    assert "B: 0, 1, 21/2, 3862/27" in out


def test_show_constants():
    out = cmd_show("constants", ["30"])
    assert "1.20205690315959428539973816151" in out
    data = json.loads(cmd_show("constants", ["30"], as_json=True))
    assert data["zeta3"]["decimal"].startswith("1.2020569031595942853997381615")


def test_show_sequence_json_fractions():
    data = json.loads(cmd_show("sequence", ["3"], as_json=True))
    assert data["B"][3] == {"num": "3862", "den": "27"}


def test_json_schema(capsys):
    code, rep = run_json(["verify", "--suite", "exact", "--order", "20", "--nmax", "20"], capsys)
    assert code == 0
    assert rep["schema"] == "apery8.report/1"
    assert set(rep["config"]) == {"order", "prec", "n_max", "suites", "seed"}
    keys = {"suite", "name", "anchor", "params", "passed", "residual", "tolerance",
            "first_mismatch", "details", "elapsed_s"}
    assert all(set(c) == keys for c in rep["checks"])


def strip_timing(rep):
    for c in rep["checks"]:
        c.pop("elapsed_s")
    return json.dumps(rep, sort_keys=True)


def test_json_is_deterministic(capsys):
    argv = ["verify", "--suite", "numeric", "--prec", "30", "--seed", "11", "--nmax", "20"]
    _, a = run_json(argv, capsys)
    _, b = run_json(argv, capsys)
    assert strip_timing(a) == strip_timing(b)


def test_seed_adds_samples():
    assert len(RunConfig(seed=1).samples()) == len(RunConfig().samples()) + 3


def test_suites_reordered():
    assert RunConfig(suites=("pcf", "exact")).validate().suites == ("exact", "pcf")


def test_report_text():
    rep = cmd_verify(RunConfig(order=10, n_max=40, suites=("limit",)))
    text = rep.to_text()
    assert rep.passed and text.splitlines()[-1].startswith("PASS")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "apery8", "show", "sequence", "2"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.startswith("s: 1, 4, 40")
