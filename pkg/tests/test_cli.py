import json
import math
import subprocess
import sys

import numpy as np
import pytest

from cvextremal import cli
from cvextremal.errors import NumericError
from cvextremal.extremal import en_extremal_p2
from cvextremal.serialization import format_matrix, read_table


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, [json.loads(ln) for ln in out.splitlines() if ln.startswith("{")], out, err


class TestClassify:
    def test_vacuum_file(self, capsys, tmp_path):
        path = tmp_path / "vac.csv"
        path.write_text(format_matrix(np.eye(4)))
        code, (rec,), _, _ = run(capsys, "classify", str(path))
        assert code == 0
        assert rec["report"]["separable"] and rec["report"]["log_negativity"] == 0.0
        assert rec["class"] == "SEPARABLE"

    def test_record(self, capsys):
        code, (rec,), _, _ = run(capsys, "classify", "3,3,2.5,-2.5")
        assert code == 0 and not rec["report"]["separable"]
        assert rec["class"] == "ENTANGLED"
        assert set(rec["coordinates"]) == {"mu1", "mu2", "mu", "delta"}

    def test_unphysical_is_domain_error(self, capsys):
        code, _, _, err = run(capsys, "classify", "0.5,0.5,0,0")
        assert code == 2 and "domain error" in err


class TestExtremal:
    def test_purities(self, capsys):
        code, (rec,), _, _ = run(capsys, "extremal", "0.5", "0.5", "0.8")
        assert code == 0
        assert rec["en_max"] == pytest.approx(1.0739, abs=1e-4)
        assert rec["en_min"] == pytest.approx(en_extremal_p2(0.5, 0.5, 0.8)[1], rel=1e-12)
        assert len(rec["gmems"]) == 4 and rec["inverted"] is False

    def test_entropies(self, capsys):
        code, (rec,), _, _ = run(capsys, "extremal", "--entropies", "--p", "3", "0.3", "0.3", "0.2")
        assert code == 0 and rec["en_max"] >= rec["en_min"]
        assert isinstance(rec["nodal_inverted"], bool)

    def test_out_of_range(self, capsys):
        code, _, _, err = run(capsys, "extremal", "0.5", "0.5", "0.1")
        assert code == 2


class TestNodal:
    def test_example(self, capsys):
        code, (rec,), _, _ = run(capsys, "nodal", "--p", "3", "0.5", "0.5")
        assert code == 0
        assert rec["mu_kappa"] == pytest.approx(0.52223, abs=1e-5)

    def test_check_reports_consistency(self, capsys):
        _, (rec,), _, _ = run(capsys, "nodal", "--p", "3", "0.5", "0.5", "--check")
        assert rec["consistent"] is True
        _, (rec,), _, _ = run(capsys, "nodal", "--p", "4", "0.5", "0.5", "--check")
        assert rec["consistent"] is False

    def test_no_node(self, capsys):
        code, (rec,), _, _ = run(capsys, "nodal", "0.95", "0.95")
        assert code == 0 and rec["mu_kappa"] is None


class TestFigure:
    def test_stdout(self, capsys):
        code, _, out, _ = run(capsys, "figure", "NODAL_LEAF", "--grid", "3")
        assert code == 0
        assert out.startswith("# figure=NODAL_LEAF\n")
        assert "mu1,mu2,mu_kappa,s_p_kappa\n" in out

    def test_file_deterministic(self, capsys, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path in paths:
            assert cli.main(["figure", "SV_VS_SL", "--grid", "20", "--samples", "50",
                             "--seed", "3", "--out", str(path)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        meta, header, rows = read_table(str(paths[0]))
        assert meta["seed"] == "3" and len(rows) == 70

    def test_invalid_region(self, capsys):
        code, _, _, err = run(capsys, "figure", "REGION_MAP", "--p", "3")
        assert code == 1 and "p = 2" in err


class TestSample:
    def test_stream(self, capsys):
        code, recs, _, _ = run(capsys, "sample", "--count", "5", "--seed", "1")
        assert code == 0 and len(recs) == 5
        again = run(capsys, "sample", "--count", "5", "--seed", "1")[1]
        assert recs == again

    def test_slice_mode(self, capsys):
        code, recs, _, _ = run(capsys, "sample", "--count", "3", "--mode", "FIXED_PURITY_SLICE",
                               "--mu", "0.4")
        for r in recs:
            det = (r["a"] * r["b"] - r["c_plus"] ** 2) * (r["a"] * r["b"] - r["c_minus"] ** 2)
            assert 1 / math.sqrt(det) == pytest.approx(0.4, rel=1e-8)

    def test_bad_config(self, capsys):
        code, _, _, err = run(capsys, "sample", "--count", "0")
        assert code == 1


class TestEvolve:
    def test_hot_bath(self, capsys):
        code, recs, _, _ = run(capsys, "evolve", "1.0", "--n", "3", "3", "--grid", "11")
        assert code == 0 and len(recs) == 12
        assert recs[0]["E_N"] == pytest.approx(2.0)
        death = recs[-1]["death_time"]
        assert death == pytest.approx(-math.log(2 / (3 - math.exp(-2))), abs=1e-8)

    def test_pure_loss_reports_infinity(self, capsys):
        code, recs, _, _ = run(capsys, "evolve", "0.5", "--nbar", "0", "0", "--grid", "3")
        assert code == 0 and recs[-1]["death_time"] == "inf"


class TestEpr:
    def test_symmetric(self, capsys):
        code, (rec,), _, _ = run(capsys, "epr", "2,2,1.5,-0.5")
        assert code == 0 and rec["symmetric"] and rec["entangled"]
        assert rec["xi_bar"] == pytest.approx(rec["two_nu_tilde"], abs=1e-5)
        assert rec["xi"] >= rec["xi_bar"]


class TestExitCodes:
    @pytest.mark.parametrize("argv", [[], ["bogus"], ["nodal", "x", "0.5"],
                                      ["extremal", "0.5", "0.5"]])
    def test_usage(self, capsys, argv):
        code, _, _, err = run(capsys, *argv)
        assert code == 1 and "usage" in err

    def test_numeric_error(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise NumericError("did not converge")
        monkeypatch.setattr(cli, "nodal_point", boom)
        code, _, _, err = run(capsys, "nodal", "0.5", "0.5")
        assert code == 3 and "numeric error" in err

    def test_help(self, capsys):
        assert cli.main(["--help"]) == 0

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "cvextremal", "nodal", "0.5", "0.5"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["mu_kappa"] == pytest.approx(0.52223, abs=1e-5)

    def test_json_out_file(self, tmp_path, capsys):
        path = tmp_path / "r.jsonl"
        assert cli.main(["nodal", "0.5", "0.5", "--out", str(path)]) == 0
        assert json.loads(path.read_text())["mu1"] == 0.5
