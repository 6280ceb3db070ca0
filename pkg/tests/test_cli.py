import json

import pytest

from germoid import cli
from germoid import fixtures as fx


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_brandt(self, tmp_path, capsys):
        out = tmp_path / "b2.json"
        code, _, err = run_cli(capsys, "gen", "brandt", "--n", "2",
                               "--out", str(out))
        assert code == 0
        data = json.loads(out.read_text())
        assert len(data["elements"]) == 5 and data["zero"] == 0

    def test_chain(self, capsys):
        code, out, _ = run_cli(capsys, "gen", "chain", "--n", "2")
        assert code == 0
        data = json.loads(out)
        assert data["elements"] == ["1", "f"]

    def test_semidirect_preset(self, capsys):
        code, out, _ = run_cli(capsys, "gen", "semidirect", "--preset", "sd6")
        assert code == 0
        assert len(json.loads(out)["elements"]) == 6

    def test_deterministic_output(self, capsys):
        _, out1, _ = run_cli(capsys, "gen", "symmetric-inverse", "--n", "2")
        _, out2, _ = run_cli(capsys, "gen", "symmetric-inverse", "--n", "2")
        assert out1 == out2

    def test_direct_product_and_adjoin_zero(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run_cli(capsys, "gen", "chain", "--n", "2", "--out", str(a))
        run_cli(capsys, "gen", "group", "--n", "2", "--out", str(b))
        code, out, _ = run_cli(capsys, "gen", "direct-product",
                               "--left", str(a), "--right", str(b))
        assert code == 0 and len(json.loads(out)["elements"]) == 4
        code, out, _ = run_cli(capsys, "gen", "adjoin-zero", "--in", str(a))
        assert code == 0 and json.loads(out)["zero"] == 2

    def test_bad_params(self, capsys):
        code, _, err = run_cli(capsys, "gen", "chain", "--n", "0")
        assert code == 1 and "error" in err


class TestAnalyze:
    def test_b2(self, tmp_path, capsys):
        f = tmp_path / "b2.json"
        run_cli(capsys, "gen", "brandt", "--n", "2", "--out", str(f))
        code, out, err = run_cli(capsys, "analyze", str(f))
        assert code == 0
        rep = json.loads(out)
        assert rep["e_unitary"] is False
        assert rep["zero_e_unitary"] is True
        assert rep["group_order"] == 1
        assert rep["filters"] == {"plain": 3, "contracted": 2, "tight": 2}

    def test_s4(self, tmp_path, capsys):
        f = tmp_path / "s4.json"
        run_cli(capsys, "gen", "preset", "--preset", "s4", "--out", str(f))
        code, out, _ = run_cli(capsys, "analyze", str(f))
        rep = json.loads(out)
        assert rep["e_unitary"] is True and rep["group_order"] == 2
        assert rep["filters"]["plain"] == 2

    def test_group(self, tmp_path, capsys):
        f = tmp_path / "z3.json"
        run_cli(capsys, "gen", "group", "--n", "3", "--out", str(f))
        code, out, _ = run_cli(capsys, "analyze", str(f))
        rep = json.loads(out)
        assert rep["e_unitary"] is True and rep["filters"]["plain"] == 1

    def test_parse_error_exit_2(self, tmp_path, capsys):
        f = tmp_path / "junk.json"
        f.write_text("{not json")
        code, _, err = run_cli(capsys, "analyze", str(f))
        assert code == 2

    def test_missing_file_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "analyze", "/nonexistent/x.json")
        assert code == 2


class TestGroupoidCmd:
    def test_b2_tight(self, tmp_path, capsys):
        f = tmp_path / "b2.json"
        run_cli(capsys, "gen", "brandt", "--n", "2", "--out", str(f))
        g = tmp_path / "g.json"
        code, _, err = run_cli(capsys, "groupoid", str(f), "--variant",
                               "tight", "--out", str(g))
        assert code == 0
        data = json.loads(g.read_text())
        assert len(data["units"]) == 2 and len(data["arrows"]) == 4
        assert "2 units, 4 arrows" in err

    def test_s4_partial(self, tmp_path, capsys):
        f = tmp_path / "s4.json"
        run_cli(capsys, "gen", "preset", "--preset", "s4", "--out", str(f))
        code, out, err = run_cli(capsys, "groupoid", str(f),
                                 "--variant", "partial")
        assert code == 0
        data = json.loads(out)
        assert len(data["units"]) == 2 and len(data["arrows"]) == 4

    def test_chain2_universal(self, tmp_path, capsys):
        f = tmp_path / "c.json"
        run_cli(capsys, "gen", "chain", "--n", "2", "--out", str(f))
        code, out, _ = run_cli(capsys, "groupoid", str(f),
                               "--variant", "universal")
        data = json.loads(out)
        assert len(data["units"]) == 2 and len(data["arrows"]) == 2

    def test_variant_unavailable(self, tmp_path, capsys):
        f = tmp_path / "s4.json"
        run_cli(capsys, "gen", "preset", "--preset", "s4", "--out", str(f))
        code, _, err = run_cli(capsys, "groupoid", str(f), "--variant", "tight")
        assert code == 1 and "VariantUnavailable" in err

    def test_dot_export(self, tmp_path, capsys):
        f = tmp_path / "b2.json"
        run_cli(capsys, "gen", "brandt", "--n", "2", "--out", str(f))
        g = tmp_path / "g.json"
        d = tmp_path / "g.dot"
        run_cli(capsys, "groupoid", str(f), "--variant", "tight",
                "--out", str(g), "--dot", str(d))
        assert d.read_text().startswith("digraph")
        code, out, _ = run_cli(capsys, "export-dot", str(g))
        assert code == 0 and "->" in out


class TestVerifyCmd:
    @pytest.fixture()
    def files(self, tmp_path, capsys):
        paths = {}
        for preset in ("s3", "s4", "sd6", "b2", "i2"):
            p = tmp_path / f"{preset}.json"
            run_cli(capsys, "gen", "preset", "--preset", preset,
                    "--out", str(p))
            paths[preset] = str(p)
        return paths

    def test_main1_passes(self, files, capsys):
        code, out, err = run_cli(capsys, "verify", "--suite", "main1",
                                 files["s4"], files["sd6"])
        assert code == 0
        lines = [json.loads(l) for l in out.strip().splitlines()]
        assert all(l["pass"] for l in lines)
        assert lines[0]["sizes"]["arrows_source"] == 4  # s4 sorts first

    def test_skips_are_reported_not_dropped(self, files, capsys):
        code, out, err = run_cli(capsys, "verify", "--suite", "main1",
                                 files["b2"])
        assert code == 0
        rep = json.loads(out.strip().splitlines()[0])
        assert rep["skipped"] and "E-unitary" in rep["reason"]

    def test_ks_on_s3(self, files, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "ks", files["s3"])
        assert code == 0
        rep = json.loads(out.strip().splitlines()[0])
        assert rep["sizes"]["source_arrows"] == 3
        assert rep["sizes"]["target_arrows"] == 6
        assert rep["sizes"]["center_source"] == rep["sizes"]["center_target"] == 3

    def test_all_suite_exit_zero(self, files, capsys):
        code, out, err = run_cli(capsys, "verify", "--suite", "all",
                                 files["s3"], files["b2"])
        assert code == 0
        lines = [json.loads(l) for l in out.strip().splitlines()]
        assert all(l["pass"] for l in lines)
        # deterministic order: sorted by fixture then check
        keys = [(l["fixture"], l["check"]) for l in lines]
        assert keys == sorted(keys)

    def test_report_stream_deterministic(self, files, capsys):
        def strip_time(text):
            return [{k: v for k, v in json.loads(l).items() if k != "wall_ms"}
                    for l in text.strip().splitlines()]

        _, out1, _ = run_cli(capsys, "verify", "--suite", "equiv", files["s4"])
        _, out2, _ = run_cli(capsys, "verify", "--suite", "equiv", files["s4"])
        assert strip_time(out1) == strip_time(out2)

    def test_exit_2_on_bad_file(self, tmp_path, capsys):
        f = tmp_path / "junk.json"
        f.write_text("[1, 2")
        code, _, _ = run_cli(capsys, "verify", "--suite", "main1", str(f))
        assert code == 2

    def test_full_corpus_gate(self, tmp_path, capsys):
        # the repository gate: every suite over every shipped fixture
        paths = []
        for preset in ("chain2", "b2", "s3", "s4", "sd6", "i2"):
            p = tmp_path / f"{preset}.json"
            run_cli(capsys, "gen", "preset", "--preset", preset,
                    "--out", str(p))
            paths.append(str(p))
        p = tmp_path / "z3.json"
        run_cli(capsys, "gen", "group", "--n", "3", "--out", str(p))
        paths.append(str(p))
        code, out, err = run_cli(capsys, "verify", "--suite", "all", *paths)
        assert code == 0
        lines = [json.loads(l) for l in out.strip().splitlines()]
        assert all(l["pass"] for l in lines)
        assert any(l["skipped"] for l in lines)  # skips reported, not dropped
        assert all(l["reason"] for l in lines if l["skipped"])
