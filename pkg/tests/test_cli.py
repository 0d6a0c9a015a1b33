import json

import pytest

from hardyapprox import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCommands:
    def test_constants_text(self, capsys):
        code, out, _ = _run(capsys, "constants", "--p", "2", "--symbol", "lens:theta=0.5")
        assert code == 0
        assert "c_p = 0.2886751346" in out and "beta_p_theta = 2.641754" in out

    def test_constants_json(self, capsys):
        code, out, _ = _run(capsys, "constants", "--p", "1", "--format", "json")
        assert code == 0 and json.loads(out)["c_p"] == pytest.approx(1 / 12)

    def test_oracle_identity(self, capsys):
        code, out, _ = _run(capsys, "oracle", "--symbol", "identity", "--n-max", "4", "--truncation", "16")
        lines = out.strip().splitlines()
        assert code == 0 and lines[0] == "n,sigma,truncation,converged" and len(lines) == 5
        assert all(float(l.split(",")[1]) == pytest.approx(1.0) for l in lines[1:])

    def test_sandwich_lens(self, capsys):
        code, out, _ = _run(capsys, "sandwich", "--symbol", "lens:theta=0.5", "--n-max", "6",
                            "--truncation", "256", "--samples", "4096")
        assert code == 0
        rows = [l.split(",") for l in out.strip().splitlines()[1:]]
        assert len(rows) == 6 and all(r[5] == "false" for r in rows)

    def test_bounds_json(self, capsys):
        code, out, _ = _run(capsys, "bounds", "--symbol", "lens:theta=0.5", "--n-max", "5",
                            "--samples", "4096", "--format", "json")
        names = {r["bound"] for r in json.loads(out)}
        assert code == 0 and len(names) >= 2

    def test_fit_json(self, capsys, tmp_path):
        src = tmp_path / "o.csv"
        assert cli.main(["oracle", "--symbol", "scale:c=0.5", "--n-max", "12", "--truncation", "64",
                         "--output", str(src)]) == 0
        code, out, _ = _run(capsys, "fit", "--input", str(src), "--kind", "geometric")
        (model,) = json.loads(out)
        assert code == 0 and model["parameters"]["r"] == pytest.approx(0.5, rel=1e-8)


class TestErrors:
    @pytest.mark.parametrize("argv", [["oracle", "--truncation", "100"], ["oracle", "--p", "0.5"],
                                      ["oracle", "--symbol", "spiral"], ["fit", "--kind", "power"],
                                      ["constants", "--set", "nope=1"], ["frobnicate"]])
    def test_exit_one(self, capsys, argv):
        with pytest.raises(SystemExit) if argv == ["frobnicate"] else _nullcontext() as ctx:
            code = cli.main(argv)
        code = ctx.value.code if argv == ["frobnicate"] else code
        assert code == 1


class _nullcontext:
    value = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


class TestDeterminism:
    def test_same_seed_same_bytes(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            assert cli.main(["bounds", "--symbol", "lens:theta=0.5", "--n-max", "4", "--samples", "4096",
                             "--seed", "7", "--output", str(p)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
