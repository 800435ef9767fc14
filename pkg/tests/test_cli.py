import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from tamreg.cli import build_parser, main
from tamreg.corpus import Corpus, Register, Sentence, write_corpus
from tamreg.nbayes import load_model, predict_many
from tamreg.textnorm import normalize
from tamreg.translit import convert

SNAPSHOTS = Path(__file__).with_name("snapshots")
UPDATE = os.environ.get("TAMREG_UPDATE_SNAPSHOTS") == "1"
SUBCOMMANDS = ("normalize", "augment", "translit", "convert", "featurize", "train", "predict",
               "evaluate", "experiment", "audit", "metrics", "histogram")
PROBE = ["Vaalum vellaiyaaga ulladhu.", "avan ooril irukkaan", "Maram, nagaram!"]


@pytest.fixture(scope="module")
def workdir(tmp_path_factory, synthetic):
    d = tmp_path_factory.mktemp("cli")
    write_corpus(synthetic, d / "train.jsonl")
    (d / "probe.txt").write_text("\n".join(PROBE) + "\n", encoding="utf-8")
    assert main(["train", "-c", "3", "--in", str(d / "train.jsonl"), "--out", str(d / "model.bin")]) == 0
    return d


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", (None,) + SUBCOMMANDS)
def test_help_snapshot(name, monkeypatch, capsys):
    monkeypatch.setenv("COLUMNS", "100")
    argv = ([name] if name else []) + ["--help"]
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 0
    text = capsys.readouterr().out
    path = SNAPSHOTS / f"help_{name or 'main'}.txt"
    if UPDATE or not path.exists():
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


def test_every_flag_has_a_default_in_help():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    assert set(sub.choices) == set(SUBCOMMANDS)
    for name, p in sub.choices.items():
        for action in p._actions:
            if action.dest in ("help",) or action.required:
                continue
            assert "%(default)s" in p.formatter_class("x")._get_help_string(action), (name, action.dest)


def test_usage_errors_exit_1(capsys):
    for argv in (["bogus"], ["normalize", "--nope"], [], ["train", "-c", "x", "--out", "m"], ["experiment"]):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
        assert code == 1, argv
        assert capsys.readouterr().out == ""


def test_data_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": 1}\n', encoding="utf-8")
    junk = tmp_path / "junk.bin"
    junk.write_bytes(b"not a model")
    for argv in (["predict", "--model", str(tmp_path / "missing.bin"), "--in", str(bad)],
                 ["predict", "--model", str(junk), "--in", str(bad)],
                 ["train", "--in", str(bad), "--out", str(tmp_path / "m.bin")]):
        code, out, err = run(argv, capsys)
        assert code == 2 and out == "" and err.startswith("tamreg ")


def test_normalize_and_convert_stdin(capsys, monkeypatch):
    code, out, _ = run(["normalize"], capsys, "Vaalum,  Vellai!\n", monkeypatch)
    assert (code, out) == (0, "vaalum vellai\n")
    code, out, _ = run(["convert"], capsys, "maram ulladhu\n", monkeypatch)
    assert out == "marom irukku\n"


def test_convert_trace_file(tmp_path, capsys, monkeypatch):
    trace = tmp_path / "t.jsonl"
    run(["convert", "--trace", str(trace)], capsys, "ooril\n", monkeypatch)
    rec = json.loads(trace.read_text(encoding="utf-8"))
    assert rec["output"] == "oorle" and rec["steps"][0][0] == "LOC-IL"


def test_translit(capsys, monkeypatch):
    assert run(["translit"], capsys, "தமிழ்\n", monkeypatch)[1] == "thamizh\n"


def test_augment(tmp_path, capsys):
    src = tmp_path / "a.jsonl"
    write_corpus(Corpus([Sentence("x", "vaazhai", Register.LITERARY)]), src)
    code, out, _ = run(["augment", "--in", str(src)], capsys)
    rows = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and len(rows) > 1 and {r["label"] for r in rows} == {"literary"}


def test_train_predict_featurize(workdir, capsys):
    code, out, _ = run(["predict", "--model", str(workdir / "model.bin"), "--in", str(workdir / "probe.txt")], capsys)
    assert code == 0 and len(out.splitlines()) == len(PROBE)
    assert out.splitlines()[0] == "literary"
    code, out, _ = run(["featurize", "--model", str(workdir / "model.bin"), "--in", str(workdir / "probe.txt")],
                       capsys)
    assert len(out.splitlines()) == len(PROBE)
    assert all(int(tok.split(":")[1]) > 0 for tok in out.split())


def test_evaluate_and_audit_json(workdir, capsys):
    code, out, _ = run(["evaluate", "--json", "--model", str(workdir / "model.bin"),
                        "--in", str(workdir / "train.jsonl")], capsys)
    assert code == 0 and json.loads(out)["accuracy"] > 0.9
    code, out, _ = run(["audit", "--json", "--limit", "2", "--model", str(workdir / "model.bin"),
                        "--in", str(workdir / "probe.txt")], capsys)
    rep = json.loads(out)
    assert rep["n_lines"] == 2 and rep["dataset"] == "probe"


def test_experiment_cli(capsys):
    code, out, _ = run(["experiment", "--synthetic", "-c", "2", "--seeds", "1,2", "--no-augment", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0 and [s["seed"] for s in rep["per_seed"]] == [1, 2]


def test_metrics_and_histogram(tmp_path, capsys):
    a, b = tmp_path / "lit.txt", tmp_path / "spk.txt"
    a.write_text("a b c d\n", encoding="utf-8")
    b.write_text("a b c d e\n", encoding="utf-8")
    code, out, _ = run(["metrics", "--a", str(a), "--b", str(b), "--json"], capsys)
    assert code == 0 and round(json.loads(out)["bleu"], 2) == 77.88
    code, out, _ = run(["metrics", "--a", str(a), "--b", str(b)], capsys)
    assert out.startswith("# bleu:") and "77.88" in out
    code, out, _ = run(["histogram", "--a", str(a), "--b", str(b), "--bins", "4"], capsys)
    lines = out.splitlines()
    assert lines[0] == "bin_lo\tbin_hi\tcount" and len(lines) == 5
    assert sum(int(l.split("\t")[2]) for l in lines[1:]) == 1


def test_rules_dir_env(tmp_path, capsys, monkeypatch):
    (tmp_path / "cascade.tsv").write_text("X\tlexical\twhole_word\tmaram\tmarame\t1\n", encoding="utf-8")
    monkeypatch.setenv("TAMREG_RULES_DIR", str(tmp_path))
    assert run(["convert"], capsys, "maram vaanam\n", monkeypatch)[1] == "marame vaanam\n"


def test_pipe_matches_in_process(workdir):
    env = dict(os.environ, PYTHONIOENCODING="utf-8")
    cmd = [sys.executable, "-m", "tamreg"]
    text = "\n".join(PROBE) + "\n"
    stage1 = subprocess.run(cmd + ["normalize"], input=text, capture_output=True, text=True, env=env, check=True)
    stage2 = subprocess.run(cmd + ["convert"], input=stage1.stdout, capture_output=True, text=True, env=env,
                            check=True)
    stage3 = subprocess.run(cmd + ["predict", "--model", str(workdir / "model.bin")], input=stage2.stdout,
                            capture_output=True, text=True, env=env, check=True)
    model = load_model(workdir / "model.bin")
    expected = predict_many(model, [convert(normalize(t))[0] for t in PROBE])
    assert stage3.stdout.splitlines() == [r.label for r in expected]
