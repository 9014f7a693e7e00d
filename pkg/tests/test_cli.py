"""End-to-end tests of the command-line interface.

Each test drives ``main`` with real argv lists against small datasets
written to disk, mirroring how the tool is used from a shell.
"""

from __future__ import annotations

import csv
import io
import json

import pytest

from catweight import separable_corpus
from catweight.cli import main

TOY_ROWS = [
    ("win win win win game game team team goal ball", "A"),
    (
        "win market market stock stock stock price price trade trade "
        "bank bank rate rate fund fund bond bond cash loan",
        "B",
    ),
]


def _write_dataset(path, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["text", "label"])
        writer.writerows(rows)
    return str(path)


@pytest.fixture(scope="module")
def toy_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "toy.csv"
    return _write_dataset(path, TOY_ROWS)


@pytest.fixture(scope="module")
def train_csv(tmp_path_factory):
    corpus = separable_corpus(
        num_docs=48,
        num_categories=3,
        keywords_per_category=4,
        shared_vocab_size=20,
        doc_length=10,
        exclusive_ratio=0.4,
        seed=2,
    )
    rows = [
        (" ".join(doc.tokens), corpus.categories[doc.label])
        for doc in corpus.documents
    ]
    path = tmp_path_factory.mktemp("data") / "separable.csv"
    return _write_dataset(path, rows)


def _cv_args(data, out, **overrides):
    args = {
        "--data": data,
        "--embedding": "synthetic:4:1",
        "--scheme": "tfcr",
        "--classifier": "logreg",
        "--k": "4",
        "--seed": "7",
        "--epochs": "8",
        "--out": out,
    }
    args.update(overrides)
    argv = ["cv"]
    for flag, value in args.items():
        if value is not None:
            argv += [flag, value]
    return argv


class TestCv:
    def test_writes_results_and_manifest(self, train_csv, tmp_path, capsys):
        out = tmp_path / "results.csv"
        assert main(_cv_args(train_csv, str(out))) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == (
            "dataset,scheme,embedding,classifier,train_size,fold,macro_f1,accuracy"
        )
        folds = [l for l in lines[1:] if l.split(",")[5] not in ("mean", "failed")]
        assert len(folds) == 4
        assert lines[-1].split(",")[5] == "mean"
        manifest = json.loads((tmp_path / "results.csv.manifest.json").read_text())
        assert manifest["command"] == "cv"
        assert manifest["config"]["seed"] == 7
        assert manifest["config"]["scheme"] == "tfcr"
        stdout = capsys.readouterr().out
        assert "tfcr" in stdout and "results written" in stdout

    def test_byte_identical_reruns(self, train_csv, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(_cv_args(train_csv, str(first))) == 0
        assert main(_cv_args(train_csv, str(second))) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_scheme_all_expands_to_five(self, train_csv, tmp_path):
        out = tmp_path / "results.csv"
        assert main(_cv_args(train_csv, str(out), **{"--scheme": "all"})) == 0
        schemes = {row.split(",")[1] for row in out.read_text().splitlines()[1:]}
        assert schemes == {"none", "tfidf", "kld", "tftrr", "tfcr"}

    def test_unknown_scheme_exits_2_listing_valid(self, train_csv, tmp_path, capsys):
        out = tmp_path / "results.csv"
        code = main(_cv_args(train_csv, str(out), **{"--scheme": "bm25"}))
        assert code == 2
        err = capsys.readouterr().err
        assert "bm25" in err
        assert "none, tfidf, kld, tftrr, tfcr" in err

    def test_missing_seed_exits_2(self, train_csv, tmp_path, capsys):
        argv = _cv_args(train_csv, str(tmp_path / "r.csv"), **{"--seed": None})
        assert main(argv) == 2
        assert "--seed is required" in capsys.readouterr().err

    def test_missing_dataset_exits_2(self, tmp_path, capsys):
        argv = _cv_args(str(tmp_path / "absent.csv"), str(tmp_path / "r.csv"))
        assert main(argv) == 2
        assert "not found" in capsys.readouterr().err

    def test_all_cells_failing_exits_1(self, train_csv, tmp_path, capsys):
        argv = _cv_args(
            train_csv,
            str(tmp_path / "r.csv"),
            **{"--classifier": "svm", "--l2": "0"},
        )
        assert main(argv) == 1
        assert "error:" in capsys.readouterr().err

    def test_config_file_precedence(self, train_csv, tmp_path):
        # Flags beat the config file; the config file beats defaults.
        config = tmp_path / "run.json"
        config.write_text(
            json.dumps({"scheme": "tfidf", "seed": 3, "epochs": 4, "k": 3})
        )
        out = tmp_path / "results.csv"
        argv = [
            "cv", "--config", str(config), "--data", train_csv,
            "--embedding", "synthetic:4:1", "--classifier", "logreg",
            "--scheme", "kld", "--out", str(out),
        ]
        assert main(argv) == 0
        manifest = json.loads((tmp_path / "results.csv.manifest.json").read_text())
        assert manifest["config"]["scheme"] == "kld"  # flag wins
        assert manifest["config"]["seed"] == 3  # file beats default
        assert manifest["config"]["epochs"] == 4
        assert manifest["config"]["alpha"] == 1.2  # untouched default
        schemes = {row.split(",")[1] for row in out.read_text().splitlines()[1:]}
        assert schemes == {"kld"}

    def test_jobs_flag_keeps_csv_identical(self, train_csv, tmp_path):
        serial, threaded = tmp_path / "s.csv", tmp_path / "t.csv"
        base = {"--scheme": "none,tfcr", "--classifier": "logreg,svm"}
        assert main(_cv_args(train_csv, str(serial), **base)) == 0
        assert main(
            _cv_args(train_csv, str(threaded), **dict(base, **{"--jobs": "3"}))
        ) == 0
        assert serial.read_bytes() == threaded.read_bytes()


class TestCurve:
    def _argv(self, data, out, **overrides):
        args = {
            "--data": data,
            "--embedding": "synthetic:4:1",
            "--scheme": "tfcr",
            "--classifier": "logreg",
            "--k": "4",
            "--seed": "5",
            "--epochs": "8",
            "--sizes": "8,16",
            "--out": out,
        }
        args.update(overrides)
        argv = ["curve"]
        for flag, value in args.items():
            if value is not None:
                argv += [flag, value]
        return argv

    def test_writes_curve_csv(self, train_csv, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        assert main(self._argv(train_csv, str(out))) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "train_size,tfcr"
        assert [row.split(",")[0] for row in lines[1:]] == ["8", "16"]
        assert (tmp_path / "curve.csv.manifest.json").is_file()
        assert "curve written" in capsys.readouterr().out

    def test_min_max_step_ladder(self, train_csv, tmp_path):
        out = tmp_path / "curve.csv"
        argv = self._argv(
            train_csv, str(out),
            **{"--sizes": None, "--min": "6", "--max": "18", "--step": "6"},
        )
        assert main(argv) == 0
        rows = out.read_text().splitlines()[1:]
        assert [r.split(",")[0] for r in rows] == ["6", "12", "18"]

    def test_oversized_ladder_truncated_with_warning(self, train_csv, tmp_path, capsys):
        # 48 docs, k=4 -> 36 available for training; 1000 cannot fit.
        out = tmp_path / "curve.csv"
        argv = self._argv(train_csv, str(out), **{"--sizes": "8,1000"})
        assert main(argv) == 0
        assert "truncated" in capsys.readouterr().err
        rows = out.read_text().splitlines()[1:]
        assert [r.split(",")[0] for r in rows] == ["8"]

    def test_no_fitting_size_exits_2(self, train_csv, tmp_path, capsys):
        argv = self._argv(train_csv, str(tmp_path / "c.csv"), **{"--sizes": "500"})
        assert main(argv) == 2
        assert "no ladder size fits" in capsys.readouterr().err

    def test_identical_seeds_identical_bytes(self, train_csv, tmp_path):
        first, second = tmp_path / "c1.csv", tmp_path / "c2.csv"
        argv1 = self._argv(train_csv, str(first), **{"--scheme": "none,tfcr"})
        argv2 = self._argv(train_csv, str(second), **{"--scheme": "none,tfcr"})
        assert main(argv1) == 0
        assert main(argv2) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_two_classifiers_rejected(self, train_csv, tmp_path, capsys):
        argv = self._argv(
            train_csv, str(tmp_path / "c.csv"), **{"--classifier": "logreg,svm"}
        )
        assert main(argv) == 2
        assert "exactly one classifier" in capsys.readouterr().err


class TestWeights:
    def test_tfcr_top_k_puts_win_first(self, toy_csv, tmp_path):
        out = tmp_path / "weights.json"
        argv = [
            "weights", "--data", toy_csv, "--scheme", "tfcr",
            "--top-k", "3", "--seed", "1", "--out", str(out),
        ]
        assert main(argv) == 0
        payload = json.loads(out.read_text())
        assert payload["scheme"] == "tfcr"
        by_category = {}
        for word, category, value in payload["entries"]:
            by_category.setdefault(category, []).append((word, value))
        assert by_category["A"][0][0] == "win"
        assert by_category["A"][0][1] == pytest.approx(0.32, abs=1e-12)
        assert len(by_category["A"]) == 3
        assert len(by_category["B"]) == 3

    def test_tfidf_tsv_has_no_category_column(self, toy_csv, tmp_path):
        out = tmp_path / "weights.tsv"
        argv = [
            "weights", "--data", toy_csv, "--scheme", "tfidf",
            "--output-format", "tsv", "--seed", "1", "--out", str(out),
        ]
        assert main(argv) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "word\tidf"
        assert all(len(line.split("\t")) == 2 for line in lines)

    def test_stable_output_bytes(self, toy_csv, tmp_path):
        outs = [tmp_path / "w1.json", tmp_path / "w2.json"]
        for out in outs:
            argv = [
                "weights", "--data", toy_csv, "--scheme", "kld",
                "--seed", "1", "--out", str(out),
            ]
            assert main(argv) == 0
        assert outs[0].read_bytes() == outs[1].read_bytes()

    def test_scheme_none_rejected(self, toy_csv, tmp_path, capsys):
        argv = [
            "weights", "--data", toy_csv, "--scheme", "none",
            "--seed", "1", "--out", str(tmp_path / "w.json"),
        ]
        assert main(argv) == 2
        assert "no weights" in capsys.readouterr().err

    def test_bad_top_k_rejected(self, toy_csv, tmp_path, capsys):
        argv = [
            "weights", "--data", toy_csv, "--scheme", "tfcr",
            "--top-k", "0", "--seed", "1", "--out", str(tmp_path / "w.json"),
        ]
        assert main(argv) == 2
        assert "--top-k" in capsys.readouterr().err


class TestVectorize:
    def test_tsv_shape_for_category_scheme(self, toy_csv, tmp_path):
        out = tmp_path / "vectors.tsv"
        argv = [
            "vectorize", "--data", toy_csv, "--scheme", "tfcr",
            "--embedding", "synthetic:3:1", "--seed", "1", "--out", str(out),
        ]
        assert main(argv) == 0
        rows = [line.split("\t") for line in out.read_text().splitlines()]
        assert len(rows) == 2
        # source id + label + 2 categories x 3 dimensions
        assert all(len(row) == 2 + 6 for row in rows)
        assert rows[0][1] == "A" and rows[1][1] == "B"
        floats = [float(v) for row in rows for v in row[2:]]
        assert all(abs(v) < 1.0 for v in floats)

    def test_plain_scheme_dimension(self, toy_csv, tmp_path):
        out = tmp_path / "vectors.tsv"
        argv = [
            "vectorize", "--data", toy_csv, "--scheme", "none",
            "--embedding", "synthetic:3:1", "--seed", "1", "--out", str(out),
        ]
        assert main(argv) == 0
        rows = [line.split("\t") for line in out.read_text().splitlines()]
        assert all(len(row) == 2 + 3 for row in rows)


@pytest.fixture(scope="module")
def trained(train_csv, tmp_path_factory):
    out = tmp_path_factory.mktemp("model") / "model.bin"
    argv = [
        "train", "--data", train_csv, "--scheme", "tfcr",
        "--classifier", "logreg", "--embedding", "synthetic:8:2",
        "--seed", "4", "--epochs", "200", "--standardize",
        "--out", str(out),
    ]
    assert main(argv) == 0
    return out


class TestTrainPredict:
    def test_train_writes_model_and_manifest(self, trained):
        assert trained.is_file()
        manifest = json.loads(
            (trained.parent / "model.bin.manifest.json").read_text()
        )
        assert manifest["command"] == "train"
        assert manifest["scheme"] == "tfcr"
        assert manifest["categories"] == ["topic0", "topic1", "topic2"]
        assert manifest["embedding"]["dimension"] == 8
        assert manifest["scaler"] is not None
        assert manifest["weights"]["scheme"] == "tfcr"

    def test_predict_recovers_training_labels(self, trained, train_csv, tmp_path):
        with open(train_csv, encoding="utf-8", newline="") as fh:
            data_rows = list(csv.DictReader(fh))[:6]
        inputs = tmp_path / "docs.txt"
        inputs.write_text("\n".join(row["text"] for row in data_rows) + "\n")
        out = tmp_path / "pred.tsv"
        argv = [
            "predict", "--model", str(trained),
            "--input", str(inputs), "--out", str(out),
        ]
        assert main(argv) == 0
        lines = out.read_text().splitlines()
        assert lines[0].split("\t") == ["label", "topic0", "topic1", "topic2"]
        predicted = [line.split("\t")[0] for line in lines[1:]]
        assert predicted == [row["label"] for row in data_rows]

    def test_predict_to_stdout_from_stdin(self, trained, train_csv, capsys, monkeypatch):
        with open(train_csv, encoding="utf-8", newline="") as fh:
            row = next(csv.DictReader(fh))
        monkeypatch.setattr("sys.stdin", io.StringIO(row["text"] + "\n"))
        assert main(["predict", "--model", str(trained)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("label\t")
        assert lines[1].split("\t")[0] == row["label"]

    def test_empty_line_predicts_without_crash(self, trained, tmp_path):
        inputs = tmp_path / "docs.txt"
        inputs.write_text("cat0kw00 cat0kw01\n\nunrelated words entirely\n")
        out = tmp_path / "pred.tsv"
        argv = [
            "predict", "--model", str(trained),
            "--input", str(inputs), "--out", str(out),
        ]
        assert main(argv) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 4  # header + three input lines
        labels = {"topic0", "topic1", "topic2"}
        assert all(line.split("\t")[0] in labels for line in lines[1:])

    def test_wrong_dimension_embedding_exits_2(self, trained, tmp_path, capsys):
        inputs = tmp_path / "docs.txt"
        inputs.write_text("cat0kw00\n")
        argv = [
            "predict", "--model", str(trained), "--embedding", "synthetic:9:2",
            "--input", str(inputs), "--out", str(tmp_path / "p.tsv"),
        ]
        assert main(argv) == 2
        err = capsys.readouterr().err
        assert "dimension 9" in err and "8" in err

    def test_missing_model_exits_2(self, tmp_path, capsys):
        argv = ["predict", "--model", str(tmp_path / "nope.bin")]
        assert main(argv) == 2
        assert "not found" in capsys.readouterr().err


def test_version_flag_reports_name():
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
