"""End-to-end smoke tests for the Python bindings.

Deep behavior is covered by the C++ suites; these tests check that the
module exposes the pipeline coherently from Python.
"""

import pytest

import phishml


@pytest.fixture(scope="module")
def corpus():
    return phishml.synthetic_corpus(rows=600, seed=3)


@pytest.fixture(scope="module")
def splits(corpus):
    return phishml.split(corpus, seed=42)


def test_version_and_feature_names():
    assert isinstance(phishml.__version__, str) and phishml.__version__
    names = phishml.feature_names()
    assert len(names) == 30
    assert names[0] == "having_IP_Address"
    assert len(set(names)) == 30


def test_synthetic_corpus_is_deterministic(corpus):
    assert len(corpus) == 600
    assert len(corpus.feature_names) == 30
    again = phishml.synthetic_corpus(rows=600, seed=3)
    assert corpus.fingerprint() == again.fingerprint()
    other = phishml.synthetic_corpus(rows=600, seed=4)
    assert corpus.fingerprint() != other.fingerprint()
    labels = {corpus.row_label(i) for i in range(len(corpus))}
    assert labels == {"PHISHING", "LEGITIMATE"}
    assert all(v in (-1, 0, 1) for v in corpus.row_values(0))


def test_split_partitions_every_row(corpus, splits):
    train, validate, test = splits
    assert len(train) + len(validate) + len(test) == len(corpus)
    assert len(train) > len(test) > 0
    train2, _, _ = phishml.split(corpus, seed=42)
    assert train2.fingerprint() == train.fingerprint()


def test_kfold_round_trip(corpus):
    folds = phishml.kfold(corpus, 4, seed=1)
    assert len(folds) == 4
    for train, test in folds:
        assert len(train) + len(test) == len(corpus)


def test_csv_round_trip(tmp_path, corpus):
    path = str(tmp_path / "corpus.csv")
    corpus.save(path)
    loaded = phishml.load_csv(path)
    assert loaded.fingerprint() == corpus.fingerprint()


@pytest.mark.parametrize("kind", ["mcar", "svm", "tree", "hybrid"])
def test_train_predict_evaluate(kind, splits):
    train, _, test = splits
    model = phishml.train(kind, train, seed=42)
    assert model.kind == kind
    assert model.feature_names == train.feature_names

    row = test.row_values(0)
    verdict = model.predict(row)
    assert verdict in ("PHISHING", "LEGITIMATE")
    score = model.score(row)
    if score > 0:
        assert verdict == "LEGITIMATE"
    else:
        assert verdict == "PHISHING"
    assert model.explanation(row)

    result = phishml.evaluate(model, test)
    assert result["model_kind"] == kind
    cm = result["confusion"]
    assert cm["tp"] + cm["fp"] + cm["tn"] + cm["fn"] == len(test)
    assert 0.75 <= result["accuracy"] <= 1.0
    assert 0.5 <= result["auc"] <= 1.0
    assert result["model_size_bytes"] > 0


def test_model_save_load_round_trip(tmp_path, splits):
    train, _, _ = splits
    model = phishml.train("hybrid", train, seed=42)
    path = str(tmp_path / "hybrid.json")
    model.save(path)
    loaded = phishml.load_model(path)
    assert loaded.kind == "hybrid"
    assert loaded.to_json() == model.to_json()


def test_extract_url_offline():
    result = phishml.extract_url("http://paypal-secure.example.com/login")
    assert len(result["values"]) == 30
    assert result["feature_names"] == phishml.feature_names()
    assert all(v in (-1, 0, 1) for v in result["values"])
    assert set(result["provenance"]) <= {"computed", "lookup", "unavailable_default"}

    again = phishml.extract_url("http://paypal-secure.example.com/login")
    assert again["values"] == result["values"]


def test_auc_on_separated_scores():
    scores = [0.9, 0.8, 0.2, 0.1]
    labels = ["PHISHING", "PHISHING", "LEGITIMATE", "LEGITIMATE"]
    assert phishml.auc(scores, labels) == pytest.approx(1.0)


def test_errors_are_value_errors():
    assert issubclass(phishml.DataError, ValueError)
    assert issubclass(phishml.ConfigError, ValueError)
    with pytest.raises(phishml.DataError):
        phishml.load_csv("/no/such/file.csv")
    with pytest.raises(phishml.DataError):
        phishml.extract_url("http:///nohost")
    with pytest.raises(phishml.ConfigError):
        phishml.train("forest", phishml.synthetic_corpus(rows=40, seed=1))
