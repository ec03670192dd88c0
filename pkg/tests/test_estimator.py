import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.model_selection import cross_val_score

from c45advisor import C45Classifier
from c45advisor.builder import build_tree
from c45advisor.features import derive_student_dataset, generate_synthetic
from c45advisor.model import InductionParams, classify_dataset


def test_params_round_trip():
    clf = C45Classifier(min_cases=3, confidence_factor=0.1, prune=False)
    assert clf.get_params() == {
        "min_cases": 3, "confidence_factor": 0.1, "prune": False, "nominal_features": None,
    }
    other = clone(clf).set_params(min_cases=1)
    assert other.min_cases == 1 and clf.min_cases == 3


def test_fit_predict_arrays():
    X = np.array([[1.0], [2.0], [3.0], [4.0], [5.0], [6.0]])
    y = np.array(["lo", "lo", "lo", "hi", "hi", "hi"])
    clf = C45Classifier().fit(X, y)
    assert list(clf.classes_) == ["hi", "lo"]
    assert clf.n_features_in_ == 1
    assert list(clf.predict([[0.0], [10.0]])) == ["lo", "hi"]
    proba = clf.predict_proba(X)
    assert proba.shape == (6, 2)
    np.testing.assert_allclose(proba.sum(axis=1), 1.0)
    assert clf.score(X, y) == 1.0
    assert clf.export_text() == "x0 <= 3: lo (3.0)\nx0 > 3: hi (3.0)"
    assert clf.export_graphviz().startswith("digraph")


def test_integer_labels_and_missing_values():
    X = np.array([[0.0, np.nan], [1.0, 2.0], [5.0, 1.0], [6.0, np.nan]])
    y = np.array([0, 0, 1, 1])
    clf = C45Classifier(min_cases=1).fit(X, y)
    assert clf.predict(X).tolist() == [0, 0, 1, 1]


def test_dataframe_with_categories():
    pd = pytest.importorskip("pandas")
    df = pd.DataFrame({
        "status": ["a", "a", "b", "b", "a", "b"],
        "hours": [10, 12, 11, 13, 9, 14],
    })
    y = ["ok", "ok", "risk", "risk", "ok", "risk"]
    clf = C45Classifier(min_cases=1).fit(df, y)
    assert list(clf.feature_names_in_) == ["status", "hours"]
    assert clf.tree_.root.test.attr == "status"
    assert list(clf.predict(pd.DataFrame({"status": ["b", "z"], "hours": [1, 1]}))) == [
        "risk", "ok"
    ]


def test_forced_nominal_column():
    X = np.array([[1], [2], [3], [1], [2], [3]])
    y = ["a", "b", "c", "a", "b", "c"]
    clf = C45Classifier(min_cases=1, nominal_features=[0]).fit(X, y)
    assert clf.tree_.root.test.op == "="
    assert clf.tree_.schema[0].values == ("1", "2", "3")
    assert clf.score(X, y) == 1.0


def test_sample_weight_changes_majority():
    X = np.zeros((3, 1))
    y = ["a", "b", "b"]
    assert C45Classifier().fit(X, y).predict([[0]])[0] == "b"
    assert C45Classifier().fit(X, y, sample_weight=[5, 1, 1]).predict([[0]])[0] == "a"


def test_dataset_input_matches_library():
    ds = derive_student_dataset(generate_synthetic(200, 5, 0.05))
    clf = C45Classifier().fit(ds)
    tree = build_tree(ds, InductionParams())
    assert clf.tree_ == tree
    np.testing.assert_array_equal(clf.predict_proba(ds), classify_dataset(tree, ds))
    with pytest.raises(ValueError):
        clf.predict(np.zeros((1, 7)))


def test_errors():
    with pytest.raises(NotFittedError):
        C45Classifier().predict([[1.0]])
    with pytest.raises(ValueError):
        C45Classifier(confidence_factor=2).fit([[1.0], [2.0]], ["a", "b"])
    with pytest.raises(TypeError):
        C45Classifier(min_cases="2").fit([[1.0], [2.0]], ["a", "b"])
    with pytest.raises(ValueError):
        C45Classifier().fit([[1.0], [2.0]], ["a"])
    with pytest.raises(ValueError):
        C45Classifier().fit([[1.0], [2.0]])
    clf = C45Classifier().fit([[1.0, 2.0], [2.0, 3.0]], ["a", "b"])
    with pytest.raises(ValueError):
        clf.predict([[1.0]])


def test_works_in_sklearn_cross_validation():
    records = generate_synthetic(300, 2, 0.0)
    X = np.array([[r.total_reg, r.diff, r.l_status] for r in records], dtype=object)
    y = np.array([r.ad_status for r in records])
    scores = cross_val_score(C45Classifier(), X, y, cv=3)
    assert scores.mean() > 0.95
