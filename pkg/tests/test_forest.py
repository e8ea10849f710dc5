import numpy as np
import pytest

from trajscope.forest import (EvalMetrics, Forest, ForestConfig, evaluate,
                              fit_forest, gini_importance, grid_search,
                              predict, stratified_split, train_and_evaluate)


def make_blobs(rng, n_per_class=40, m=5, shift=3.0, informative=(0,)):
    """Two classes separated only along the `informative` features."""
    X = rng.normal(size=(2 * n_per_class, m))
    y = np.repeat([0, 1], n_per_class)
    for f in informative:
        X[y == 1, f] += shift
    return X, y


# --- stratified split ---------------------------------------------------------

def test_split_exact_fifths():
    X = np.zeros((20, 2))
    y = np.repeat([0, 1], 10)
    X_tr, X_te, y_tr, y_te = stratified_split(X, y)
    assert (y_te == 0).sum() == 2 and (y_te == 1).sum() == 2
    assert y_tr.size == 16


def test_split_rounds_up_13():
    X = np.zeros((26, 2))
    y = np.repeat([1, 2], 13)
    _, _, y_tr, y_te = stratified_split(X, y)
    assert (y_te == 1).sum() == 3 and (y_te == 2).sum() == 3


def test_split_small_class_keeps_one_of_each_side():
    X = np.zeros((12, 2))
    y = np.array([0] * 10 + [1] * 2)
    _, _, y_tr, y_te = stratified_split(X, y)
    assert (y_te == 1).sum() == 1
    assert (y_tr == 1).sum() == 1


def test_split_rejects_singleton_class():
    X = np.zeros((5, 2))
    y = np.array([0, 0, 0, 0, 1])
    with pytest.raises(ValueError, match="insufficient members"):
        stratified_split(X, y)


def test_split_deterministic():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(30, 3))
    y = np.repeat([0, 1], 15)
    a = stratified_split(X, y, ForestConfig(seed=7))
    b = stratified_split(X, y, ForestConfig(seed=7))
    assert np.array_equal(a[3], b[3]) and np.array_equal(a[1], b[1])
    c = stratified_split(X, y, ForestConfig(seed=8))
    assert not np.array_equal(a[1], c[1])


# --- fitting -------------------------------------------------------------------

def test_linearly_separable_perfect_training_accuracy(rng):
    X = np.concatenate([rng.uniform(-5, -1, 30), rng.uniform(1, 5, 30)])[:, None]
    y = (X[:, 0] > 0).astype(int)
    forest = fit_forest(X, y, ForestConfig(n_trees=25))
    assert np.array_equal(predict(forest, X), y)


def test_xor_needs_depth(rng):
    n = 200
    X = rng.uniform(-1, 1, (n, 2))
    y = ((X[:, 0] > 0) ^ (X[:, 1] > 0)).astype(int)
    config = ForestConfig(n_trees=60, max_depth=6)
    _, metrics, _ = train_and_evaluate(X, y, config)
    assert metrics.f1 >= 0.95


def test_same_seed_bit_identical(rng):
    X, y = make_blobs(rng)
    f1 = fit_forest(X, y, ForestConfig(n_trees=20))
    f2 = fit_forest(X, y, ForestConfig(n_trees=20))
    assert np.array_equal(gini_importance(f1), gini_importance(f2))
    assert np.array_equal(predict(f1, X), predict(f2, X))


def test_single_class_rejected():
    X = np.zeros((10, 2))
    y = np.zeros(10, dtype=int)
    with pytest.raises(ValueError):
        fit_forest(X, y)


def test_too_few_samples_rejected():
    with pytest.raises(ValueError):
        fit_forest(np.zeros((3, 2)), np.array([0, 1, 0]))


# --- importance -----------------------------------------------------------------

def test_planted_signal_feature_wins(rng):
    X, y = make_blobs(rng, m=8, informative=(3,))
    forest = fit_forest(X, y, ForestConfig(n_trees=40))
    imp = gini_importance(forest)
    assert int(np.argmax(imp)) == 3


def test_importances_sum_to_one(rng):
    X, y = make_blobs(rng)
    imp = gini_importance(fit_forest(X, y, ForestConfig(n_trees=30)))
    assert imp.sum() == pytest.approx(1.0, abs=1e-9)
    assert np.all(imp >= 0)


def test_duplicated_noise_feature_keeps_signal_on_top(rng):
    X, y = make_blobs(rng, m=6, informative=(0,))
    X_dup = np.hstack([X, X[:, 5:6]])  # copy an uninformative column
    imp = gini_importance(fit_forest(X_dup, y, ForestConfig(n_trees=40)))
    assert int(np.argmax(imp)) == 0


def test_no_split_forest_flagged():
    X = np.ones((8, 3))  # constant features: nothing to split on
    y = np.repeat([0, 1], 4)
    forest = fit_forest(X, y, ForestConfig(n_trees=10))
    assert not forest.has_splits
    assert np.all(gini_importance(forest) == 0.0)


def test_noise_never_beats_signal_over_seeds(rng):
    wins = 0
    for seed in range(20):
        local = np.random.default_rng(seed + 1000)
        X, y = make_blobs(local, n_per_class=30, m=10, informative=(2,))
        imp = gini_importance(fit_forest(X, y, ForestConfig(n_trees=30, seed=seed)))
        wins += int(np.argmax(imp) == 2)
    assert wins >= 19


# --- evaluation -----------------------------------------------------------------

def test_perfect_predictions_metrics(rng):
    X, y = make_blobs(rng, shift=8.0)
    forest, metrics, _ = train_and_evaluate(X, y, ForestConfig(n_trees=30))
    assert metrics.f1 == 1.0
    assert metrics.accuracy == 1.0


def test_all_one_class_predictions_on_balanced_test():
    # degenerate forest that can't split predicts the heavier-weighted class
    X = np.ones((20, 2))
    y = np.repeat([0, 1], 10)
    forest = fit_forest(X, y, ForestConfig(n_trees=5))
    X_test = np.ones((10, 2))
    y_test = np.repeat([0, 1], 5)
    metrics = evaluate(forest, X_test, y_test)
    assert metrics.accuracy == 0.5


def test_empty_test_set_rejected(rng):
    X, y = make_blobs(rng)
    forest = fit_forest(X, y, ForestConfig(n_trees=5))
    with pytest.raises(ValueError):
        evaluate(forest, np.zeros((0, 5)), np.array([]))


def test_balanced_weights_help_minority_recall(rng):
    # 90/10 imbalance with a separable signal
    n0, n1 = 90, 10
    X = rng.normal(size=(n0 + n1, 4))
    y = np.array([0] * n0 + [1] * n1)
    X[y == 1, 1] += 4.0
    config = ForestConfig(n_trees=50)
    X_tr, X_te, y_tr, y_te = stratified_split(X, y, config)
    forest = fit_forest(X_tr, y_tr, config)
    metrics = evaluate(forest, X_te, y_te)
    assert metrics.recall[1] >= 0.9


def test_metrics_serialize(rng):
    X, y = make_blobs(rng)
    _, metrics, _ = train_and_evaluate(X, y, ForestConfig(n_trees=10))
    doc = metrics.to_jsonable()
    assert set(doc) == {"f1", "accuracy", "precision", "recall", "test_size"}


# --- tuning ---------------------------------------------------------------------

def test_grid_search_runs_24_candidates(rng):
    X, y = make_blobs(rng, n_per_class=25, m=4)
    results = grid_search(X, y, ForestConfig(n_trees=10),
                          n_trees_grid=(5, 10, 15, 20),
                          max_depth_grid=(2, 4, 6),
                          features_grid=("sqrt", "log2"))
    assert len(results) == 24
    assert all(r["folds"] == 5 for r in results)
    assert results[0]["mean_f1"] == max(r["mean_f1"] for r in results)


def test_config_validation():
    with pytest.raises(ValueError):
        ForestConfig(n_trees=0)
    with pytest.raises(ValueError):
        ForestConfig(test_fraction=1.5)
