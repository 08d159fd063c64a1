import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import max_gradient_error
from namelens import labels as lbl
from namelens.classifier import (
    Hyperparameters,
    Model,
    evaluate,
    load_model,
    predict,
    save_model,
    softmax,
    split,
    train,
)
from namelens.corpus import LabeledName
from namelens.errors import (
    DegenerateDataError,
    EmptyTestSetError,
    EmptyTrainingSetError,
    UnknownLabelError,
)
from namelens.features import FeatureConfig, Vocabulary
from namelens.names import normalize


def labeled(raw: str, label: str) -> LabeledName:
    return LabeledName(normalize(raw), label)


def toy_pair(n=20):
    return [labeled("aaaa", "CHI") for _ in range(n)] + [
        labeled("zzzz", "GER") for _ in range(n)
    ]


def bias_only_model(biases) -> Model:
    """A model with no features; prediction is driven purely by the biases."""
    return Model(
        classes=lbl.CLASSES,
        vocab=Vocabulary(frozen=True),
        weights=np.zeros((len(lbl.CLASSES), 0)),
        biases=np.array(biases, dtype=float),
        feature_config=FeatureConfig(),
    )


class TestSoftmax:
    @given(st.lists(st.floats(-50, 50), min_size=2, max_size=12))
    def test_sums_to_one(self, scores):
        probs = softmax(np.array(scores))
        assert abs(probs.sum() - 1.0) < 1e-9
        assert np.all(probs >= 0)

    @given(st.lists(st.floats(-50, 50), min_size=2, max_size=12), st.floats(-100, 100))
    def test_shift_invariant(self, scores, shift):
        base = softmax(np.array(scores))
        shifted = softmax(np.array(scores) + shift)
        assert np.allclose(base, shifted, atol=1e-12)


class TestGradient:
    def test_analytic_matches_finite_differences(self):
        assert max_gradient_error(10, seed=123) < 1e-4


class TestTrain:
    def test_separable_toy_reaches_perfect_accuracy(self):
        model = train(toy_pair(), Hyperparameters(l2=0.01), seed=0)
        report = evaluate(model, toy_pair())
        assert report.accuracy == 1.0

    def test_same_seed_identical_weights(self):
        m1 = train(toy_pair(), Hyperparameters(l2=0.01), seed=7)
        m2 = train(toy_pair(), Hyperparameters(l2=0.01), seed=7)
        assert np.array_equal(m1.weights, m2.weights)
        assert np.array_equal(m1.biases, m2.biases)

    def test_loss_non_increasing_and_recorded(self):
        model = train(toy_pair(), Hyperparameters(l2=0.01), seed=0)
        assert model.metadata["converged"]
        assert model.metadata["final_loss"] > 0

    def test_class_weighted_flag(self):
        # imbalanced data still separable; weighting must not break training
        data = [labeled("aaaa", "CHI") for _ in range(30)] + [
            labeled("zzzz", "GER") for _ in range(5)
        ]
        model = train(data, Hyperparameters(l2=0.01, class_weighted=True), seed=0)
        assert evaluate(model, data).accuracy == 1.0

    def test_minibatch_seeds_land_on_same_optimum(self):
        # with l2 > 0 the optimum is unique; stochastic paths must agree
        data = toy_pair(8)
        hyper = Hyperparameters(l2=0.01, batch_size=4, max_epochs=300)
        l0 = train(data, hyper, seed=0).metadata["final_loss"]
        l1 = train(data, hyper, seed=1).metadata["final_loss"]
        assert abs(l0 - l1) <= 1e-3 * max(1.0, abs(l0))

    def test_label_permutation_equivariance(self):
        swapped = [
            labeled("aaaa", "GER") for _ in range(20)
        ] + [labeled("zzzz", "CHI") for _ in range(20)]
        m1 = train(toy_pair(), Hyperparameters(l2=0.01), seed=0)
        m2 = train(swapped, Hyperparameters(l2=0.01), seed=0)
        p1 = dict(predict(m1, "aaaa").ranked)
        p2 = dict(predict(m2, "aaaa").ranked)
        assert abs(p1["CHI"] - p2["GER"]) < 1e-9
        assert abs(p1["GER"] - p2["CHI"]) < 1e-9

    def test_empty_training_set(self):
        with pytest.raises(EmptyTrainingSetError):
            train([], Hyperparameters(), seed=0)

    def test_unknown_label(self):
        with pytest.raises(UnknownLabelError):
            train([labeled("x", "OTH")], Hyperparameters(), seed=0)
        with pytest.raises(UnknownLabelError):
            train([labeled("x", "XYZ")], Hyperparameters(), seed=0)

    def test_single_class_rejected(self):
        with pytest.raises(DegenerateDataError):
            train([labeled("aaaa", "CHI") for _ in range(5)], Hyperparameters(), seed=0)


class TestPredict:
    def test_zero_vector_uniform_and_oth(self):
        model = bias_only_model(np.zeros(12))
        prediction = predict(model, "anything")
        confs = [c for _, c in prediction.ranked]
        assert all(abs(c - 1 / 12) < 1e-12 for c in confs)
        assert prediction.decided == lbl.OTH

    def test_confidence_above_third_decides_top(self):
        biases = np.log(np.array([0.34] + [0.06] * 11))
        prediction = predict(bias_only_model(biases), "x")
        assert prediction.ranked[0][1] > 1 / 3
        assert prediction.decided == prediction.ranked[0][0]

    def test_exactly_one_third_is_oth(self):
        # three tied classes, the rest negligible: top confidence lands on
        # float(1/3) exactly, and the strict rule must hold
        biases = np.array([0.0, 0.0, 0.0] + [-50.0] * 9)
        prediction = predict(bias_only_model(biases), "x")
        assert prediction.ranked[0][1] == 1 / 3
        assert prediction.decided == lbl.OTH

    def test_confidences_sum_to_one_and_sorted(self, toy_model):
        prediction = predict(toy_model, "abab bab")
        confs = [c for _, c in prediction.ranked]
        assert abs(sum(confs) - 1.0) < 1e-9
        assert all(a >= b for a, b in zip(confs, confs[1:]))
        assert len(prediction.ranked) == 12
        assert len(prediction.top(3)) == 3

    def test_ties_broken_by_class_order(self):
        prediction = predict(bias_only_model(np.zeros(12)), "x")
        assert tuple(label for label, _ in prediction.ranked) == lbl.CLASSES


class TestEvaluate:
    def test_perfect_classifier(self):
        model = train(toy_pair(), Hyperparameters(l2=0.01), seed=0)
        report = evaluate(model, toy_pair())
        assert report.accuracy == 1.0
        assert report.per_class["CHI"].f1 == 1.0
        assert report.per_class["GER"].f1 == 1.0

    def test_always_one_class_confusion_arithmetic(self):
        always_eng = bias_only_model([5.0] + [0.0] * 11)
        test = [labeled("aa", "ENG"), labeled("bb", "ENG"),
                labeled("cc", "GER"), labeled("dd", "GER")]
        report = evaluate(always_eng, test)
        assert report.per_class["ENG"].recall == 1.0
        assert report.per_class["ENG"].precision == 0.5
        assert report.per_class["GER"].recall == 0.0
        assert report.per_class["GER"].f1 == 0.0  # guarded division
        assert report.accuracy == 0.5

    def test_empty_test_set(self):
        with pytest.raises(EmptyTestSetError):
            evaluate(bias_only_model(np.zeros(12)), [])


class TestSplit:
    def test_seventy_thirty_counts(self):
        data = [labeled(f"n{i}", "ENG") for i in range(10)]
        train_part, test_part = split(data, 0.7, seed=0)
        assert (len(train_part), len(test_part)) == (7, 3)

    def test_same_seed_identical(self):
        data = [labeled(f"n{i}", "ENG") for i in range(30)]
        assert split(data, 0.7, seed=3) == split(data, 0.7, seed=3)

    def test_partition_no_overlap(self):
        data = [labeled(f"n{i}", "ENG") for i in range(25)]
        train_part, test_part = split(data, 0.6, seed=1)
        names = sorted(x.name.normalized for x in train_part + test_part)
        assert names == sorted(x.name.normalized for x in data)

    def test_floor_allows_empty_train(self):
        data = [labeled("solo", "ENG")]
        train_part, test_part = split(data, 0.5, seed=0)
        assert (len(train_part), len(test_part)) == (0, 1)

    def test_ratio_validated(self):
        with pytest.raises(ValueError):
            split([labeled("a", "ENG")], 1.0, seed=0)


class TestSerialization:
    def test_round_trip_bit_exact(self, tmp_path):
        model = train(toy_pair(), Hyperparameters(l2=0.01), seed=0)
        path = tmp_path / "model.json"
        save_model(model, path)
        loaded = load_model(path)
        assert np.array_equal(model.weights, loaded.weights)
        assert np.array_equal(model.biases, loaded.biases)
        assert loaded.feature_config == model.feature_config
        for raw in ("aaaa", "zzzz", "azaz"):
            assert predict(model, raw) == predict(loaded, raw)

    def test_save_is_deterministic(self, tmp_path):
        model = train(toy_pair(), Hyperparameters(l2=0.01), seed=0)
        p1, p2 = tmp_path / "m1.json", tmp_path / "m2.json"
        save_model(model, p1)
        save_model(model, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_future_version_rejected(self, tmp_path):
        model = train(toy_pair(), Hyperparameters(l2=0.01), seed=0)
        path = tmp_path / "model.json"
        save_model(model, path)
        doc = path.read_text().replace('"format_version": 1', '"format_version": 99')
        path.write_text(doc)
        with pytest.raises(ValueError, match="version"):
            load_model(path)
