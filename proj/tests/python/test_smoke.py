import numpy as np
import pytest

import gcf


def test_grid_pipeline_is_a_plus_convolution():
    g = gcf.grid_graph(5, 5)
    placements, scheme = gcf.pipeline(g)
    assert placements.complete
    assert placements[12].lost_slots == 0 and placements[0].lost_slots > 0
    assert placements.kernel_size == 5
    check = gcf.verify_grid(scheme, 5, 5)
    assert check.passed, check.reason
    assert check.offsets == [(0, 0), (-1, 0), (0, -1), (0, 1), (1, 0)]
    assert gcf.verify_grid(scheme.transposed(), 5, 5).passed


def test_path_placements_mark_lost_slots():
    g = gcf.load_edge_list("3\n0 1\n1 2\n")
    pm = gcf.propagate(g, gcf.init_kernel(g, 1))
    assert pm[0].slots == [0, None, 1]
    assert pm[2].slots == [2, 1, None]
    assert pm[0].score.total == 1.0
    assert gcf.is_fixed_point(g, pm)
    text = gcf.dump_placements(pm)
    assert gcf.dump_placements(gcf.load_placements(text)) == text


def test_knn_recovers_grid():
    pts = [[r, c] for r in range(4) for c in range(4)]
    g = gcf.infer_knn_graph(pts, 2)
    assert sorted(g.edges()) == sorted(gcf.grid_graph(4, 4).edges())


def test_conv_forward_matches_dense_matrix():
    g = gcf.grid_graph(4, 4)
    _, scheme = gcf.pipeline(g)
    rng = np.random.default_rng(0)
    w = rng.normal(size=scheme.kernel_size)
    x = rng.normal(size=16)
    dense = np.zeros((16, 16))
    for out, inp, idx in scheme.triples:
        dense[out, inp] += w[idx]
    y = gcf.conv_forward(scheme, list(w), 0.5, list(x))
    assert np.allclose(y, dense @ x + 0.5)


def test_training_runs_and_is_deterministic():
    g = gcf.grid_graph(4, 4)
    pm, scheme = gcf.pipeline(g)
    templates = gcf.random_templates(2, pm.kernel_size, 1)
    train = gcf.make_translated_dataset(pm, templates, 20, 0.1, 2)
    test = gcf.make_translated_dataset(pm, templates, 10, 0.1, 3)
    assert train.signals.shape == (40, 16)
    cfg = gcf.TrainConfig()
    cfg.epochs = 5
    cfg.lr = 0.05

    def run():
        model = gcf.make_graph_cnn(scheme, gcf.NetConfig(), 7)
        return [(m.loss, m.test_accuracy) for m in gcf.train(model, train, test, cfg)]

    first = run()
    assert len(first) == 5
    assert first == run()


def test_errors_map_to_python_exceptions():
    with pytest.raises(gcf.ParseError):
        gcf.load_scheme("2 1\n0 0\n")
    with pytest.raises(gcf.ParameterError):
        gcf.infer_knn_graph([[0.0], [1.0]], 2)
    split = gcf.Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(gcf.ConnectivityError):
        gcf.propagate(split, gcf.init_kernel(split, 0))
    assert issubclass(gcf.ParseError, gcf.Error)
