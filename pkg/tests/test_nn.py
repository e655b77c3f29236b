import numpy as np
import pytest

from irs_noma.nn import DenseNet, soft_update


def finite_difference_grads(net, x, weight_vec, h=1e-5):
    """Central differences of f(params) = weight_vec . forward(x)."""
    def f():
        out, _ = net.forward(x)
        return float(np.dot(weight_vec, out))

    grads = []
    for p in net.parameters():
        g = np.zeros_like(p)
        it = np.nditer(p, flags=["multi_index"])
        for _ in it:
            idx = it.multi_index
            old = p[idx]
            p[idx] = old + h
            up = f()
            p[idx] = old - h
            down = f()
            p[idx] = old
            g[idx] = (up - down) / (2 * h)
        grads.append(g)
    return grads


def rel_err(a, b):
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-8)
    return np.max(np.abs(a - b)) / scale


def test_forward_identity_linear():
    net = DenseNet([3, 3], ["linear"], np.random.default_rng(0))
    net.weights[0] = np.eye(3)
    net.biases[0] = np.zeros(3)
    x = np.array([1.0, -2.0, 0.5])
    out, _ = net.forward(x)
    assert np.array_equal(out, x)


def test_forward_relu_clips():
    net = DenseNet([2, 2], ["relu"], np.random.default_rng(0))
    net.weights[0] = np.eye(2)
    net.biases[0] = np.zeros(2)
    out, _ = net.forward(np.array([-1.0, 2.0]))
    assert np.array_equal(out, [0.0, 2.0])


def test_forward_tanh_zero_weights():
    net = DenseNet([4, 3], ["tanh"], np.random.default_rng(0))
    net.weights[0][:] = 0.0
    out, _ = net.forward(np.array([5.0, -3.0, 2.0, 9.0]))
    assert np.array_equal(out, np.zeros(3))


def test_forward_batch_matches_single():
    net = DenseNet([3, 5, 2], ["relu", "tanh"], np.random.default_rng(1))
    xs = np.random.default_rng(2).standard_normal((4, 3))
    batch_out, _ = net.forward(xs)
    for i in range(4):
        single, _ = net.forward(xs[i])
        assert np.allclose(batch_out[i], single, atol=1e-15)


def test_forward_dimension_error():
    net = DenseNet([3, 2], ["linear"], np.random.default_rng(0))
    with pytest.raises(ValueError):
        net.forward(np.ones(4))


def test_backward_linear_single_output_row():
    net = DenseNet([3, 2], ["linear"], np.random.default_rng(0))
    x = np.array([1.5, -0.5, 2.0])
    _, cache = net.forward(x)
    grads, input_grad = net.backward(cache, np.array([1.0, 0.0]))  # loss = y_0
    dw, db = grads[0]
    assert np.array_equal(dw[:, 0], x)
    assert np.array_equal(dw[:, 1], np.zeros(3))
    assert np.array_equal(db, [1.0, 0.0])
    assert np.allclose(input_grad, net.weights[0][:, 0], atol=1e-15)


def test_backward_zero_gradient_is_zero():
    net = DenseNet([3, 4, 2], ["tanh", "linear"], np.random.default_rng(3))
    x = np.random.default_rng(4).standard_normal(3)
    _, cache = net.forward(x)
    grads, input_grad = net.backward(cache, np.zeros(2))
    assert np.array_equal(input_grad, np.zeros(3))
    for dw, db in grads:
        assert not dw.any() and not db.any()


@pytest.mark.parametrize("dims,acts", [
    ([2, 3, 1], ["tanh", "linear"]),
    ([4, 5, 3], ["tanh", "tanh"]),
    ([3, 4, 4, 2], ["relu", "tanh", "linear"]),
])
def test_backward_matches_finite_differences(dims, acts):
    rng = np.random.default_rng(5)
    for trial in range(5):
        net = DenseNet(dims, acts, rng)
        x = rng.standard_normal(dims[0])
        w = rng.standard_normal(dims[-1])
        out, cache = net.forward(x)
        analytic, _ = net.backward(cache, w)
        numeric = finite_difference_grads(net, x, w)
        flat_analytic = [dw for dw, _ in analytic] + [db for _, db in analytic]
        for a, b in zip(flat_analytic, numeric):
            assert rel_err(a, b) < 1e-4


def test_backward_input_gradient_matches_finite_differences():
    rng = np.random.default_rng(6)
    net = DenseNet([3, 4, 2], ["tanh", "tanh"], rng)
    x = rng.standard_normal(3)
    w = rng.standard_normal(2)
    _, cache = net.forward(x)
    _, input_grad = net.backward(cache, w)
    h = 1e-5
    numeric = np.zeros(3)
    for i in range(3):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        numeric[i] = (np.dot(w, net.forward(xp)[0]) - np.dot(w, net.forward(xm)[0])) / (2 * h)
    assert rel_err(input_grad, numeric) < 1e-4


def test_adam_first_step_is_sign_like():
    net = DenseNet([1, 1], ["linear"], np.random.default_rng(7))
    w0 = net.weights[0][0, 0]
    g = 0.37
    lr = 1e-2
    net.adam_step([(np.array([[g]]), np.array([0.0]))], lr=lr)
    expected = w0 - lr * g / (abs(g) + 1e-8)
    assert net.weights[0][0, 0] == pytest.approx(expected, rel=1e-12)
    assert net.adam_t == 1


def test_adam_zero_gradient_keeps_parameters():
    net = DenseNet([2, 2], ["linear"], np.random.default_rng(8))
    before = [p.copy() for p in net.parameters()]
    zero = [(np.zeros((2, 2)), np.zeros(2))]
    net.adam_step(zero, lr=0.5)
    net.adam_step(zero, lr=0.5)
    for p, b in zip(net.parameters(), before):
        assert np.array_equal(p, b)


def test_adam_zero_lr_keeps_parameters():
    net = DenseNet([2, 2], ["linear"], np.random.default_rng(9))
    before = [p.copy() for p in net.parameters()]
    net.adam_step([(np.ones((2, 2)), np.ones(2))], lr=0.0)
    for p, b in zip(net.parameters(), before):
        assert np.array_equal(p, b)


def test_adam_rejects_non_finite_gradients():
    net = DenseNet([2, 2], ["linear"], np.random.default_rng(10))
    before = [p.copy() for p in net.parameters()]
    bad = [(np.full((2, 2), np.nan), np.zeros(2))]
    with pytest.raises(FloatingPointError):
        net.adam_step(bad, lr=0.1)
    for p, b in zip(net.parameters(), before):
        assert np.array_equal(p, b)
    assert net.adam_t == 0


def test_soft_update_tau_one_copies_exactly():
    rng = np.random.default_rng(11)
    main = DenseNet([3, 4, 2], ["relu", "linear"], rng)
    target = DenseNet([3, 4, 2], ["relu", "linear"], rng)
    soft_update(target, main, tau=1.0)
    for pt, pm in zip(target.parameters(), main.parameters()):
        assert np.array_equal(pt, pm)


def test_soft_update_tau_zero_is_noop():
    rng = np.random.default_rng(12)
    main = DenseNet([3, 2], ["linear"], rng)
    target = DenseNet([3, 2], ["linear"], rng)
    before = [p.copy() for p in target.parameters()]
    soft_update(target, main, tau=0.0)
    for p, b in zip(target.parameters(), before):
        assert np.array_equal(p, b)


def test_soft_update_blend_arithmetic():
    rng = np.random.default_rng(13)
    main = DenseNet([2, 2], ["linear"], rng)
    target = DenseNet([2, 2], ["linear"], rng)
    main.weights[0][:] = 1.0
    target.weights[0][:] = 0.0
    soft_update(target, main, tau=0.05)
    assert np.allclose(target.weights[0], 0.05, atol=1e-15)


def test_soft_update_is_exact_contraction():
    rng = np.random.default_rng(14)
    main = DenseNet([3, 4, 2], ["tanh", "linear"], rng)
    target = DenseNet([3, 4, 2], ["tanh", "linear"], rng)
    tau = 0.05
    gaps = [pt - pm for pt, pm in zip(target.parameters(), main.parameters())]
    soft_update(target, main, tau)
    for gap, pt, pm in zip(gaps, target.parameters(), main.parameters()):
        assert np.allclose(pt - pm, (1 - tau) * gap, atol=1e-15)


def test_soft_update_rejects_mismatched_nets():
    rng = np.random.default_rng(15)
    main = DenseNet([3, 2], ["linear"], rng)
    target = DenseNet([3, 3], ["linear"], rng)
    with pytest.raises(ValueError):
        soft_update(target, main, tau=0.5)
    with pytest.raises(ValueError):
        soft_update(main, main, tau=1.5)


def test_save_load_round_trip(tmp_path):
    rng = np.random.default_rng(16)
    net = DenseNet([3, 5, 2], ["relu", "tanh"], rng)
    net.adam_step([(np.ones_like(w), np.ones(w.shape[1])) for w in net.weights], lr=1e-3)
    path = tmp_path / "net.bin"
    net.save(path)
    loaded = DenseNet.load(path)
    assert loaded.dims == net.dims
    assert loaded.activations == net.activations
    assert loaded.adam_t == net.adam_t
    for a, b in zip(loaded.parameters(), net.parameters()):
        assert np.array_equal(a, b)
    for a, b in zip(loaded.adam_m + loaded.adam_v, net.adam_m + net.adam_v):
        assert np.array_equal(a, b)
    x = rng.standard_normal(3)
    assert np.array_equal(loaded.forward(x)[0], net.forward(x)[0])


def test_load_rejects_garbage(tmp_path):
    path = tmp_path / "junk.bin"
    path.write_bytes(b"not a checkpoint\n\n")
    with pytest.raises(ValueError):
        DenseNet.load(path)


def test_final_scale_shrinks_last_layer():
    rng = np.random.default_rng(17)
    net = DenseNet([4, 8, 2], ["relu", "tanh"], rng, final_scale=1e-3)
    assert np.max(np.abs(net.weights[-1])) < 1e-3
    assert np.max(np.abs(net.weights[0])) > 1e-3
