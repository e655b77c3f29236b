"""Minimal dense-network engine with manual reverse-mode gradients.

Just enough machinery for a deterministic-policy actor and a Q-value
critic: affine layers with relu/tanh/linear activations, exact
backpropagation, Adam, soft target blending, and a flat binary
checkpoint format. Everything is float64.
"""

import numpy as np

ACTIVATIONS = ("relu", "tanh", "linear")

FORMAT_MAGIC = "densenet-v1"


class DenseNet:
    """A stack of affine layers with per-parameter Adam state.

    Weights are (fan_in, fan_out) so a batch forward is ``x @ W + b``;
    single vectors are accepted and returned as vectors. Weights start
    uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases at zero; the
    last layer can be shrunk with ``final_scale`` to keep early actions
    near mid-range.
    """

    def __init__(self, dims, activations, rng: np.random.Generator, final_scale: float = 1.0):
        if len(activations) != len(dims) - 1:
            raise ValueError(f"need {len(dims) - 1} activations, got {len(activations)}")
        for act in activations:
            if act not in ACTIVATIONS:
                raise ValueError(f"unknown activation {act!r}")
        self.dims = list(int(d) for d in dims)
        self.activations = list(activations)
        self.weights = []
        self.biases = []
        for li, (fan_in, fan_out) in enumerate(zip(self.dims[:-1], self.dims[1:])):
            bound = 1.0 / np.sqrt(fan_in)
            w = rng.uniform(-bound, bound, size=(fan_in, fan_out))
            if li == len(self.dims) - 2:
                w *= final_scale
            self.weights.append(w)
            self.biases.append(np.zeros(fan_out))
        self.adam_m = [np.zeros_like(w) for w in self.weights] + [np.zeros_like(b) for b in self.biases]
        self.adam_v = [np.zeros_like(w) for w in self.weights] + [np.zeros_like(b) for b in self.biases]
        self.adam_t = 0

    @property
    def input_dim(self) -> int:
        return self.dims[0]

    @property
    def output_dim(self) -> int:
        return self.dims[-1]

    def parameters(self):
        """Flat parameter list: all weights, then all biases."""
        return self.weights + self.biases

    def forward(self, x):
        """Run the stack; returns (output, cache) with cache feeding backward."""
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        h = x[None, :] if single else x
        if h.shape[1] != self.input_dim:
            raise ValueError(f"input has {h.shape[1]} features, expected {self.input_dim}")
        inputs = []
        post = []
        for w, b, act in zip(self.weights, self.biases, self.activations):
            inputs.append(h)
            z = h @ w + b
            if act == "relu":
                h = np.maximum(z, 0.0)
            elif act == "tanh":
                h = np.tanh(z)
            else:
                h = z
            post.append(h)
        out = h[0] if single else h
        return out, (inputs, post, single)

    def backward(self, cache, output_gradient):
        """Exact gradients for the scalar whose d(scalar)/d(output) is given.

        Returns (param_grads, input_gradient); param_grads is a list of
        (dW, db) pairs aligned with the layers, accumulated over the batch.
        """
        inputs, post, single = cache
        if len(inputs) != len(self.weights):
            raise ValueError("cache does not match this network")
        g = np.asarray(output_gradient, dtype=float)
        g = g[None, :] if single else g
        if g.shape != post[-1].shape:
            raise ValueError(f"output_gradient shape {g.shape} != output shape {post[-1].shape}")
        param_grads = [None] * len(self.weights)
        for li in range(len(self.weights) - 1, -1, -1):
            act = self.activations[li]
            h = post[li]
            if act == "relu":
                g = g * (h > 0.0)
            elif act == "tanh":
                g = g * (1.0 - h * h)
            dw = inputs[li].T @ g
            db = g.sum(axis=0)
            param_grads[li] = (dw, db)
            g = g @ self.weights[li].T
        input_gradient = g[0] if single else g
        return param_grads, input_gradient

    def adam_step(self, param_grads, lr, beta1=0.9, beta2=0.999, eps_adam=1e-8):
        """One bias-corrected Adam update over all parameters."""
        flat = [dw for dw, _ in param_grads] + [db for _, db in param_grads]
        params = self.parameters()
        for g, p in zip(flat, params):
            if g.shape != p.shape:
                raise ValueError(f"gradient shape {g.shape} != parameter shape {p.shape}")
            if not np.all(np.isfinite(g)):
                raise FloatingPointError("non-finite gradient; update rejected")
        self.adam_t += 1
        c1 = 1.0 - beta1**self.adam_t
        c2 = 1.0 - beta2**self.adam_t
        for g, p, m, v in zip(flat, params, self.adam_m, self.adam_v):
            m *= beta1
            m += (1.0 - beta1) * g
            v *= beta2
            v += (1.0 - beta2) * g * g
            p -= lr * (m / c1) / (np.sqrt(v / c2) + eps_adam)

    def copy(self) -> "DenseNet":
        dup = object.__new__(DenseNet)
        dup.dims = list(self.dims)
        dup.activations = list(self.activations)
        dup.weights = [w.copy() for w in self.weights]
        dup.biases = [b.copy() for b in self.biases]
        dup.adam_m = [m.copy() for m in self.adam_m]
        dup.adam_v = [v.copy() for v in self.adam_v]
        dup.adam_t = self.adam_t
        return dup

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(p)) for p in self.parameters())

    def save(self, path):
        """Write the versioned flat binary format (see module docstring)."""
        header = (
            f"{FORMAT_MAGIC}\n"
            f"dims {' '.join(str(d) for d in self.dims)}\n"
            f"activations {' '.join(self.activations)}\n"
            f"adam_t {self.adam_t}\n\n"
        )
        blobs = [p.ravel() for p in self.parameters()]
        blobs += [m.ravel() for m in self.adam_m] + [v.ravel() for v in self.adam_v]
        payload = np.concatenate(blobs).astype("<f8").tobytes()
        with open(path, "wb") as fh:
            fh.write(header.encode("ascii"))
            fh.write(payload)

    @classmethod
    def load(cls, path) -> "DenseNet":
        with open(path, "rb") as fh:
            raw = fh.read()
        head, _, payload = raw.partition(b"\n\n")
        lines = head.decode("ascii").splitlines()
        if not lines or lines[0] != FORMAT_MAGIC:
            raise ValueError(f"{path}: not a {FORMAT_MAGIC} checkpoint")
        meta = dict(line.split(" ", 1) for line in lines[1:])
        dims = [int(t) for t in meta["dims"].split()]
        activations = meta["activations"].split()
        net = cls(dims, activations, rng=np.random.default_rng(0))
        net.adam_t = int(meta["adam_t"])
        values = np.frombuffer(payload, dtype="<f8")
        offset = 0
        for group in (net.parameters(), net.adam_m, net.adam_v):
            for arr in group:
                arr[...] = values[offset : offset + arr.size].reshape(arr.shape)
                offset += arr.size
        if offset != values.size:
            raise ValueError(f"{path}: payload holds {values.size} values, expected {offset}")
        return net


def soft_update(target: DenseNet, main: DenseNet, tau: float):
    """Blend every target parameter toward the main network: tau*main + (1-tau)*target."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    if target.dims != main.dims or target.activations != main.activations:
        raise ValueError("soft_update requires congruent architectures")
    for pt, pm in zip(target.parameters(), main.parameters()):
        pt *= 1.0 - tau
        pt += tau * pm
