#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace ringpet::nn {

struct Shape4 {
  int n = 1, c = 1, h = 1, w = 1;
  size_t count() const { return static_cast<size_t>(n) * c * h * w; }
  bool operator==(const Shape4&) const = default;
};

/// Dense N,C,H,W tensor of doubles. Double precision throughout so the
/// finite-difference checks see the same arithmetic as training.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape4 s, double fill = 0.0) : shape(s), data(s.count(), fill) {}

  static Tensor zeros(Shape4 s) { return Tensor(s); }
  static Tensor full(Shape4 s, double v) { return Tensor(s, v); }

  Shape4 shape{};
  std::vector<double> data;

  size_t size() const { return data.size(); }
  double& operator[](size_t i) { return data[i]; }
  double operator[](size_t i) const { return data[i]; }
  double& at(int n, int c, int h, int w) {
    return data[((static_cast<size_t>(n) * shape.c + c) * shape.h + h) * shape.w + w];
  }
  double at(int n, int c, int h, int w) const {
    return data[((static_cast<size_t>(n) * shape.c + c) * shape.h + h) * shape.w + w];
  }
  bool all_finite() const;
};

struct Node;
using Var = std::shared_ptr<Node>;

/// One vertex of the dynamic autodiff graph. backward_fn reads this
/// node's grad and accumulates into the parents' grads.
struct Node {
  Tensor value;
  Tensor grad;
  bool requires_grad = false;
  uint64_t order = 0;
  std::string name;
  std::vector<Var> parents;
  std::function<void(Node&)> backward_fn;

  void ensure_grad() {
    if (grad.size() != value.size()) grad = Tensor::zeros(value.shape);
  }
};

/// Graph input that does not need gradients.
Var constant(Tensor v, std::string name = {});
/// Differentiable leaf (parameter or checked input).
Var leaf(Tensor v, std::string name = {});

/// Reverse-mode sweep from a scalar root.
void backward(const Var& root);
void zero_grad(const std::vector<Var>& params);

// --- differentiable ops (stride 1 convolutions, square kernels) ---

/// Cross-correlation; w is (Cout, Cin, K, K), optional bias (1, Cout, 1, 1).
Var conv2d(const Var& x, const Var& w, const Var& b, int pad);

/// Per-channel batch normalization. Training mode uses batch statistics
/// and updates the running buffers (momentum 0.1, PyTorch-style unbiased
/// running variance); eval mode normalizes with the running buffers.
Var batchnorm2d(const Var& x, const Var& gamma, const Var& beta, Tensor& running_mean,
                Tensor& running_var, bool training, double momentum = 0.1, double eps = 1e-5);

Var relu(const Var& x);
Var sigmoid(const Var& x);
Var maxpool2x2(const Var& x);
Var upsample_nearest2x(const Var& x);
Var concat_channels(const Var& a, const Var& b);
Var add(const Var& a, const Var& b);
/// x (N,C,H,W) + bias (N,C,1,1) broadcast over H,W.
Var add_channel_bias(const Var& x, const Var& bias);
/// x scaled by a one-channel gate alpha (N,1,H,W), broadcast over C.
Var gate_scale(const Var& x, const Var& alpha);
/// Zero-pad bottom/right to (new_h, new_w).
Var pad_hw(const Var& x, int new_h, int new_w);
/// Keep the top-left (h, w) window.
Var crop_hw(const Var& x, int h, int w);
Var mul_scalar(const Var& x, double k);

Var mse_loss(const Var& pred, const Var& target);
Var mae_loss(const Var& pred, const Var& target);
/// Scalar sum(P .* x) against a fixed projection tensor.
Var weighted_sum(const Var& x, Tensor projection);

}  // namespace ringpet::nn
