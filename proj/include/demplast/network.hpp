#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "demplast/mesh.hpp"

namespace demplast {

/// Flat parameter vector: for each layer, the weight matrix (out x in,
/// row-major) followed by the bias vector.
using ParamVector = std::vector<double>;

/// Affine map applied to coordinates before the first layer.
struct InputTransform {
  Vec3 scale{1.0, 1.0, 1.0};
  Vec3 shift{0.0, 0.0, 0.0};

  /// Maps the axis-aligned bounding box of `points` onto [-1, 1]^3.
  static InputTransform unit_box(std::span<const Vec3> points);
  friend bool operator==(const InputTransform&, const InputTransform&) = default;
};

/// Fully connected network R^3 -> R^3, tanh on hidden layers and linear
/// output. Batches are stored column-wise (3 x batch).
class Network {
public:
  using RowMajorMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

  /// Activations of every layer from the last forward pass; consumed by backward.
  struct Tape {
    std::vector<Eigen::MatrixXd> activations;  ///< [0] is the transformed input
  };

  Network() = default;
  /// Zero-initialized network. Widths must start and end at 3.
  explicit Network(std::vector<int> widths);

  /// Glorot-uniform weights, zero biases.
  static Network init(std::vector<int> widths, std::uint64_t seed);

  const std::vector<int>& widths() const { return widths_; }
  std::size_t num_layers() const { return widths_.size() - 1; }
  std::size_t param_count() const { return params_.size(); }

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }
  ParamVector flatten() const { return params_; }
  void unflatten(std::span<const double> flat);

  RowMajorMap weights(std::size_t layer) const;
  Eigen::Map<const Eigen::VectorXd> bias(std::size_t layer) const;

  /// Zeroes the output layer so that the initial prediction is u = 0.
  void zero_output_layer();
  /// Multiplies the output-layer weights and biases by `factor`.
  void scale_output_layer(double factor);

  const InputTransform& input_transform() const { return input_; }
  void set_input_transform(const InputTransform& t) { input_ = t; }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& coords) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& coords, Tape& tape) const;

  /// Gradient of sum_b <upstream_b, output_b> with respect to the parameters.
  ParamVector backward(const Tape& tape, const Eigen::MatrixXd& upstream) const;

private:
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + static_cast<std::size_t>(widths_[layer + 1] * widths_[layer]);
  }

  std::vector<int> widths_;
  std::vector<std::size_t> offsets_;
  ParamVector params_;
  InputTransform input_;
};

/// Packs node coordinates into a 3 x N batch.
Eigen::MatrixXd coords_matrix(std::span<const Vec3> points);

/// Binary checkpoint: magic, widths, input transform, parameters; all
/// little-endian. Round-trips bit-exactly.
void save_checkpoint(const std::string& path, const Network& net);
Network load_checkpoint(const std::string& path);

}  // namespace demplast
