#include "demplast/network.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "demplast/errors.hpp"

namespace demplast {

namespace {

constexpr char kMagic[8] = {'D', 'E', 'M', 'P', 'N', 'E', 'T', '1'};

template <class T>
void put(std::ostream& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& in, const std::string& path) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T)))
    throw IoError("truncated checkpoint '" + path + "'");
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

InputTransform InputTransform::unit_box(std::span<const Vec3> points) {
  InputTransform t;
  if (points.empty()) return t;
  for (int k = 0; k < 3; ++k) {
    double lo = points[0][k], hi = points[0][k];
    for (const auto& p : points) {
      lo = std::min(lo, p[k]);
      hi = std::max(hi, p[k]);
    }
    if (hi > lo) {
      t.scale[k] = 2.0 / (hi - lo);
      t.shift[k] = -(hi + lo) / (hi - lo);
    } else {
      t.scale[k] = 1.0;
      t.shift[k] = -lo;
    }
  }
  return t;
}

Network::Network(std::vector<int> widths) : widths_(std::move(widths)) {
  if (widths_.size() < 2 || widths_.front() != 3 || widths_.back() != 3)
    throw ConfigError("network widths must start and end with 3");
  if (std::any_of(widths_.begin(), widths_.end(), [](int w) { return w < 1; }))
    throw ConfigError("network widths must be positive");
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
    offsets_.push_back(off);
    off += static_cast<std::size_t>(widths_[l + 1]) * static_cast<std::size_t>(widths_[l] + 1);
  }
  params_.assign(off, 0.0);
}

Network Network::init(std::vector<int> widths, std::uint64_t seed) {
  Network net(std::move(widths));
  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const int in = net.widths_[l], out = net.widths_[l + 1];
    const double limit = std::sqrt(6.0 / (in + out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    double* w = net.params_.data() + net.weight_offset(l);
    for (int i = 0; i < in * out; ++i) w[i] = dist(rng);
  }
  return net;
}

void Network::unflatten(std::span<const double> flat) {
  if (flat.size() != params_.size())
    throw ConfigError("parameter vector has " + std::to_string(flat.size()) + " entries, expected " +
                      std::to_string(params_.size()));
  std::copy(flat.begin(), flat.end(), params_.begin());
}

Network::RowMajorMap Network::weights(std::size_t layer) const {
  return RowMajorMap(params_.data() + weight_offset(layer), widths_[layer + 1], widths_[layer]);
}

Eigen::Map<const Eigen::VectorXd> Network::bias(std::size_t layer) const {
  return Eigen::Map<const Eigen::VectorXd>(params_.data() + bias_offset(layer), widths_[layer + 1]);
}

void Network::zero_output_layer() {
  const std::size_t l = num_layers() - 1;
  std::fill(params_.begin() + static_cast<std::ptrdiff_t>(weight_offset(l)), params_.end(), 0.0);
}

void Network::scale_output_layer(double factor) {
  const std::size_t l = num_layers() - 1;
  for (auto it = params_.begin() + static_cast<std::ptrdiff_t>(weight_offset(l)); it != params_.end(); ++it)
    *it *= factor;
}

Eigen::MatrixXd Network::forward(const Eigen::MatrixXd& coords) const {
  Tape tape;
  return forward(coords, tape);
}

Eigen::MatrixXd Network::forward(const Eigen::MatrixXd& coords, Tape& tape) const {
  const Eigen::Index batch = coords.cols();
  tape.activations.resize(num_layers() + 1);
  Eigen::MatrixXd& a0 = tape.activations[0];
  a0.resize(3, batch);
  for (int k = 0; k < 3; ++k) a0.row(k) = coords.row(k).array() * input_.scale[k] + input_.shift[k];
  for (std::size_t l = 0; l < num_layers(); ++l) {
    Eigen::MatrixXd& z = tape.activations[l + 1];
    z.noalias() = weights(l) * tape.activations[l];
    z.colwise() += bias(l);
    if (l + 1 < num_layers()) z = z.array().tanh();
  }
  return tape.activations.back();
}

ParamVector Network::backward(const Tape& tape, const Eigen::MatrixXd& upstream) const {
  if (tape.activations.size() != num_layers() + 1)
    throw ConfigError("backward called without a matching forward pass");
  const Eigen::Index batch = tape.activations[0].cols();
  if (upstream.rows() != 3 || upstream.cols() != batch)
    throw ConfigError("upstream gradient shape " + std::to_string(upstream.rows()) + "x" +
                      std::to_string(upstream.cols()) + " does not match batch of " +
                      std::to_string(batch));
  ParamVector grad(params_.size(), 0.0);
  Eigen::MatrixXd delta = upstream;  // dL/dz for the current layer
  for (std::size_t l = num_layers(); l-- > 0;) {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<RowMajor> gw(grad.data() + weight_offset(l), widths_[l + 1], widths_[l]);
    Eigen::Map<Eigen::VectorXd> gb(grad.data() + bias_offset(l), widths_[l + 1]);
    gw.noalias() = delta * tape.activations[l].transpose();
    gb = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd prev = weights(l).transpose() * delta;
    const Eigen::MatrixXd& a = tape.activations[l];
    delta = prev.array() * (1.0 - a.array().square());
  }
  return grad;
}

Eigen::MatrixXd coords_matrix(std::span<const Vec3> points) {
  Eigen::MatrixXd m(3, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int k = 0; k < 3; ++k) m(k, static_cast<Eigen::Index>(i)) = points[i][k];
  return m;
}

void save_checkpoint(const std::string& path, const Network& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint '" + path + "'");
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(net.widths().size()));
  for (int w : net.widths()) put<std::uint32_t>(out, static_cast<std::uint32_t>(w));
  for (double v : net.input_transform().scale) put(out, v);
  for (double v : net.input_transform().shift) put(out, v);
  put<std::uint64_t>(out, net.param_count());
  for (double v : net.params()) put(out, v);
  if (!out) throw IoError("failed writing checkpoint '" + path + "'");
}

Network load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path + "'");
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw IoError("'" + path + "' is not a network checkpoint");
  const auto n = get<std::uint32_t>(in, path);
  if (n < 2 || n > 1024) throw IoError("corrupt checkpoint header in '" + path + "'");
  std::vector<int> widths(n);
  for (auto& w : widths) w = static_cast<int>(get<std::uint32_t>(in, path));
  InputTransform t;
  for (auto& v : t.scale) v = get<double>(in, path);
  for (auto& v : t.shift) v = get<double>(in, path);
  Network net(widths);
  net.set_input_transform(t);
  const auto count = get<std::uint64_t>(in, path);
  if (count != net.param_count())
    throw IoError("checkpoint '" + path + "' parameter count does not match its architecture");
  ParamVector p(count);
  for (auto& v : p) v = get<double>(in, path);
  net.unflatten(p);
  return net;
}

}  // namespace demplast
