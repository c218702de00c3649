#include "maxmult/variation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace maxmult {
namespace {

void check_order(double r) {
  if (!(r >= 1.0) || std::isinf(r)) throw Error("variation: r must be a finite real >= 1");
}

// best[j] = max(0, max_{i<j} best[i] + dist(i, j)^r); returns (max_j best[j])^{1/r}.
template <class Dist>
double chain_dp(std::size_t count, double r, std::span<double> best, Dist&& dist) {
  double top = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    double b = 0.0;
    for (std::size_t i = 0; i < j; ++i) b = std::max(b, best[i] + std::pow(dist(i, j), r));
    best[j] = b;
    top = std::max(top, b);
  }
  return std::pow(top, 1.0 / r);
}

}  // namespace

VarSequence::VarSequence(std::vector<std::int64_t> labels, std::size_t dim, std::vector<cplx> data)
    : labels_(std::move(labels)), dim_(dim), data_(std::move(data)) {
  for (std::size_t i = 1; i < labels_.size(); ++i) {
    if (labels_[i] <= labels_[i - 1]) throw Error("VarSequence: labels must be strictly increasing");
  }
}

VarSequence VarSequence::scalar(std::vector<std::int64_t> labels, std::vector<cplx> values) {
  if (labels.size() != values.size()) throw Error("VarSequence: labels and values differ in length");
  return VarSequence(std::move(labels), 1, std::move(values));
}

VarSequence VarSequence::scalar(std::vector<cplx> values) {
  std::vector<std::int64_t> labels(values.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<std::int64_t>(i);
  return scalar(std::move(labels), std::move(values));
}

VarSequence VarSequence::vectors(std::vector<std::int64_t> labels,
                                 const std::vector<std::vector<cplx>>& values) {
  if (labels.size() != values.size()) throw Error("VarSequence: labels and values differ in length");
  const std::size_t dim = values.empty() ? 1 : values.front().size();
  if (dim == 0) throw Error("VarSequence: vector values must have positive dimension");
  std::vector<cplx> data;
  data.reserve(dim * values.size());
  for (const auto& v : values) {
    if (v.size() != dim) {
      throw Error("VarSequence: dimension mismatch (" + std::to_string(v.size()) + " vs " +
                  std::to_string(dim) + ")");
    }
    data.insert(data.end(), v.begin(), v.end());
  }
  return VarSequence(std::move(labels), dim, std::move(data));
}

VarSequence VarSequence::slice(std::size_t first, std::size_t last) const {
  if (first > last || last > size()) throw Error("VarSequence::slice: bad range");
  std::vector<std::int64_t> labels(labels_.begin() + static_cast<std::ptrdiff_t>(first),
                                   labels_.begin() + static_cast<std::ptrdiff_t>(last));
  std::vector<cplx> data(data_.begin() + static_cast<std::ptrdiff_t>(first * dim_),
                         data_.begin() + static_cast<std::ptrdiff_t>(last * dim_));
  return VarSequence(std::move(labels), dim_, std::move(data));
}

double VarSequence::magnitude(std::size_t i) const noexcept {
  double sum = 0.0;
  for (const auto& v : at(i)) sum += std::norm(v);
  return std::sqrt(sum);
}

double VarSequence::distance(std::size_t i, std::size_t j) const noexcept {
  const auto a = at(i);
  const auto b = at(j);
  double sum = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) sum += std::norm(a[d] - b[d]);
  return std::sqrt(sum);
}

double rvar_seminorm(const VarSequence& x, double r) {
  check_order(r);
  if (x.empty()) throw Error("variation: empty sequence");
  std::vector<double> best(x.size());
  return chain_dp(x.size(), r, best, [&](std::size_t i, std::size_t j) { return x.distance(i, j); });
}

double rvar_norm(const VarSequence& x, double r) {
  const double semi = rvar_seminorm(x, r);
  double sup = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sup = std::max(sup, x.magnitude(i));
  return sup + semi;
}

double rvar_norm_vec(const VarSequence& x, double r, std::size_t dim) {
  if (x.dim() != dim) {
    throw Error("rvar_norm_vec: expected dimension " + std::to_string(dim) + ", got " +
                std::to_string(x.dim()));
  }
  return rvar_norm(x, r);
}

double rvar_seminorm(std::span<const cplx> values, double r) {
  check_order(r);
  if (values.empty()) throw Error("variation: empty sequence");
  auto dist = [&](std::size_t i, std::size_t j) { return std::abs(values[j] - values[i]); };
  if (values.size() <= 64) {
    std::array<double, 64> best{};
    return chain_dp(values.size(), r, best, dist);
  }
  std::vector<double> best(values.size());
  return chain_dp(values.size(), r, best, dist);
}

double rvar_norm(std::span<const cplx> values, double r) {
  const double semi = rvar_seminorm(values, r);
  double sup = 0.0;
  for (const auto& v : values) sup = std::max(sup, std::abs(v));
  return sup + semi;
}

}  // namespace maxmult
