#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxmult/grid.hpp"

namespace maxmult {

/// A scale-indexed sequence x_k with values in C^dim (dim == 1 for scalars).
///
/// Labels are strictly increasing; only their order matters to the
/// variational norms, they are carried so that sub-ranges keep their identity.
class VarSequence {
 public:
  static VarSequence scalar(std::vector<std::int64_t> labels, std::vector<cplx> values);
  static VarSequence scalar(std::vector<cplx> values);
  static VarSequence vectors(std::vector<std::int64_t> labels,
                             const std::vector<std::vector<cplx>>& values);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return labels_.empty(); }
  std::span<const std::int64_t> labels() const noexcept { return labels_; }
  std::span<const cplx> at(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }

  /// Entries [first, last) as a new sequence.
  VarSequence slice(std::size_t first, std::size_t last) const;

  double magnitude(std::size_t i) const noexcept;
  double distance(std::size_t i, std::size_t j) const noexcept;

 private:
  VarSequence(std::vector<std::int64_t> labels, std::size_t dim, std::vector<cplx> data);

  std::vector<std::int64_t> labels_;
  std::size_t dim_ = 1;
  std::vector<cplx> data_;
};

/// Homogeneous r-variation: sup over chains k_0 < ... < k_M of
/// (sum ||x_{k_m} - x_{k_{m-1}}||^r)^{1/r}. Exact O(M^2) dynamic program.
/// Requires a nonempty sequence and r >= 1.
double rvar_seminorm(const VarSequence& x, double r);

/// sup_k ||x_k|| + rvar_seminorm(x, r).
double rvar_norm(const VarSequence& x, double r);

/// rvar_norm for l^2(N)-valued sequences; throws unless x.dim() == dim.
double rvar_norm_vec(const VarSequence& x, double r, std::size_t dim);

/// Scalar fast paths used by the pointwise operators; no allocation for
/// sequences of up to 64 entries.
double rvar_seminorm(std::span<const cplx> values, double r);
double rvar_norm(std::span<const cplx> values, double r);

}  // namespace maxmult
