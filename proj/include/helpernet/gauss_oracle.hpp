#pragma once

// Exact information measures of zero-mean jointly Gaussian variables.
//
// Every measure is evaluated from the covariance by sequential symmetric
// elimination (an LDLT without pivot reordering). Eliminating a variable
// whose residual variance has collapsed to rounding level means it is a
// deterministic function of the variables already eliminated; such a
// pivot is skipped for conditioning and reported as a singular sentinel
// (-inf) for differential entropy.
//
// The scalar type is a template parameter so that large state powers can
// be checked in extended precision (long double) when double runs out.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "helpernet/types.hpp"

namespace helpernet {

using LabelSet = std::vector<std::string>;

template <typename Scalar = double>
class JointGaussian {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  JointGaussian(std::vector<std::string> names, Matrix cov) : names_(std::move(names)), cov_(std::move(cov)) {
    const auto n = static_cast<Eigen::Index>(names_.size());
    if (n == 0) throw InvalidArgument("joint gaussian: no variables");
    if (cov_.rows() != n || cov_.cols() != n) {
      throw InvalidArgument("joint gaussian: covariance is " + std::to_string(cov_.rows()) + "x" +
                            std::to_string(cov_.cols()) + " but " + std::to_string(n) + " names given");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : names_) {
      if (!seen.insert(name).second) throw InvalidArgument("joint gaussian: duplicate label '" + name + "'");
    }
    if (!cov_.allFinite()) throw InvalidArgument("joint gaussian: covariance has non-finite entries");

    const Scalar scale = std::max<Scalar>(cov_.cwiseAbs().maxCoeff(), Scalar(1));
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale) {
      throw InvalidArgument("joint gaussian: covariance is not symmetric");
    }
    cov_ = (cov_ + cov_.transpose()) / Scalar(2);
    if (cov_.diagonal().minCoeff() < Scalar(0)) {
      throw InvalidArgument("joint gaussian: negative variance on the diagonal");
    }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov_);
    const Scalar trace = cov_.trace();
    const Scalar min_eig = eig.eigenvalues().minCoeff();
    if (min_eig < -Scalar(1e-9) * trace) {
      throw NumericalError("joint gaussian: covariance is not positive semidefinite (min eigenvalue " +
                           std::to_string(static_cast<double>(min_eig)) + ")");
    }
    // Eigenvalues within rounding of zero are left alone: elimination already
    // treats the matching pivots as singular.
    if (min_eig < -Scalar(64) * std::numeric_limits<Scalar>::epsilon() * trace) {
      Vector clipped = eig.eigenvalues().cwiseMax(Scalar(0));
      cov_ = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
      cov_ = (cov_ + cov_.transpose()) / Scalar(2);
    }
  }

  const std::vector<std::string>& names() const { return names_; }
  const Matrix& cov() const { return cov_; }
  Eigen::Index size() const { return cov_.rows(); }

  Eigen::Index index_of(std::string_view label) const {
    auto it = std::find(names_.begin(), names_.end(), label);
    if (it == names_.end()) throw InvalidArgument("joint gaussian: unknown label '" + std::string(label) + "'");
    return static_cast<Eigen::Index>(it - names_.begin());
  }

  std::vector<Eigen::Index> indices_of(const LabelSet& labels) const {
    std::vector<Eigen::Index> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(index_of(l));
    return out;
  }

  Scalar variance(std::string_view label) const {
    const auto i = index_of(label);
    return cov_(i, i);
  }

  Scalar covariance(std::string_view a, std::string_view b) const { return cov_(index_of(a), index_of(b)); }

  /// Principal submatrix over `labels`, in the given order.
  Matrix sub_cov(const LabelSet& labels) const {
    const auto idx = indices_of(labels);
    const auto k = static_cast<Eigen::Index>(idx.size());
    Matrix out(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) out(i, j) = cov_(idx[i], idx[j]);
    }
    return out;
  }

 private:
  std::vector<std::string> names_;
  Matrix cov_;
};

namespace detail {

template <typename Scalar>
Scalar pivot_floor(Scalar original_variance) {
  return Scalar(1e5) * std::numeric_limits<Scalar>::epsilon() * original_variance;
}

/// Eliminates variable k from the residual covariance in place. Returns the
/// pivot (residual variance of k), or 0 when k is already determined.
template <typename Scalar>
Scalar eliminate(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& resid, Eigen::Index k, Scalar original) {
  const Scalar pivot = resid(k, k);
  if (pivot <= pivot_floor(original) || pivot <= Scalar(0)) {
    resid.row(k).setZero();
    resid.col(k).setZero();
    return Scalar(0);
  }
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> col = resid.col(k);
  resid.noalias() -= (col * col.transpose()) / pivot;
  resid.row(k).setZero();
  resid.col(k).setZero();
  return pivot;
}

inline void require_disjoint(const LabelSet& a, const LabelSet& b, const char* what) {
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw InvalidArgument(std::string(what) + ": label '" + x + "' appears in more than one set");
    }
  }
}

inline void require_nonempty_unique(const LabelSet& a, const char* what) {
  if (a.empty()) throw InvalidArgument(std::string(what) + ": empty label set");
  std::unordered_set<std::string> seen(a.begin(), a.end());
  if (seen.size() != a.size()) throw InvalidArgument(std::string(what) + ": repeated label in set");
}

}  // namespace detail

/// Differential entropy h(subset) in bits. Returns -inf when the subset's
/// covariance is singular.
template <typename Scalar>
Scalar diff_entropy(const JointGaussian<Scalar>& g, const LabelSet& subset) {
  detail::require_nonempty_unique(subset, "diff_entropy");
  auto resid = g.sub_cov(subset);
  const auto original = resid.diagonal().eval();
  const Scalar two_pi_e = Scalar(2) * std::numbers::pi_v<Scalar> * std::numbers::e_v<Scalar>;
  Scalar h = 0;
  for (Eigen::Index k = 0; k < resid.rows(); ++k) {
    const Scalar pivot = detail::eliminate(resid, k, original(k));
    if (pivot == Scalar(0)) return -std::numeric_limits<Scalar>::infinity();
    h += std::log2(two_pi_e * pivot) / Scalar(2);
  }
  return h;
}

/// I(A;B|C) in bits, by the chain rule over the variables of A:
///   sum_i ½·log2( Var(A_i | C, A_<i) / Var(A_i | B, C, A_<i) ).
/// A variable of A that is determined by C and A_<i contributes nothing;
/// one that becomes determined once B is known makes the result +inf.
template <typename Scalar>
Scalar cond_mutual_info(const JointGaussian<Scalar>& g, const LabelSet& a, const LabelSet& b, const LabelSet& c) {
  detail::require_nonempty_unique(a, "mutual_info");
  detail::require_nonempty_unique(b, "mutual_info");
  detail::require_disjoint(a, b, "mutual_info");
  if (!c.empty()) {
    detail::require_nonempty_unique(c, "cond_mutual_info");
    detail::require_disjoint(a, c, "cond_mutual_info");
    detail::require_disjoint(b, c, "cond_mutual_info");
  }

  // local order: C, B, A
  LabelSet order;
  order.reserve(a.size() + b.size() + c.size());
  order.insert(order.end(), c.begin(), c.end());
  order.insert(order.end(), b.begin(), b.end());
  order.insert(order.end(), a.begin(), a.end());
  auto resid = g.sub_cov(order);
  const auto original = resid.diagonal().eval();
  const auto nc = static_cast<Eigen::Index>(c.size());
  const auto nb = static_cast<Eigen::Index>(b.size());
  const auto na = static_cast<Eigen::Index>(a.size());

  for (Eigen::Index k = 0; k < nc; ++k) detail::eliminate(resid, k, original(k));
  auto given_c = resid;
  for (Eigen::Index k = nc; k < nc + nb; ++k) detail::eliminate(resid, k, original(k));
  auto given_bc = resid;

  Scalar info = 0;
  for (Eigen::Index i = 0; i < na; ++i) {
    const Eigen::Index k = nc + nb + i;
    const Scalar outer = detail::eliminate(given_c, k, original(k));
    const Scalar inner = detail::eliminate(given_bc, k, original(k));
    if (outer == Scalar(0)) continue;
    if (inner == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
    info += std::log2(outer / inner) / Scalar(2);
  }
  if (std::abs(info) < Scalar(1e-12)) return Scalar(0);
  return std::max(info, Scalar(0));
}

template <typename Scalar>
Scalar mutual_info(const JointGaussian<Scalar>& g, const LabelSet& a, const LabelSet& b) {
  return cond_mutual_info(g, a, b, LabelSet{});
}

/// Builds a JointGaussian from independent sources and linear combinations
/// of previously declared variables.
template <typename Scalar = double>
class GaussianModelBuilder {
 public:
  using Matrix = typename JointGaussian<Scalar>::Matrix;

  /// Independent zero-mean source with the given variance.
  GaussianModelBuilder& source(std::string name, Scalar variance) {
    if (!(variance >= Scalar(0))) throw InvalidArgument("source '" + name + "' has negative variance");
    add_name(name);
    sources_.push_back(variance);
    for (auto& row : rows_) row.push_back(Scalar(0));
    std::vector<Scalar> row(sources_.size(), Scalar(0));
    row.back() = Scalar(1);
    rows_.push_back(std::move(row));
    return *this;
  }

  /// name = sum of weight * previously declared variable.
  GaussianModelBuilder& combine(std::string name, const std::vector<std::pair<std::string, Scalar>>& terms) {
    std::vector<Scalar> row(sources_.size(), Scalar(0));
    for (const auto& [label, weight] : terms) {
      const auto& src = rows_.at(position(label));
      for (std::size_t j = 0; j < row.size(); ++j) row[j] += weight * src[j];
    }
    add_name(name);
    rows_.push_back(std::move(row));
    return *this;
  }

  JointGaussian<Scalar> build() const {
    const auto n = static_cast<Eigen::Index>(rows_.size());
    const auto m = static_cast<Eigen::Index>(sources_.size());
    Matrix mix(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) mix(i, j) = rows_[i][j];
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> var(m);
    for (Eigen::Index j = 0; j < m; ++j) var(j) = sources_[j];
    Matrix cov = mix * var.asDiagonal() * mix.transpose();
    return JointGaussian<Scalar>(names_, std::move(cov));
  }

 private:
  void add_name(const std::string& name) {
    if (std::find(names_.begin(), names_.end(), name) != names_.end()) {
      throw InvalidArgument("builder: duplicate variable '" + name + "'");
    }
    names_.push_back(name);
  }

  std::size_t position(const std::string& label) const {
    auto it = std::find(names_.begin(), names_.end(), label);
    if (it == names_.end()) throw InvalidArgument("builder: unknown variable '" + label + "'");
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::vector<std::string> names_;
  std::vector<Scalar> sources_;
  std::vector<std::vector<Scalar>> rows_;
};

}  // namespace helpernet
