#include "helpernet/monte_carlo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "helpernet/parallel.hpp"

namespace helpernet {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;  // open interval (0, 1)
}

// fills `out` with standard normals for sample `index`
void normals(std::uint64_t index, Philox4x32::Key key, Eigen::VectorXd& out) {
  const auto d = out.size();
  for (Eigen::Index j = 0; 2 * j < d; ++j) {
    const auto r = Philox4x32::block({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                      static_cast<std::uint32_t>(j), 0u},
                                     key);
    const double radius = std::sqrt(-2.0 * std::log(to_unit(r[0], r[1])));
    const double angle = 2.0 * std::numbers::pi * to_unit(r[2], r[3]);
    out(2 * j) = radius * std::cos(angle);
    if (2 * j + 1 < d) out(2 * j + 1) = radius * std::sin(angle);
  }
}

double plugin_mi(const Eigen::MatrixXd& moments, const LabelSet& a, const LabelSet& b, const LabelSet& c) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(moments, Eigen::EigenvaluesOnly);
  const double trace = moments.trace();
  if (!(eig.eigenvalues().minCoeff() > 1e-12 * trace)) {
    std::ostringstream msg;
    msg << "mc_estimate_mi: degenerate empirical covariance (smallest eigenvalue " << eig.eigenvalues().minCoeff()
        << ", trace " << trace << "); the chosen variables are linearly dependent";
    throw NumericalError(msg.str());
  }
  // no clamping at zero, unlike the exact oracle
  const auto na = static_cast<Eigen::Index>(a.size());
  const auto nb = static_cast<Eigen::Index>(b.size());
  const auto nc = static_cast<Eigen::Index>(c.size());
  auto logdet = [&](std::vector<Eigen::Index> idx) {
    if (idx.empty()) return 0.0;
    Eigen::MatrixXd sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = moments(idx[i], idx[j]);
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(sub);
    if (llt.info() != Eigen::Success) throw NumericalError("mc_estimate_mi: empirical covariance not positive definite");
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  };
  auto range = [](Eigen::Index from, Eigen::Index count, std::vector<Eigen::Index> into) {
    for (Eigen::Index i = 0; i < count; ++i) into.push_back(from + i);
    return into;
  };
  const auto ci = range(na + nb, nc, {});
  const double nats =
      0.5 * (logdet(range(0, na, ci)) + logdet(range(na, nb, ci)) - logdet(range(0, na + nb, ci)) - logdet(ci));
  if (!std::isfinite(nats)) throw NumericalError("mc_estimate_mi: non-finite estimate");
  return nats / std::numbers::ln2;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

MCEstimate mc_estimate_mi(const JointGaussian<double>& g, const LabelSet& a, const LabelSet& b,
                          std::uint64_t n_samples, std::uint64_t seed, const LabelSet& c) {
  if (n_samples < kMinMonteCarloSamples) {
    throw InvalidArgument("mc_estimate_mi: need at least " + std::to_string(kMinMonteCarloSamples) + " samples");
  }
  detail::require_nonempty_unique(a, "mc_estimate_mi");
  detail::require_nonempty_unique(b, "mc_estimate_mi");
  detail::require_disjoint(a, b, "mc_estimate_mi");
  detail::require_disjoint(a, c, "mc_estimate_mi");
  detail::require_disjoint(b, c, "mc_estimate_mi");

  LabelSet names = a;
  names.insert(names.end(), b.begin(), b.end());
  names.insert(names.end(), c.begin(), c.end());
  const Eigen::MatrixXd cov = g.sub_cov(names);
  const auto d = cov.rows();

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::MatrixXd factor = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::vector<Eigen::MatrixXd> sums(kJackknifeBlocks, Eigen::MatrixXd::Zero(d, d));
  std::vector<std::uint64_t> counts(kJackknifeBlocks);
  parallel_for(kJackknifeBlocks, [&](std::size_t blk) {
    const std::uint64_t begin = n_samples * blk / kJackknifeBlocks;
    const std::uint64_t end = n_samples * (blk + 1) / kJackknifeBlocks;
    Eigen::VectorXd z(d);
    Eigen::VectorXd x(d);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
    for (std::uint64_t i = begin; i < end; ++i) {
      normals(i, key, z);
      x.noalias() = factor * z;
      acc.selfadjointView<Eigen::Lower>().rankUpdate(x);
    }
    sums[blk] = acc.selfadjointView<Eigen::Lower>();
    counts[blk] = end - begin;
  });

  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(d, d);
  for (const auto& s : sums) total += s;

  MCEstimate out;
  out.n_samples = n_samples;
  out.seed = seed;
  out.estimate = plugin_mi(total / static_cast<double>(n_samples), a, b, c);

  std::vector<double> loo(kJackknifeBlocks);
  double mean = 0.0;
  for (int j = 0; j < kJackknifeBlocks; ++j) {
    loo[j] = plugin_mi((total - sums[j]) / static_cast<double>(n_samples - counts[j]), a, b, c);
    mean += loo[j];
  }
  mean /= kJackknifeBlocks;
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  out.stderr_bits = std::sqrt(ss * (kJackknifeBlocks - 1) / kJackknifeBlocks);
  return out;
}

}  // namespace helpernet
