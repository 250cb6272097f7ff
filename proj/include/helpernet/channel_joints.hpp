#pragma once

// Joint Gaussian laws of the coding schemes at a finite state power, as
// input to the information oracle.

#include "helpernet/gauss_oracle.hpp"
#include "helpernet/model1.hpp"
#include "helpernet/model2.hpp"

namespace helpernet {

/// Variables S1, X0p (own-message layer, (1-beta) P0), X0pp (assist layer,
/// beta P0), X0, U, X1, N0, N1, Y0, Y1.
template <typename Scalar = double>
JointGaussian<Scalar> build_model1_joint(const PowerConfig& powers, const model1::Params& params, double q) {
  if (powers.users() != 1) throw InvalidArgument("build_model1_joint: expects one user");
  powers.validate();
  params.validate(powers);
  if (!(q > 0.0) || !std::isfinite(q)) throw InvalidArgument("build_model1_joint: q must be finite and positive");

  const Scalar a = static_cast<Scalar>(params.alpha);
  const Scalar b = static_cast<Scalar>(params.beta);
  const Scalar p0 = static_cast<Scalar>(powers.p0);
  GaussianModelBuilder<Scalar> m;
  m.source("S1", static_cast<Scalar>(q))
      .source("X0p", (Scalar(1) - b) * p0)
      .source("X0pp", b * p0)
      .combine("X0", {{"X0p", 1}, {"X0pp", 1}})
      .combine("U", {{"X0pp", 1}, {"S1", a}, {"X0p", a}})
      .source("X1", static_cast<Scalar>(params.p1_used))
      .source("N0", 1)
      .source("N1", 1)
      .combine("Y0", {{"X0", 1}, {"N0", 1}})
      .combine("Y1", {{"X0", 1}, {"X1", 1}, {"S1", 1}, {"N1", 1}});
  return m.build();
}

/// Variables S1, X00, X01, [X02], X0, U, V, X1, X2, N0, N1, N2, Y0, Y1, Y2.
template <typename Scalar = double>
JointGaussian<Scalar> build_model2_joint(const PowerConfig& powers, const model2::Params& params, double q,
                                         model2::HelperMode mode) {
  if (powers.users() != 2) throw InvalidArgument("build_model2_joint: expects two users");
  powers.validate();
  params.validate(powers, mode);
  if (!(q > 0.0) || !std::isfinite(q)) throw InvalidArgument("build_model2_joint: q must be finite and positive");

  const Scalar a = static_cast<Scalar>(params.alpha);
  const Scalar b = static_cast<Scalar>(params.beta);
  GaussianModelBuilder<Scalar> m;
  m.source("S1", static_cast<Scalar>(q))
      .source("X00", static_cast<Scalar>(params.p00))
      .source("X01", static_cast<Scalar>(params.p01));
  if (mode == model2::HelperMode::Dedicated) {
    m.combine("X0", {{"X00", 1}, {"X01", 1}})
        .combine("U", {{"X00", 1}, {"S1", a}})
        .combine("V", {{"X01", 1}, {"X00", b}});
  } else {
    m.source("X02", static_cast<Scalar>(params.p02))
        .combine("X0", {{"X00", 1}, {"X01", 1}, {"X02", 1}})
        .combine("U", {{"X01", 1}, {"S1", a}, {"X00", a}})
        .combine("V", {{"X02", 1}, {"X00", b}, {"X01", b}});
  }
  m.source("X1", static_cast<Scalar>(params.user_power(powers)))
      .source("X2", static_cast<Scalar>(powers.p[1]))
      .source("N0", 1)
      .source("N1", 1)
      .source("N2", 1)
      .combine("Y0", {{"X0", 1}, {"N0", 1}})
      .combine("Y1", {{"X0", 1}, {"X1", 1}, {"S1", 1}, {"N1", 1}})
      .combine("Y2", {{"X0", 1}, {"X2", 1}, {"N2", 1}});
  return m.build();
}

}  // namespace helpernet
