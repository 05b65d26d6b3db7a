// SPDX-License-Identifier: Apache-2.0

#include "cpsa/precoding.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace cpsa {

Precoder zf_precoder(const CMat& h_hat) {
  const Eigen::Index m = h_hat.rows();
  const Eigen::Index k = h_hat.cols();
  if (m < k) throw std::invalid_argument("zero forcing needs antennas >= users");

  const CMat gram = h_hat.adjoint() * h_hat;
  Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success)
    throw SingularGramError("estimate Gram matrix not positive definite");

  // a = H_hat (H_hat^H H_hat)^{-1}, computed as solve(G, H_hat^H)^H.
  const CMat a = llt.solve(h_hat.adjoint()).adjoint();

  Precoder p;
  p.w.resize(m, k);
  p.inv_a_norm.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double norm = a.col(j).norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw SingularGramError("degenerate pseudo-inverse column");
    p.inv_a_norm[j] = 1.0 / norm;
    p.w.col(j) = a.col(j) * p.inv_a_norm[j];
  }
  return p;
}

CVec qpsk_symbols(Rng& rng, int count) {
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CVec s(count);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t bits = rng.next_u64();
    s[i] = Complex((bits & 1) ? inv_sqrt2 : -inv_sqrt2,
                   (bits & 2) ? inv_sqrt2 : -inv_sqrt2);
  }
  return s;
}

CVec downlink_observe(Rng& rng, const ChannelRealization& channels,
                      const Precoder& precoder, const SystemParams& params,
                      const CVec& symbols) {
  const Eigen::Index k = channels.users.cols();
  if (symbols.size() != k)
    throw std::invalid_argument("one symbol per user required");
  const double amp = std::sqrt(params.downlink_power_mw);
  const double noise = std::sqrt(params.noise_mw);
  // y = sqrt(P_B) (H^H W) s + z
  CVec y = amp * (channels.users.adjoint() * precoder.w) * symbols;
  for (Eigen::Index i = 0; i < k; ++i) y[i] += noise * rng.cnormal();
  return y;
}

MomentAccumulator::MomentAccumulator(int users)
    : users_(users),
      sum_(Vec::Zero(4 * users)),
      outer_(Mat::Zero(4 * users, 4 * users)),
      scratch_(4 * users) {
  if (users < 1) throw std::invalid_argument("users must be >= 1");
}

void MomentAccumulator::accumulate(const CMat& true_user_channels,
                                   const Precoder& precoder) {
  if (true_user_channels.cols() != users_ || precoder.w.cols() != users_)
    throw std::invalid_argument("user count mismatch");
  // products(k, i) = h_k^H w_i
  const CMat products = true_user_channels.adjoint() * precoder.w;
  for (int k = 0; k < users_; ++k) {
    const Complex g = products(k, k);
    double leak = 0.0;
    for (int i = 0; i < users_; ++i)
      if (i != k) leak += std::norm(products(k, i));
    scratch_[4 * k + 0] = g.real();
    scratch_[4 * k + 1] = g.imag();
    scratch_[4 * k + 2] = std::norm(g);
    scratch_[4 * k + 3] = leak;
  }
  sum_ += scratch_;
  outer_.selfadjointView<Eigen::Lower>().rankUpdate(scratch_, 1.0);
  ++count_;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.users_ != users_) throw std::invalid_argument("user count mismatch");
  sum_ += other.sum_;
  outer_ += other.outer_;
  count_ += other.count_;
}

MomentEstimates MomentAccumulator::estimates() const {
  if (count_ < 1) throw std::logic_error("no trials accumulated");
  MomentEstimates est;
  est.mean_gain.resize(users_);
  est.var_gain.resize(users_);
  est.interference.resize(users_);
  est.trial_count = count_;
  const double inv_n = 1.0 / static_cast<double>(count_);
  for (int k = 0; k < users_; ++k) {
    const Complex mean(sum_[4 * k + 0] * inv_n, sum_[4 * k + 1] * inv_n);
    est.mean_gain[k] = mean;
    est.var_gain[k] =
        std::max(0.0, sum_[4 * k + 2] * inv_n - std::norm(mean));
    est.interference[k] = sum_[4 * k + 3] * inv_n;
  }
  return est;
}

EmpiricalSinr empirical_sinr(const MomentEstimates& moments,
                             const SystemParams& params) {
  if (moments.trial_count < 2)
    throw std::invalid_argument("empirical SINR needs at least 2 trials");
  const int users = static_cast<int>(moments.mean_gain.size());
  const double pb = params.downlink_power_mw;
  EmpiricalSinr out;
  out.gamma.resize(users);
  out.rate.resize(users);
  const double log_base = std::log(params.rate_log_base);
  for (int k = 0; k < users; ++k) {
    const double num = pb * std::norm(moments.mean_gain[k]);
    const double den =
        pb * moments.var_gain[k] + pb * moments.interference[k] + params.noise_mw;
    out.gamma[k] = num / den;
    out.rate[k] = std::log1p(out.gamma[k]) / log_base;
  }
  return out;
}

}  // namespace cpsa
