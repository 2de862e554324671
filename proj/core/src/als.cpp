#include <Eigen/Dense>

#include "feedloop/error.hpp"
#include "feedloop/recommenders.hpp"

namespace feedloop {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<Mat>;
using ConstMatMap = Eigen::Map<const Mat>;

// Solve every row of `solve` given the fixed factors `fixed`:
//   (F^T F + F^T (C_u - I) F + lambda I) x_u = F^T C_u p_u
// where the observed entries of row u are listed by `observed(u)`.
template <class Observed>
void solve_side(MatMap solve, ConstMatMap fixed, const AlsParams& p, Observed&& observed) {
  const auto d = static_cast<Eigen::Index>(fixed.cols());
  const Eigen::MatrixXd gram =
      fixed.transpose() * fixed + p.lambda * Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd a(d, d);
  Eigen::VectorXd b(d);
  Eigen::LLT<Eigen::MatrixXd> llt(d);
  for (Eigen::Index r = 0; r < solve.rows(); ++r) {
    const auto obs = observed(static_cast<NodeId>(r));
    if (obs.empty()) {
      solve.row(r).setZero();
      continue;
    }
    a = gram;
    b.setZero();
    for (NodeId c : obs) {
      const auto f = fixed.row(c).transpose();
      a.noalias() += p.conf_alpha * (f * f.transpose());
      b.noalias() += (1.0 + p.conf_alpha) * f;
    }
    llt.compute(a);
    solve.row(r) = llt.solve(b).transpose();
  }
}

}  // namespace

AlsModel als_train(const LabeledDigraph& g, const AlsParams& p, std::uint64_t rng_seed,
                   std::vector<double>* loss_trace) {
  if (p.d < 1) throw Error("als.d must be >= 1");
  if (!(p.lambda > 0.0)) throw Error("als.lambda must be > 0");
  if (p.sweeps < 1) throw Error("als.sweeps must be >= 1");
  if (!(p.conf_alpha >= 0.0)) throw Error("als.conf_alpha must be >= 0");

  AlsModel m;
  m.n = g.num_nodes();
  m.d = static_cast<std::size_t>(p.d);
  m.user_factors.resize(m.n * m.d);
  m.item_factors.resize(m.n * m.d);
  Rng rng(rng_seed);
  for (auto& x : m.user_factors) x = 0.01 * uniform01(rng);
  for (auto& y : m.item_factors) y = 0.01 * uniform01(rng);
  if (m.n == 0) return m;

  const auto rows = static_cast<Eigen::Index>(m.n);
  const auto cols = static_cast<Eigen::Index>(m.d);
  MatMap x(m.user_factors.data(), rows, cols);
  MatMap y(m.item_factors.data(), rows, cols);

  if (loss_trace) loss_trace->push_back(als_loss(g, m, p));
  for (int s = 0; s < p.sweeps; ++s) {
    solve_side(x, ConstMatMap(y.data(), rows, cols), p, [&](NodeId u) { return g.out(u); });
    solve_side(y, ConstMatMap(x.data(), rows, cols), p, [&](NodeId v) { return g.in(v); });
    if (loss_trace) loss_trace->push_back(als_loss(g, m, p));
  }
  return m;
}

double als_loss(const LabeledDigraph& g, const AlsModel& m, const AlsParams& p) {
  const auto rows = static_cast<Eigen::Index>(m.n);
  const auto cols = static_cast<Eigen::Index>(m.d);
  ConstMatMap x(m.user_factors.data(), rows, cols);
  ConstMatMap y(m.item_factors.data(), rows, cols);
  // sum over all (u, v) of (x_u . y_v)^2 = <X^T X, Y^T Y>_F
  const Eigen::MatrixXd gx = x.transpose() * x;
  const Eigen::MatrixXd gy = y.transpose() * y;
  double loss = gx.cwiseProduct(gy).sum();
  for (NodeId u = 0; u < m.n; ++u) {
    for (NodeId v : g.out(u)) {
      const double s = x.row(u).dot(y.row(v));
      loss += (1.0 + p.conf_alpha) * (1.0 - s) * (1.0 - s) - s * s;
    }
  }
  loss += p.lambda * (x.squaredNorm() + y.squaredNorm());
  return loss;
}

double als_score(const AlsModel& m, NodeId u, NodeId v) {
  const auto xu = m.user(u);
  const auto yv = m.item(v);
  double s = 0.0;
  for (std::size_t i = 0; i < m.d; ++i) s += xu[i] * yv[i];
  return s;
}

}  // namespace feedloop
