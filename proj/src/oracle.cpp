#include "qsl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "qsl/parallel.hpp"
#include "qsl/random.hpp"

namespace qsl {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kFeasibleTol = 1e-12;

void check_lengths(const SpectralPoint& pt) {
  if (pt.p.size() != pt.eps.size() || pt.p.empty()) {
    throw Error(ErrorCode::InvalidArgument, "p and eps must be nonempty and of equal length");
  }
}

// Coordinates x = (p_0..p_{n-1}, eps_0..eps_{n-1}).
struct Problem {
  int n;
  double delta;

  bool split() const { return delta == 0.0; }
  int constraints() const { return split() ? 3 : 2; }
  double lower(int) const { return 0.0; }
  double upper(int i) const { return i < n ? 1.0 : kTwoPi; }

  double f(const VectorXd& x) const { return x.head(n).dot(x.tail(n)); }

  VectorXd grad_f(const VectorXd& x) const {
    VectorXd g(2 * n);
    g.head(n) = x.tail(n);
    g.tail(n) = x.head(n);
    return g;
  }

  MatrixXd hess_f() const {
    MatrixXd h = MatrixXd::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) h(j, n + j) = h(n + j, j) = 1.0;
    return h;
  }

  void sums(const VectorXd& x, double& s1, double& s2) const {
    s1 = 0.0;
    s2 = 0.0;
    for (int j = 0; j < n; ++j) {
      s1 += x(j) * std::cos(x(n + j));
      s2 += x(j) * std::sin(x(n + j));
    }
  }

  VectorXd c(const VectorXd& x) const {
    double s1 = 0.0;
    double s2 = 0.0;
    sums(x, s1, s2);
    const double h = x.head(n).sum() - 1.0;
    if (split()) return (VectorXd(3) << s1, s2, h).finished();
    return (VectorXd(2) << s1 * s1 + s2 * s2 - delta, h).finished();
  }

  // Gradients of the unsquared sums.
  void sum_grads(const VectorXd& x, VectorXd& d1, VectorXd& d2) const {
    d1.setZero(2 * n);
    d2.setZero(2 * n);
    for (int j = 0; j < n; ++j) {
      const double cj = std::cos(x(n + j));
      const double sj = std::sin(x(n + j));
      d1(j) = cj;
      d1(n + j) = -x(j) * sj;
      d2(j) = sj;
      d2(n + j) = x(j) * cj;
    }
  }

  void sum_hessians(const VectorXd& x, MatrixXd& h1, MatrixXd& h2) const {
    h1.setZero(2 * n, 2 * n);
    h2.setZero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
      const double cj = std::cos(x(n + j));
      const double sj = std::sin(x(n + j));
      h1(j, n + j) = h1(n + j, j) = -sj;
      h1(n + j, n + j) = -x(j) * cj;
      h2(j, n + j) = h2(n + j, j) = cj;
      h2(n + j, n + j) = -x(j) * sj;
    }
  }

  MatrixXd jac(const VectorXd& x) const {
    VectorXd d1;
    VectorXd d2;
    sum_grads(x, d1, d2);
    MatrixXd j(constraints(), 2 * n);
    if (split()) {
      j.row(0) = d1.transpose();
      j.row(1) = d2.transpose();
      j.row(2).setZero();
      j.row(2).head(n).setOnes();
    } else {
      double s1 = 0.0;
      double s2 = 0.0;
      sums(x, s1, s2);
      j.row(0) = (2.0 * s1 * d1 + 2.0 * s2 * d2).transpose();
      j.row(1).setZero();
      j.row(1).head(n).setOnes();
    }
    return j;
  }

  // Hessians of each constraint, in order.
  std::vector<MatrixXd> hess_c(const VectorXd& x) const {
    VectorXd d1;
    VectorXd d2;
    sum_grads(x, d1, d2);
    MatrixXd h1;
    MatrixXd h2;
    sum_hessians(x, h1, h2);
    const MatrixXd zero = MatrixXd::Zero(2 * n, 2 * n);
    if (split()) return {h1, h2, zero};
    double s1 = 0.0;
    double s2 = 0.0;
    sums(x, s1, s2);
    return {2.0 * (d1 * d1.transpose() + s1 * h1 + d2 * d2.transpose() + s2 * h2), zero};
  }

  VectorXd clamp(VectorXd x) const {
    for (int i = 0; i < 2 * n; ++i) x(i) = std::clamp(x(i), lower(i), upper(i));
    return x;
  }

  bool at_bound(const VectorXd& x, int i) const {
    return x(i) <= lower(i) + 1e-13 || x(i) >= upper(i) - 1e-13;
  }
};

VectorXd to_vector(const SpectralPoint& pt) {
  const int n = static_cast<int>(pt.size());
  VectorXd x(2 * n);
  for (int j = 0; j < n; ++j) {
    x(j) = pt.p[static_cast<std::size_t>(j)];
    x(n + j) = pt.eps[static_cast<std::size_t>(j)];
  }
  return x;
}

SpectralPoint to_point(const VectorXd& x) {
  const int n = static_cast<int>(x.size() / 2);
  SpectralPoint pt;
  pt.p.assign(x.data(), x.data() + n);
  pt.eps.assign(x.data() + n, x.data() + 2 * n);
  return pt;
}

MatrixXd columns(const MatrixXd& m, const std::vector<int>& idx) {
  MatrixXd out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(idx[k]);
  return out;
}

VectorXd entries(const VectorXd& v, const std::vector<int>& idx) {
  VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out(static_cast<Eigen::Index>(k)) = v(idx[k]);
  return out;
}

// Minimum-norm Gauss-Newton steps toward c = 0, moving only coordinates in
// `allowed`. Coordinates that a step would push through the box are frozen
// for that step.
bool restore(const Problem& pr, VectorXd& x, const std::vector<bool>& allowed) {
  for (int it = 0; it < 100; ++it) {
    const VectorXd c = pr.c(x);
    const double norm_c = c.norm();
    if (c.lpNorm<Eigen::Infinity>() < kFeasibleTol) return true;
    const MatrixXd j = pr.jac(x);
    std::vector<bool> active = allowed;
    VectorXd dx = VectorXd::Zero(x.size());
    for (int pass = 0; pass <= 2 * pr.n; ++pass) {
      std::vector<int> idx;
      for (int i = 0; i < 2 * pr.n; ++i) {
        if (active[static_cast<std::size_t>(i)]) idx.push_back(i);
      }
      dx.setZero();
      if (idx.empty()) break;
      const VectorXd step = columns(j, idx).completeOrthogonalDecomposition().solve(-c);
      for (std::size_t k = 0; k < idx.size(); ++k) dx(idx[k]) = step(static_cast<Eigen::Index>(k));
      bool changed = false;
      for (int i : idx) {
        const double y = x(i) + dx(i);
        if ((y < pr.lower(i) && x(i) <= pr.lower(i) + 1e-13) || (y > pr.upper(i) && x(i) >= pr.upper(i) - 1e-13)) {
          active[static_cast<std::size_t>(i)] = false;
          changed = true;
        }
      }
      if (!changed) break;
    }
    double scale = 1.0;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      const VectorXd y = pr.clamp(x + scale * dx);
      if (pr.c(y).norm() < norm_c) {
        x = y;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) return false;
  }
  return pr.c(x).lpNorm<Eigen::Infinity>() < 1e-10;
}

std::vector<int> free_indices(const std::vector<bool>& fixed) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (!fixed[i]) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

// Projected-gradient descent on M with an active set on the box.
bool descend(const Problem& pr, VectorXd& x, int max_iterations) {
  const int dim = 2 * pr.n;
  std::vector<bool> fixed(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) fixed[static_cast<std::size_t>(i)] = pr.at_bound(x, i);
  double alpha0 = 1.0;
  int stalls = 0;
  for (int it = 0; it < max_iterations; ++it) {
    const VectorXd g = pr.grad_f(x);
    const MatrixXd j = pr.jac(x);
    std::vector<int> idx = free_indices(fixed);

    // Release the bound coordinate whose multiplier-adjusted gradient points
    // most strongly into the box.
    const MatrixXd jf = columns(j, idx);
    const VectorXd m = jf.transpose().completeOrthogonalDecomposition().solve(entries(g, idx));
    const VectorXd reduced = g - j.transpose() * m;
    int release = -1;
    double best = 1e-9;
    for (int i = 0; i < dim; ++i) {
      if (!fixed[static_cast<std::size_t>(i)]) continue;
      const double inward = x(i) <= pr.lower(i) + 1e-13 ? -reduced(i) : reduced(i);
      if (inward > best) {
        best = inward;
        release = i;
      }
    }

    VectorXd v = VectorXd::Zero(dim);
    auto project = [&](const std::vector<int>& ids) {
      const MatrixXd jj = columns(j, ids);
      const VectorXd gg = entries(g, ids);
      const VectorXd proj = gg - jj.transpose() * jj.transpose().completeOrthogonalDecomposition().solve(gg);
      v.setZero();
      for (std::size_t k = 0; k < ids.size(); ++k) v(ids[k]) = -proj(static_cast<Eigen::Index>(k));
    };
    project(idx);
    if (v.norm() < 1e-10) {
      if (release < 0) return true;
      fixed[static_cast<std::size_t>(release)] = false;
      idx = free_indices(fixed);
      project(idx);
      if (v.norm() < 1e-10) return true;
    }

    double alpha_max = std::numeric_limits<double>::infinity();
    for (int i : idx) {
      if (v(i) < 0.0) alpha_max = std::min(alpha_max, (pr.lower(i) - x(i)) / v(i));
      if (v(i) > 0.0) alpha_max = std::min(alpha_max, (pr.upper(i) - x(i)) / v(i));
    }
    alpha_max = std::max(alpha_max, 0.0);
    if (alpha_max < 1e-15) {
      bool blocked = false;
      for (int i : idx) {
        if ((v(i) < 0.0 && x(i) <= pr.lower(i) + 1e-13) || (v(i) > 0.0 && x(i) >= pr.upper(i) - 1e-13)) {
          fixed[static_cast<std::size_t>(i)] = true;
          blocked = true;
        }
      }
      if (blocked) continue;
    }

    const double f0 = pr.f(x);
    const double slope = v.squaredNorm();
    double alpha = std::min(alpha0, alpha_max);
    bool accepted = false;
    for (int bt = 0; bt < 40 && alpha > 0.0; ++bt) {
      VectorXd y = pr.clamp(x + alpha * v);
      std::vector<bool> allowed(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i) allowed[static_cast<std::size_t>(i)] = !fixed[static_cast<std::size_t>(i)];
      if (restore(pr, y, allowed) && pr.f(y) <= f0 - 1e-4 * alpha * slope) {
        x = y;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (++stalls > 3) return true;
      alpha0 = std::max(alpha0 * 0.1, 1e-12);
      continue;
    }
    stalls = 0;
    alpha0 = std::min(2.0 * alpha, 4.0);
    for (int i = 0; i < dim; ++i) {
      if (pr.at_bound(x, i)) fixed[static_cast<std::size_t>(i)] = true;
    }
    if (alpha * std::sqrt(slope) < 1e-15) return true;
  }
  return true;
}

// Newton iteration on the KKT system restricted to coordinates off the box
// boundary. Returns false when it leaves the box or fails to converge.
bool polish(const Problem& pr, VectorXd& x) {
  const int dim = 2 * pr.n;
  const int mc = pr.constraints();
  std::vector<bool> fixed(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) fixed[static_cast<std::size_t>(i)] = pr.at_bound(x, i);
  const std::vector<int> idx = free_indices(fixed);
  const int nf = static_cast<int>(idx.size());
  if (nf == 0) return false;

  auto kkt_residual = [&](const VectorXd& xx, const VectorXd& m) {
    VectorXd r(nf + mc);
    r.head(nf) = entries(pr.grad_f(xx) - pr.jac(xx).transpose() * m, idx);
    r.tail(mc) = pr.c(xx);
    return r;
  };

  VectorXd m = columns(pr.jac(x), idx).transpose().completeOrthogonalDecomposition().solve(entries(pr.grad_f(x), idx));
  VectorXd r = kkt_residual(x, m);
  for (int it = 0; it < 60 && r.lpNorm<Eigen::Infinity>() > 1e-14; ++it) {
    MatrixXd lag = pr.hess_f();
    const auto hc = pr.hess_c(x);
    for (int k = 0; k < mc; ++k) lag -= m(k) * hc[static_cast<std::size_t>(k)];
    const MatrixXd jf = columns(pr.jac(x), idx);
    MatrixXd k(nf + mc, nf + mc);
    k.setZero();
    for (int a = 0; a < nf; ++a) {
      for (int b = 0; b < nf; ++b) k(a, b) = lag(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
    k.topRightCorner(nf, mc) = -jf.transpose();
    k.bottomLeftCorner(mc, nf) = jf;
    const VectorXd step = k.completeOrthogonalDecomposition().solve(-r);

    double scale = 1.0;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      VectorXd y = x;
      for (int a = 0; a < nf; ++a) y(idx[static_cast<std::size_t>(a)]) += scale * step(a);
      const VectorXd mm = m + scale * step.tail(mc);
      const VectorXd ry = kkt_residual(y, mm);
      if (ry.norm() < r.norm()) {
        x = y;
        m = mm;
        r = ry;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) break;
  }
  for (int i = 0; i < dim; ++i) {
    if (x(i) < pr.lower(i) - 1e-12 || x(i) > pr.upper(i) + 1e-12) return false;
  }
  x = pr.clamp(x);
  return pr.c(x).lpNorm<Eigen::Infinity>() < 1e-10;
}

VectorXd seed_point(int n, int kind, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  VectorXd x(2 * n);
  switch (kind) {
    case 0: {
      // Two occupied levels, one of them at zero phase.
      x.setZero();
      const double q = 0.2 + 0.6 * unit(rng);
      x(0) = 1.0 - q;
      x(1) = q;
      x(n + 1) = 0.5 + (kTwoPi - 1.0) * unit(rng);
      for (int j = 2; j < n; ++j) x(n + j) = kTwoPi * unit(rng);
      break;
    }
    case 1: {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += x(j) = expo(rng);
      x.head(n) /= s;
      for (int j = 0; j < n; ++j) x(n + j) = kTwoPi * unit(rng);
      break;
    }
    case 2: {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += x(j) = unit(rng);
      x.head(n) /= s;
      for (int j = 0; j < n; ++j) x(n + j) = kTwoPi * unit(rng);
      std::sort(x.data() + n, x.data() + 2 * n);
      break;
    }
    default: {
      const double offset = kTwoPi * unit(rng) / n;
      for (int j = 0; j < n; ++j) {
        x(j) = 1.0 / n;
        x(n + j) = offset + kTwoPi * j / n;
      }
      break;
    }
  }
  return x;
}

bool lex_less(const SpectralPoint& a, const SpectralPoint& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.eps[j] != b.eps[j]) return a.eps[j] < b.eps[j];
    if (a.p[j] != b.p[j]) return a.p[j] < b.p[j];
  }
  return false;
}

struct StartOutcome {
  bool feasible = false;
  double value = 0.0;
  VectorXd x;
};

std::vector<int> stationarity_indices(const SpectralPoint& pt, const OracleConfig& cfg) {
  const int n = static_cast<int>(pt.size());
  std::vector<int> idx;
  for (int j = 0; j < n; ++j) {
    if (pt.p[static_cast<std::size_t>(j)] > cfg.occupation_threshold) idx.push_back(j);
  }
  for (int j = 0; j < n; ++j) {
    if (pt.p[static_cast<std::size_t>(j)] > cfg.occupation_threshold &&
        pt.eps[static_cast<std::size_t>(j)] > cfg.phase_threshold) {
      idx.push_back(n + j);
    }
  }
  return idx;
}

}  // namespace

double constraint_g1(const SpectralPoint& pt) {
  check_lengths(pt);
  double s = 0.0;
  for (std::size_t j = 0; j < pt.size(); ++j) s += pt.p[j] * std::cos(pt.eps[j]);
  return s;
}

double constraint_g2(const SpectralPoint& pt) {
  check_lengths(pt);
  double s = 0.0;
  for (std::size_t j = 0; j < pt.size(); ++j) s += pt.p[j] * std::sin(pt.eps[j]);
  return s;
}

double objective_f(const SpectralPoint& pt) {
  check_lengths(pt);
  double s = 0.0;
  for (std::size_t j = 0; j < pt.size(); ++j) s += pt.p[j] * pt.eps[j];
  return s;
}

double constraint_g(const SpectralPoint& pt) {
  const double a = constraint_g1(pt);
  const double b = constraint_g2(pt);
  return a * a + b * b;
}

double constraint_h(const SpectralPoint& pt) {
  check_lengths(pt);
  return std::accumulate(pt.p.begin(), pt.p.end(), 0.0);
}

AdmissiblePair reduce_triple(const HermitianOperator& h, const StateVector& psi, double tau) {
  require_same_dim(h.dim(), psi.dim(), "reduce_triple");
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "tau must be positive");
  const RVector& lam = h.eigenvalues();
  RVector folded(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) folded(k) = std::fmod(tau * (lam(k) - lam(0)), kTwoPi);
  return {HermitianOperator::from_spectrum(folded, h.eigenvectors()), psi};
}

SpectralPoint spectral_point(const AdmissiblePair& pair) {
  const HermitianOperator& h = pair.hamiltonian;
  const CVector c = h.eigenvectors().adjoint() * pair.state.amplitudes();
  SpectralPoint pt;
  for (Eigen::Index k = 0; k < h.dim(); ++k) {
    pt.p.push_back(std::norm(c(k)));
    pt.eps.push_back(h.eigenvalues()(k));
  }
  return pt;
}

SpectralPoint canonical(const SpectralPoint& pt) {
  check_lengths(pt);
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t j = 0; j < pt.size(); ++j) pairs.emplace_back(pt.eps[j], pt.p[j]);
  std::sort(pairs.begin(), pairs.end());
  SpectralPoint out;
  for (const auto& [e, p] : pairs) {
    out.eps.push_back(e);
    out.p.push_back(p);
  }
  return out;
}

MinimizerStructure classify(const SpectralPoint& pt, const OracleConfig& config) {
  check_lengths(pt);
  MinimizerStructure s;
  std::vector<double> nonzero;
  for (std::size_t j = 0; j < pt.size(); ++j) {
    if (pt.p[j] <= config.occupation_threshold) continue;
    if (pt.eps[j] < config.phase_threshold) {
      s.ground_occupied = true;
    } else {
      nonzero.push_back(pt.eps[j]);
    }
  }
  std::sort(nonzero.begin(), nonzero.end());
  s.nonzero_eps_equal = nonzero.empty() || nonzero.back() - nonzero.front() < config.spread_threshold;
  for (std::size_t k = 0; k < nonzero.size(); ++k) {
    if (k == 0 || nonzero[k] - nonzero[k - 1] >= config.spread_threshold) ++s.n_distinct_nonzero;
  }
  return s;
}

StationarityReport check_stationarity(const SpectralPoint& pt, double delta, const OracleConfig& config) {
  check_lengths(pt);
  if (!(delta >= 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1)");
  const Problem pr{static_cast<int>(pt.size()), delta};
  const VectorXd x = to_vector(pt);
  for (int i = 0; i < 2 * pr.n; ++i) {
    if (x(i) < pr.lower(i) - 1e-8 || x(i) > pr.upper(i) + 1e-8) throw Error(ErrorCode::NotOnM, "outside the box");
  }
  if (pr.c(x).lpNorm<Eigen::Infinity>() > 1e-8) throw Error(ErrorCode::NotOnM, "constraints are violated");

  const std::vector<int> idx = stationarity_indices(pt, config);
  const MatrixXd jt = columns(pr.jac(x), idx).transpose();
  const VectorXd g = entries(pr.grad_f(x), idx);
  const VectorXd m = jt.completeOrthogonalDecomposition().solve(g);
  StationarityReport rep;
  rep.residual = idx.empty() ? 0.0 : (g - jt * m).lpNorm<Eigen::Infinity>();
  rep.multipliers.assign(m.data(), m.data() + m.size());
  return rep;
}

double quadratic_relation_residual(const SpectralPoint& pt, double delta, const StationarityReport& report,
                                   const OracleConfig& config) {
  check_lengths(pt);
  const auto& m = report.multipliers;
  double rhs = 0.0;
  double mu = 0.0;
  if (delta == 0.0) {
    if (m.size() != 3) throw Error(ErrorCode::InvalidArgument, "expected three multipliers");
    rhs = m[0] * m[0] + m[1] * m[1];
    mu = m[2];
  } else {
    if (m.size() != 2) throw Error(ErrorCode::InvalidArgument, "expected two multipliers");
    rhs = 4.0 * delta * m[0] * m[0] - 1.0;
    mu = m[1];
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < pt.size(); ++j) {
    if (pt.p[j] <= config.occupation_threshold || pt.eps[j] < config.phase_threshold) continue;
    worst = std::max(worst, std::abs((pt.eps[j] - mu) * (pt.eps[j] - mu) - rhs));
  }
  return worst;
}

SpectralPoint restore_feasibility(const SpectralPoint& seed, double delta) {
  check_lengths(seed);
  if (!(delta >= 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1)");
  const Problem pr{static_cast<int>(seed.size()), delta};
  VectorXd x = pr.clamp(to_vector(seed));
  if (!restore(pr, x, std::vector<bool>(static_cast<std::size_t>(2 * pr.n), true))) {
    throw Error(ErrorCode::InfeasibleSearch, "could not reach the constraint set");
  }
  return to_point(x);
}

OracleResult minimize_over_M(int n, double delta, const OracleConfig& config) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "need n >= 2");
  if (!(delta >= 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1)");
  if (config.starts < 1) throw Error(ErrorCode::InvalidArgument, "need at least one start");
  const Problem pr{n, delta};

  const auto outcomes = parallel_map<StartOutcome>(static_cast<std::size_t>(config.starts), [&](std::size_t s) {
    Rng rng(derive_seed(config.seed, s));
    StartOutcome out;
    VectorXd x = pr.clamp(seed_point(n, static_cast<int>(s % 4), rng));
    if (!restore(pr, x, std::vector<bool>(static_cast<std::size_t>(2 * n), true))) return out;
    descend(pr, x, config.max_iterations);
    VectorXd polished = x;
    if (polish(pr, polished) && pr.f(polished) <= pr.f(x) + 1e-9 && (polished - x).norm() < 1e-2) x = polished;
    out.feasible = true;
    out.value = pr.f(x);
    out.x = x;
    return out;
  });

  OracleResult res;
  res.delta = delta;
  res.n = n;
  const StartOutcome* best = nullptr;
  SpectralPoint best_canon;
  for (const auto& o : outcomes) {
    if (!o.feasible) continue;
    ++res.feasible_starts;
    const SpectralPoint canon = canonical(to_point(o.x));
    if (best == nullptr || o.value < best->value - 1e-12 ||
        (std::abs(o.value - best->value) <= 1e-12 && lex_less(canon, best_canon))) {
      best = &o;
      best_canon = canon;
    }
  }
  if (best == nullptr) throw Error(ErrorCode::InfeasibleSearch, "no start reached the constraint set");

  res.min_value = best->value;
  res.argmin = to_point(best->x);
  res.structure = classify(res.argmin, config);
  const StationarityReport st = check_stationarity(res.argmin, delta, config);
  res.stationarity_residual = st.residual;
  res.multipliers = st.multipliers;
  return res;
}

}  // namespace qsl
