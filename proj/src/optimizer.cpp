#include "gauss/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace gauss {

namespace {

constexpr double kMultiplicativityTol = 1e-6;
constexpr double kOffBlockTol = 1e-4;

PureStateParams theta_to_params(int n, const Vec& theta) {
  PureStateParams params;
  params.n = n;
  params.l = theta.head(n * n);
  params.z = theta.tail(n).array().exp();
  return params;
}

Vec params_to_theta(const PureStateParams& params) {
  Vec theta(params.n * params.n + params.n);
  theta.head(params.n * params.n) = params.l;
  theta.tail(params.n) = params.z.array().log();
  return theta;
}

void clamp_log_z(int n, double bound, Vec& theta) {
  for (int i = 0; i < n; ++i) {
    double& u = theta(theta.size() - n + i);
    u = std::clamp(u, -bound, bound);
  }
}

Mat channel_output(const GaussianChannel& ch, const Mat& gamma) {
  Mat out = ch.x.transpose() * gamma * ch.x + ch.y;
  return 0.5 * (out + out.transpose());
}

bool nondegenerate(const std::vector<double>& nus) {
  for (size_t i = 0; i + 1 < nus.size(); ++i) {
    if (nus[i] - nus[i + 1] < kDegeneracyTol) return false;
  }
  return true;
}

// Objective and analytic gradient in the (l, log z) coordinates. The
// gradient goes through the first-order symplectic-eigenvalue rule and needs
// a non-degenerate output spectrum; callers fall back to finite differences
// otherwise.
struct Problem {
  const GaussianChannel& ch;
  double p;
  GeneratorBasis basis;

  explicit Problem(const GaussianChannel& ch_, double p_)
      : ch(ch_), p(p_), basis(generator_basis(ch_.n)) {}

  double value(const Vec& theta) const {
    const CovarianceMatrix gamma =
        pure_cm_from_params(theta_to_params(ch.n, theta));
    const Mat out = channel_output(ch, gamma.matrix);
    return big_f_p(symplectic_eigenvalues(CovarianceMatrix(ch.n, out)), p);
  }

  bool analytic_gradient(const Vec& theta, Vec& grad) const {
    const int n = ch.n;
    const PureStateParams params = theta_to_params(n, theta);
    Mat a = Mat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n * n; ++i) a -= params.l(i) * basis.generators[i];
    const Mat o = matrix_exp(a);
    Mat d = Mat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      d(2 * i, 2 * i) = params.z(i);
      d(2 * i + 1, 2 * i + 1) = 1.0 / params.z(i);
    }
    const Mat gamma = o.transpose() * d * o;
    const Mat out = channel_output(ch, gamma);
    const CovarianceMatrix out_cm(n, out);
    const auto nus = symplectic_eigenvalues(out_cm);
    if (!nondegenerate(nus)) return false;

    const Mat w = williamson(out_cm).s;
    const double f_total = big_f_p(nus, p);
    std::vector<double> coef(n);
    for (int j = 0; j < n; ++j) {
      const double nu = std::max(nus[j], 1.0);
      coef[j] = f_p_deriv(nu, p) / f_p(nu, p);
    }

    auto direction = [&](const Mat& dgamma) {
      const Mat q = w * (ch.x.transpose() * dgamma * ch.x) * w.transpose();
      double g = 0.0;
      for (int j = 1; j <= n; ++j) {
        g += coef[j - 1] * 0.5 * block_trace(q, j);
      }
      return f_total * g;
    };

    grad.resize(theta.size());
    const Mat d_o = d * o;
    for (int i = 0; i < n * n; ++i) {
      const Mat dexp = matrix_exp_frechet(a, -basis.generators[i]);
      const Mat dgamma_half = dexp.transpose() * d_o;
      grad(i) = direction(dgamma_half + dgamma_half.transpose());
    }
    for (int i = 0; i < n; ++i) {
      Mat dd = Mat::Zero(2 * n, 2 * n);
      dd(2 * i, 2 * i) = params.z(i);
      dd(2 * i + 1, 2 * i + 1) = -1.0 / params.z(i);
      grad(n * n + i) = direction(o.transpose() * dd * o);
    }
    return true;
  }

  Vec gradient(const Vec& theta, bool& fd_used) const {
    Vec grad;
    if (analytic_gradient(theta, grad)) return grad;
    fd_used = true;
    const double h = 1e-6;
    grad.resize(theta.size());
    Vec probe = theta;
    for (int i = 0; i < theta.size(); ++i) {
      probe(i) = theta(i) + h;
      const double up = value(probe);
      probe(i) = theta(i) - h;
      const double down = value(probe);
      probe(i) = theta(i);
      grad(i) = (up - down) / (2.0 * h);
    }
    return grad;
  }
};

struct MinimizeOutcome {
  Vec theta;
  double f = 0.0;
  Vec grad;
  bool converged = false;
  bool fd_used = false;
};

MinimizeOutcome bfgs(const Problem& prob, Vec theta,
                     const OptimizerConfig& cfg) {
  const int n = prob.ch.n;
  const int dim = static_cast<int>(theta.size());
  clamp_log_z(n, cfg.log_z_bound, theta);

  MinimizeOutcome out;
  out.fd_used = false;
  double f = prob.value(theta);
  Vec g = prob.gradient(theta, out.fd_used);
  Mat h_inv = Mat::Identity(dim, dim);
  int stagnant = 0;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    if (g.cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, std::abs(f))) {
      out.converged = true;
      break;
    }
    Vec dir = -h_inv * g;
    if (dir.dot(g) >= -1e-14 * dir.norm() * g.norm()) {
      h_inv = Mat::Identity(dim, dim);
      dir = -g;
    }

    double alpha = 1.0;
    Vec theta_new;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      theta_new = theta + alpha * dir;
      clamp_log_z(n, cfg.log_z_bound, theta_new);
      const Vec step = theta_new - theta;
      if (step.cwiseAbs().maxCoeff() < 1e-16) break;
      f_new = prob.value(theta_new);
      if (f_new <= f + 1e-4 * g.dot(step)) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      out.converged = g.cwiseAbs().maxCoeff() <=
                      1e-6 * std::max(1.0, std::abs(f));
      break;
    }

    Vec g_new = prob.gradient(theta_new, out.fd_used);
    const Vec s = theta_new - theta;
    const Vec yv = g_new - g;
    const double sy = s.dot(yv);
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      const Mat outer = s * yv.transpose() / sy;
      h_inv = (Mat::Identity(dim, dim) - outer) * h_inv *
                  (Mat::Identity(dim, dim) - outer.transpose()) +
              s * s.transpose() / sy;
    } else {
      h_inv = Mat::Identity(dim, dim);
    }

    const bool small_change =
        std::abs(f - f_new) <= cfg.objective_tol * std::max(1.0, std::abs(f_new)) &&
        s.norm() <= cfg.param_tol;
    theta = theta_new;
    f = f_new;
    g = g_new;
    stagnant = small_change ? stagnant + 1 : 0;
    if (stagnant >= 2) {
      out.converged = true;
      break;
    }
  }

  out.theta = theta;
  out.f = f;
  out.grad = g;
  return out;
}

MinimizeOutcome nelder_mead(const Problem& prob, Vec theta0,
                            const OptimizerConfig& cfg) {
  const int n = prob.ch.n;
  const int dim = static_cast<int>(theta0.size());
  clamp_log_z(n, cfg.log_z_bound, theta0);

  std::vector<Vec> pts(dim + 1, theta0);
  std::vector<double> vals(dim + 1);
  for (int i = 1; i <= dim; ++i) {
    pts[i](i - 1) += 0.1;
    clamp_log_z(n, cfg.log_z_bound, pts[i]);
  }
  for (int i = 0; i <= dim; ++i) vals[i] = prob.value(pts[i]);

  auto order = [&]() {
    std::vector<int> idx(dim + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<Vec> p2(dim + 1);
    std::vector<double> v2(dim + 1);
    for (int i = 0; i <= dim; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = vals[idx[i]];
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  auto clamped = [&](Vec v) {
    clamp_log_z(n, cfg.log_z_bound, v);
    return v;
  };

  MinimizeOutcome out;
  for (int iter = 0; iter < 200 * dim + 2000; ++iter) {
    order();
    if (vals[dim] - vals[0] <=
        cfg.objective_tol * std::max(1.0, std::abs(vals[0]))) {
      out.converged = true;
      break;
    }
    Vec centroid = Vec::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += pts[i];
    centroid /= dim;

    const Vec refl = clamped(centroid + (centroid - pts[dim]));
    const double f_refl = prob.value(refl);
    if (f_refl < vals[0]) {
      const Vec expd = clamped(centroid + 2.0 * (centroid - pts[dim]));
      const double f_expd = prob.value(expd);
      if (f_expd < f_refl) {
        pts[dim] = expd;
        vals[dim] = f_expd;
      } else {
        pts[dim] = refl;
        vals[dim] = f_refl;
      }
    } else if (f_refl < vals[dim - 1]) {
      pts[dim] = refl;
      vals[dim] = f_refl;
    } else {
      const Vec contr = clamped(centroid + 0.5 * (pts[dim] - centroid));
      const double f_contr = prob.value(contr);
      if (f_contr < vals[dim]) {
        pts[dim] = contr;
        vals[dim] = f_contr;
      } else {
        for (int i = 1; i <= dim; ++i) {
          pts[i] = clamped(pts[0] + 0.5 * (pts[i] - pts[0]));
          vals[i] = prob.value(pts[i]);
        }
      }
    }
  }
  order();
  out.theta = pts[0];
  out.f = vals[0];
  out.grad = prob.gradient(pts[0], out.fd_used);
  return out;
}

struct MultiStartOutcome {
  MinimizeOutcome best;
  bool all_failed = false;
};

MultiStartOutcome multi_start(const Problem& prob, const OptimizerConfig& cfg,
                              const std::vector<Vec>& extra_starts) {
  const int n = prob.ch.n;
  const int dim = n * n + n;

  std::vector<Vec> starts;
  starts.push_back(Vec::Zero(dim));  // vacuum
  for (const Vec& s : extra_starts) starts.push_back(s);
  const double u_range = std::min(2.0, cfg.log_z_bound);
  for (int k = static_cast<int>(starts.size()); k < std::max(1, cfg.starts);
       ++k) {
    // One independent stream per start index, so the start list is a prefix
    // of the list for any larger `starts`.
    std::mt19937_64 rng(cfg.seed * 1000003ULL + static_cast<unsigned>(k));
    std::normal_distribution<double> normal(0.0, 0.7);
    std::uniform_real_distribution<double> uniform(-u_range, u_range);
    Vec theta(dim);
    for (int i = 0; i < n * n; ++i) theta(i) = normal(rng);
    for (int i = 0; i < n; ++i) theta(n * n + i) = uniform(rng);
    starts.push_back(theta);
  }

  MultiStartOutcome outcome;
  bool have_best = false;
  int converged_count = 0;
  for (const Vec& start : starts) {
    MinimizeOutcome run = bfgs(prob, start, cfg);
    if (!run.converged) {
      MinimizeOutcome polish = nelder_mead(prob, run.theta, cfg);
      if (polish.f <= run.f) run = polish;
      run.fd_used = true;
    }
    if (run.converged) ++converged_count;
    if (!have_best) {
      outcome.best = run;
      have_best = true;
      continue;
    }
    const double tol =
        cfg.objective_tol * std::max(1.0, std::abs(outcome.best.f));
    if (run.f < outcome.best.f - tol) {
      outcome.best = run;
    } else if (std::abs(run.f - outcome.best.f) <= tol &&
               run.theta.norm() < outcome.best.theta.norm()) {
      // Tie-break equal minima by the smallest parameter norm.
      outcome.best = run;
    }
  }
  outcome.all_failed = (converged_count == 0);
  return outcome;
}

bool is_scalar_x(const Mat& x, double tol = 1e-8) {
  const double x0 = x(0, 0);
  return (x - x0 * Mat::Identity(x.rows(), x.cols())).cwiseAbs().maxCoeff() <=
         tol;
}

int pair_ordinal(int n, int i, int j) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

// Places the parameters of a factor living on modes [offset, offset+m) into
// the corresponding slots of an n-mode parameter vector.
void embed_factor_params(const PureStateParams& factor, int offset,
                         PureStateParams& joint) {
  const int m = factor.n;
  const int n = joint.n;
  for (int k = 0; k < m; ++k) {
    joint.l(offset + k) = factor.l(k);
    joint.z(offset + k) = factor.z(k);
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const int src = m + 2 * pair_ordinal(m, a, b);
      const int dst = n + 2 * pair_ordinal(n, offset + a, offset + b);
      joint.l(dst) = factor.l(src);
      joint.l(dst + 1) = factor.l(src + 1);
    }
  }
}

std::string describe(const GaussianChannel& ch) {
  std::ostringstream os;
  os << ch.n << "-mode channel, " << ch.factor_count() << " factor(s)";
  return os.str();
}

double off_block_norm_of(const CovarianceMatrix& gamma,
                         const std::vector<int>& partition) {
  double worst = 0.0;
  int offset = 0;
  for (int modes : partition) {
    const int lo = 2 * offset;
    const int hi = lo + 2 * modes;
    for (int r = lo; r < hi; ++r) {
      for (int c = 0; c < gamma.matrix.cols(); ++c) {
        if (c < lo || c >= hi) {
          worst = std::max(worst, std::abs(gamma.matrix(r, c)));
        }
      }
    }
    offset += modes;
  }
  return worst;
}

}  // namespace

double objective(const GaussianChannel& ch, double p,
                 const PureStateParams& params) {
  if (!(p > 1.0)) throw std::invalid_argument("objective: p must be > 1");
  const CovarianceMatrix gamma = pure_cm_from_params(params);
  if (gamma.n != ch.n) {
    throw std::invalid_argument("objective: mode count mismatch");
  }
  const Mat out = channel_output(ch, gamma.matrix);
  return big_f_p(symplectic_eigenvalues(CovarianceMatrix(ch.n, out)), p);
}

GradientResult gradient_at(const GaussianChannel& ch, double p,
                           const CovarianceMatrix& gamma) {
  if (!(p > 1.0)) throw std::invalid_argument("gradient_at: p must be > 1");
  if (!is_scalar_x(ch.x)) {
    throw HypothesisError("gradient_at: channel must be in reduced form");
  }
  const int n = ch.n;
  const double x_sq = ch.x(0, 0) * ch.x(0, 0);
  const CovarianceMatrix out(n, channel_output(ch, gamma.matrix));
  const Mat w = williamson(out).s;
  const Mat gamma_rot = w * gamma.matrix * w.transpose();
  const Mat y_rot = w * ch.y * w.transpose();
  const auto nus = symplectic_eigenvalues(out);
  const GeneratorBasis basis = generator_basis(n);

  GradientResult result;
  result.gradient.resize(basis.count());

  if (nondegenerate(nus)) {
    const double f_total = big_f_p(nus, p);
    std::vector<double> coef(n);
    for (int j = 0; j < n; ++j) {
      const double nu = std::max(nus[j], 1.0);
      coef[j] = f_p_deriv(nu, p) / f_p(nu, p);
    }
    for (int i = 0; i < basis.count(); ++i) {
      const Mat& k = basis.generators[i];
      const Mat pert = x_sq * (k.transpose() * gamma_rot + gamma_rot * k);
      double g = 0.0;
      for (int j = 1; j <= n; ++j) {
        g += coef[j - 1] * 0.5 * block_trace(pert, j);
      }
      result.gradient(i) = f_total * g;
    }
    return result;
  }

  result.finite_difference_fallback = true;
  const double h = 1e-6;
  for (int i = 0; i < basis.count(); ++i) {
    const Mat& k = basis.generators[i];
    auto value_at = [&](double t) {
      const Mat e = matrix_exp(t * k);
      const Mat g = e.transpose() * gamma_rot * e;
      Mat out_p = x_sq * g + y_rot;
      out_p = 0.5 * (out_p + out_p.transpose());
      return big_f_p(symplectic_eigenvalues(CovarianceMatrix(n, out_p)), p);
    };
    result.gradient(i) = (value_at(h) - value_at(-h)) / (2.0 * h);
  }
  return result;
}

PurityReport optimize(const GaussianChannel& ch, const OptimizerConfig& cfg) {
  if (!(cfg.p > 1.0)) throw std::invalid_argument("optimize: p must be > 1");
  if (!validate(ch).valid) {
    throw std::invalid_argument("optimize: channel is not completely positive");
  }

  PurityReport report;
  report.channel_description = describe(ch);
  report.p = cfg.p;

  // Factors with det X_i = 0 reach their infimum F_p(Y_i) only
  // asymptotically, under infinite squeezing; multiplicativity is trivial.
  if (ch.single_mode_factors()) {
    bool any_zero = false;
    for (int i = 0; i < ch.factor_count(); ++i) {
      if (std::abs(ch.factor(i).x.determinant()) < kValidityTol) {
        any_zero = true;
        break;
      }
    }
    if (any_zero) {
      double inf = 1.0;
      for (int i = 0; i < ch.factor_count(); ++i) {
        const GaussianChannel f = ch.factor(i);
        double factor_inf;
        if (std::abs(f.x.determinant()) < kValidityTol) {
          factor_inf = big_f_p(
              symplectic_eigenvalues(CovarianceMatrix(1, f.y)), cfg.p);
        } else {
          OptimizerConfig sub = cfg;
          factor_inf = optimize(f, sub).inf_f_p;
        }
        report.per_factor_inf.push_back(factor_inf);
        inf *= factor_inf;
      }
      report.inf_f_p = inf;
      report.xi_p = std::pow(2.0, ch.n) / std::pow(inf, 1.0 / cfg.p);
      report.trace_power_opt = std::pow(2.0, cfg.p * ch.n) / inf;
      report.argmin_asymptotic = true;
      report.multiplicativity_ratio = 1.0;
      report.verdict = "trivial multiplicativity (det X_i = 0; "
                       "infimum attained asymptotically)";
      report.argmin_params = PureStateParams::vacuum(ch.n);
      report.argmin_cm = CovarianceMatrix::vacuum(ch.n);
      report.argmin_cm_reduced = report.argmin_cm;
      return report;
    }
  }

  // Per-factor optima first; their product seeds the joint search.
  std::vector<PurityReport> factor_reports;
  if (ch.factor_count() > 1) {
    for (int i = 0; i < ch.factor_count(); ++i) {
      factor_reports.push_back(optimize(ch.factor(i), cfg));
      report.per_factor_inf.push_back(factor_reports.back().inf_f_p);
    }
  }

  GaussianChannel work = ch;
  std::optional<ReductionCertificate> cert;
  if (cfg.use_reduction && ch.single_mode_factors()) {
    try {
      cert = reduce_standard_form(ch);
      work = cert->reduced;
      report.reduction_used = true;
    } catch (const HypothesisError&) {
      // Mixed-sign determinants: optimize the channel as given.
    }
  }

  {
    Eigen::SelfAdjointEigenSolver<Mat> es(work.y, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kValidityTol) {
      report.log_z_bound_may_be_active = true;
    }
  }

  std::vector<Vec> extra_starts;
  if (!factor_reports.empty()) {
    bool frames_match = true;
    for (const auto& fr : factor_reports) {
      if (fr.reduction_used != report.reduction_used) frames_match = false;
    }
    if (frames_match) {
      PureStateParams product = PureStateParams::vacuum(ch.n);
      int offset = 0;
      for (int i = 0; i < ch.factor_count(); ++i) {
        embed_factor_params(factor_reports[i].argmin_params, offset, product);
        offset += ch.mode_partition[i];
      }
      extra_starts.push_back(params_to_theta(product));
    }
  }

  const Problem prob(work, cfg.p);
  const MultiStartOutcome outcome = multi_start(prob, cfg, extra_starts);

  report.status = outcome.all_failed ? OptStatus::kNonConvergence
                                     : OptStatus::kConverged;
  report.inf_f_p = outcome.best.f;
  report.xi_p = std::pow(2.0, ch.n) / std::pow(outcome.best.f, 1.0 / cfg.p);
  report.trace_power_opt = std::pow(2.0, cfg.p * ch.n) / outcome.best.f;
  report.argmin_params = theta_to_params(ch.n, outcome.best.theta);
  report.argmin_cm_reduced = pure_cm_from_params(report.argmin_params);
  report.argmin_cm = cert ? cert->map_input_back(report.argmin_cm_reduced)
                          : report.argmin_cm_reduced;
  if (is_scalar_x(work.x)) {
    report.gradient_norm_at_argmin =
        gradient_at(work, cfg.p, report.argmin_cm_reduced).gradient.norm();
  } else {
    report.gradient_norm_at_argmin = outcome.best.grad.norm();
  }

  if (!report.per_factor_inf.empty()) {
    double product = 1.0;
    for (double v : report.per_factor_inf) product *= v;
    report.multiplicativity_ratio = report.inf_f_p / product;
    report.verdict =
        std::abs(report.multiplicativity_ratio - 1.0) <= kMultiplicativityTol
            ? "multiplicative"
            : "non-multiplicative within tolerance";
  } else {
    report.verdict = "single factor";
  }
  return report;
}

MultiplicativityReport multiplicativity_check(
    const std::vector<GaussianChannel>& factors, double p,
    const OptimizerConfig& cfg) {
  if (factors.empty()) {
    throw std::invalid_argument("multiplicativity_check: no factors");
  }
  OptimizerConfig run_cfg = cfg;
  run_cfg.p = p;

  MultiplicativityReport report;
  const GaussianChannel joint = tensor(factors);
  report.joint = optimize(joint, run_cfg);
  for (const auto& f : factors) {
    report.factors.push_back(optimize(f, run_cfg));
  }
  double product = 1.0;
  for (const auto& f : report.factors) product *= f.inf_f_p;
  report.ratio = report.joint.inf_f_p / product;
  report.off_block_norm = off_block_norm_of(report.joint.argmin_cm_reduced,
                                            joint.mode_partition);
  report.multiplicative =
      std::abs(report.ratio - 1.0) <= kMultiplicativityTol &&
      report.off_block_norm <= kOffBlockTol;

  // Lowest-numbered proven multiplicativity case that covers this instance.
  bool single_mode = true;
  bool identical = true;
  bool equal_det = true;
  bool y_positive = true;
  bool det_nonzero = true;
  double first_det = 0.0;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (!factors[i].single_mode_factors() || factors[i].n != 1) {
      single_mode = false;
    }
    if ((factors[i].x - factors[0].x).cwiseAbs().maxCoeff() > kValidityTol ||
        (factors[i].y - factors[0].y).cwiseAbs().maxCoeff() > kValidityTol ||
        factors[i].n != factors[0].n) {
      identical = false;
    }
    const double det = factors[i].x.determinant();
    if (i == 0) first_det = det;
    if (std::abs(det - first_det) > 1e-9 * std::max(1.0, std::abs(first_det))) {
      equal_det = false;
    }
    if (std::abs(det) < kValidityTol) det_nonzero = false;
    Eigen::SelfAdjointEigenSolver<Mat> es(factors[i].y,
                                          Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= kValidityTol) y_positive = false;
  }
  if (single_mode && identical) {
    report.covered_case = MultiplicativityCase::kIdenticalSingleMode;
  } else if (single_mode && equal_det && y_positive && det_nonzero) {
    report.covered_case = MultiplicativityCase::kEqualDetPositiveY;
  } else if (std::abs(p - 2.0) < 1e-12 && det_nonzero) {
    report.covered_case = MultiplicativityCase::kPTwoNonsingularX;
  }
  return report;
}

std::vector<double> identical_channel_spectrum(double x, double y,
                                               const std::vector<double>& zs) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw std::invalid_argument(
        "identical_channel_spectrum: x and y must be positive");
  }
  std::vector<double> nus;
  nus.reserve(zs.size());
  for (double z : zs) {
    if (!(z > 0.0)) {
      throw std::invalid_argument(
          "identical_channel_spectrum: squeezing must be positive");
    }
    nus.push_back(
        std::sqrt(x * x * x * x + y * y + x * x * y * (z + 1.0 / z)));
  }
  std::sort(nus.begin(), nus.end(), std::greater<double>());
  return nus;
}

MajorizationAudit majorization_audit(const GaussianChannel& ch, int samples,
                                     const OptimizerConfig& cfg, double eps) {
  if (!ch.single_mode_factors() || ch.factor_count() < 1) {
    throw HypothesisError(
        "majorization_audit: channel must be a tensor power of a single-mode "
        "channel");
  }
  for (int i = 1; i < ch.factor_count(); ++i) {
    if ((ch.factor(i).x - ch.factor(0).x).cwiseAbs().maxCoeff() >
            kValidityTol ||
        (ch.factor(i).y - ch.factor(0).y).cwiseAbs().maxCoeff() >
            kValidityTol) {
      throw HypothesisError("majorization_audit: factors are not identical");
    }
  }
  const ReductionCertificate cert = reduce_standard_form(ch);
  const int n = ch.n;
  const double x = cert.reduced.x(0, 0);
  const double y = cert.reduced.y(0, 0);

  MajorizationAudit audit;
  audit.samples = samples;
  audit.optimal_spectrum.assign(n, x * x + y);
  audit.worst_margin = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 0.8);
  std::uniform_real_distribution<double> uniform(-1.2, 1.2);

  for (int s = 0; s < samples; ++s) {
    PureStateParams params;
    params.n = n;
    params.l.resize(n * n);
    params.z.resize(n);
    for (int i = 0; i < n * n; ++i) params.l(i) = normal(rng);
    for (int i = 0; i < n; ++i) params.z(i) = std::exp(uniform(rng));
    const CovarianceMatrix gamma = pure_cm_from_params(params);
    Mat out = x * x * gamma.matrix + y * Mat::Identity(2 * n, 2 * n);
    const auto sampled = symplectic_eigenvalues(CovarianceMatrix(n, out));

    double q_max = 0.0;
    for (double nu : sampled) q_max = std::max(q_max, (nu - 1.0) / (nu + 1.0));
    for (double nu : audit.optimal_spectrum) {
      q_max = std::max(q_max, (nu - 1.0) / (nu + 1.0));
    }
    int truncation = 8;
    if (q_max > 0.0) {
      truncation = static_cast<int>(
          std::ceil(std::log(eps / (4.0 * n)) / std::log(q_max))) + 2;
      truncation = std::clamp(truncation, 8, 400);
    }
    const MajorizationResult res =
        majorizes(audit.optimal_spectrum, sampled, truncation, eps);
    if (res.verdict != MajorizationVerdict::kFails) ++audit.passed;
    audit.worst_margin = std::min(audit.worst_margin, res.min_margin);
  }
  return audit;
}

}  // namespace gauss
