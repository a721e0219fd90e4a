#include "lsfrp/lp/simplex.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace lsfrp::lp {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
    case LpStatus::time_limit: return "time_limit";
    case LpStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr long kPerturbAfter = 50;     // degenerate pivots before bounds are perturbed
constexpr int kMaxCleanups = 5;        // bound restorations before shifting is given up
constexpr double kNoProgress = 1e-9;   // objective change below which a pivot counts as stalled
constexpr double kPerturbation = 1e-6;

// Internally: minimise c^T x subject to A x + s = b, with one logical s_r per row.
class Simplex {
 public:
  Simplex(const LinearModel& model, const LpSolveInput& input)
      : model_(model), opt_(input.options), m_(model.num_rows()), n_(model.num_vars()), total_(m_ + n_) {
    build_columns();
    build_bounds(input);
    max_iter_ = opt_.max_iterations > 0 ? opt_.max_iterations : 200L * (m_ + n_) + 5000;
    degenerate_limit_ = 3L * (m_ + n_);
    if (input.warm_start && !input.warm_start->empty() && load_basis(*input.warm_start) && factor()) return;
    slack_basis();
    if (!factor()) throw std::logic_error("slack basis is singular");
  }

  LpSolution run() {
    started_ = std::chrono::steady_clock::now();
    devex_.assign(total_, 1.0);
    LpSolution result;
    result.status = iterate();
    result.iterations = iterations_;
    fill_result(result);
    return result;
  }

 private:
  // ---- setup ------------------------------------------------------------

  void build_columns() {
    col_start_.assign(n_ + 1, 0);
    for (const Constraint& row : model_.rows())
      for (const Term& t : row.terms) ++col_start_[t.var + 1];
    for (int j = 0; j < n_; ++j) col_start_[j + 1] += col_start_[j];
    col_row_.resize(col_start_[n_]);
    col_val_.resize(col_start_[n_]);
    std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
    for (int r = 0; r < m_; ++r)
      for (const Term& t : model_.row(r).terms) {
        col_row_[fill[t.var]] = r;
        col_val_[fill[t.var]] = t.coef;
        ++fill[t.var];
      }
  }

  void build_bounds(const LpSolveInput& input) {
    lb_.resize(total_);
    ub_.resize(total_);
    cost_.assign(total_, 0.0);
    rhs_.resize(m_);
    for (int j = 0; j < n_; ++j) {
      const Variable& v = model_.var(j);
      lb_[j] = input.lower ? (*input.lower)[j] : v.lb;
      ub_[j] = input.upper ? (*input.upper)[j] : v.ub;
      cost_[j] = -v.obj;
    }
    for (int r = 0; r < m_; ++r) {
      const Constraint& row = model_.row(r);
      rhs_[r] = row.rhs;
      const int k = n_ + r;
      switch (row.sense) {
        case Sense::le: lb_[k] = 0.0; ub_[k] = kInf; break;
        case Sense::ge: lb_[k] = -kInf; ub_[k] = 0.0; break;
        case Sense::eq: lb_[k] = 0.0; ub_[k] = 0.0; break;
      }
    }
  }

  VarStatus resting_status(int j) const {
    if (lb_[j] > -kInf) return VarStatus::at_lower;
    if (ub_[j] < kInf) return VarStatus::at_upper;
    return VarStatus::free_zero;
  }

  // Make a nonbasic status consistent with (possibly overridden) bounds.
  VarStatus fix_status(int j, VarStatus s) const {
    if (s == VarStatus::at_upper && ub_[j] < kInf) return s;
    if (s == VarStatus::at_lower && lb_[j] > -kInf) return s;
    return resting_status(j);
  }

  void slack_basis() {
    status_.assign(total_, VarStatus::at_lower);
    head_.resize(m_);
    for (int j = 0; j < n_; ++j) status_[j] = resting_status(j);
    for (int r = 0; r < m_; ++r) {
      status_[n_ + r] = VarStatus::basic;
      head_[r] = n_ + r;
    }
    set_nonbasic_values();
  }

  bool load_basis(const Basis& basis) {
    if (static_cast<int>(basis.structural.size()) > n_ || static_cast<int>(basis.logical.size()) > m_) return false;
    status_.assign(total_, VarStatus::at_lower);
    for (int j = 0; j < n_; ++j)
      status_[j] = j < static_cast<int>(basis.structural.size()) ? basis.structural[j] : resting_status(j);
    for (int r = 0; r < m_; ++r)
      status_[n_ + r] = r < static_cast<int>(basis.logical.size()) ? basis.logical[r] : VarStatus::basic;
    head_.clear();
    for (int k = 0; k < total_; ++k) {
      if (status_[k] == VarStatus::basic)
        head_.push_back(k);
      else
        status_[k] = fix_status(k, status_[k]);
    }
    if (static_cast<int>(head_.size()) != m_) return false;
    set_nonbasic_values();
    return true;
  }

  void set_nonbasic_values() {
    x_.assign(total_, 0.0);
    for (int k = 0; k < total_; ++k) {
      switch (status_[k]) {
        case VarStatus::at_lower: x_[k] = lb_[k]; break;
        case VarStatus::at_upper: x_[k] = ub_[k]; break;
        default: x_[k] = 0.0; break;
      }
    }
  }

  // ---- linear algebra ---------------------------------------------------

  template <typename F>
  void for_column(int k, F&& f) const {
    if (k >= n_) {
      f(k - n_, 1.0);
      return;
    }
    for (int p = col_start_[k]; p < col_start_[k + 1]; ++p) f(col_row_[p], col_val_[p]);
  }

  bool factor() {
    since_refactor_ = 0;
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    if (m_ == 0) return true;
    // Bases of the flow models are very sparse; a sparse LU keeps refactoring
    // far below the cost of a dense inverse.
    std::vector<Eigen::Triplet<double>> entries;
    for (int c = 0; c < m_; ++c) for_column(head_[c], [&](int r, double v) { entries.emplace_back(r, c, v); });
    Eigen::SparseMatrix<double> basis(m_, m_);
    basis.setFromTriplets(entries.begin(), entries.end());
    basis.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(basis);
    if (lu.info() != Eigen::Success) return false;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
    double big = 0.0;
    for (int r = 0; r < m_; ++r) {
      e[r] = 1.0;
      const Eigen::VectorXd col = lu.solve(e);
      e[r] = 0.0;
      if (!col.allFinite()) return false;
      for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + r] = col[i];
      big = std::max(big, col.cwiseAbs().maxCoeff());
    }
    // An inverse this large means the basis is numerically singular.
    if (big > 1e11) return false;
    compute_basic_values();
    return true;
  }

  void compute_basic_values() {
    std::vector<double> residual(rhs_);
    for (int k = 0; k < total_; ++k) {
      if (status_[k] == VarStatus::basic || x_[k] == 0.0) continue;
      const double xk = x_[k];
      for_column(k, [&](int r, double v) { residual[r] -= v * xk; });
    }
    for (int i = 0; i < m_; ++i) {
      const double* row = &binv_[static_cast<std::size_t>(i) * m_];
      double sum = 0.0;
      for (int r = 0; r < m_; ++r) sum += row[r] * residual[r];
      x_[head_[i]] = sum;
    }
  }

  // alpha = B^{-1} A_k
  void ftran(int k, std::vector<double>& alpha) const {
    alpha.assign(m_, 0.0);
    for_column(k, [&](int r, double v) {
      for (int i = 0; i < m_; ++i) alpha[i] += binv_[static_cast<std::size_t>(i) * m_ + r] * v;
    });
  }

  // y = cB^T B^{-1}
  void btran(const std::vector<double>& cb, std::vector<double>& y) const {
    y.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (cb[i] == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(i) * m_];
      for (int r = 0; r < m_; ++r) y[r] += cb[i] * row[r];
    }
  }

  double reduced_cost(int k, double ck, const std::vector<double>& y) const {
    double d = ck;
    for_column(k, [&](int r, double v) { d -= y[r] * v; });
    return d;
  }

  // Rounding in d grows with the terms summed into it; with costs near 1e6 an
  // absolute threshold lets two columns swap forever on noise.
  double pricing_tol(int k, double ck, const std::vector<double>& y) const {
    double scale = std::abs(ck);
    for_column(k, [&](int r, double v) { scale += std::abs(y[r] * v); });
    return opt_.optimality_tol * std::max(1.0, scale);
  }

  void pivot(int leave_pos, const std::vector<double>& alpha) {
    double* prow = &binv_[static_cast<std::size_t>(leave_pos) * m_];
    const double inv = 1.0 / alpha[leave_pos];
    for (int c = 0; c < m_; ++c) prow[c] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave_pos || alpha[i] == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(i) * m_];
      const double f = alpha[i];
      for (int c = 0; c < m_; ++c) row[c] -= f * prow[c];
    }
    ++since_refactor_;
  }

  // ---- main loop --------------------------------------------------------

  enum class Infeasibility : std::uint8_t { none, below, above };

  Infeasibility infeasibility(int k) const {
    if (x_[k] < lb_[k] - opt_.feasibility_tol) return Infeasibility::below;
    if (x_[k] > ub_[k] + opt_.feasibility_tol) return Infeasibility::above;
    return Infeasibility::none;
  }

  LpStatus iterate() {
    std::vector<double> cb(m_), y, alpha;
    bool verified = false;
    bool bland = false;
    long degenerate_run = 0;

    while (true) {
      if (iterations_ >= max_iter_) return LpStatus::iteration_limit;
      if (iterations_ % 64 == 0 && out_of_time()) return LpStatus::time_limit;
      if (since_refactor_ >= opt_.refactor_interval && !factor()) return LpStatus::numerical_failure;

      bool phase1 = false;
      for (int i = 0; i < m_; ++i) {
        Infeasibility inf = infeasibility(head_[i]);
        cb[i] = inf == Infeasibility::below ? -1.0 : inf == Infeasibility::above ? 1.0 : 0.0;
        if (inf != Infeasibility::none) phase1 = true;
      }
      if (!phase1)
        for (int i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
      btran(cb, y);

      // Pricing.
      int enter = -1;
      double enter_d = 0.0, best = 0.0;
      for (int k = 0; k < total_; ++k) {
        const VarStatus st = status_[k];
        if (st == VarStatus::basic || lb_[k] == ub_[k]) continue;
        const double ck = phase1 ? 0.0 : cost_[k];
        const double d = reduced_cost(k, ck, y);
        if (std::abs(d) <= opt_.optimality_tol) continue;
        const double tol = pricing_tol(k, ck, y);
        bool eligible = false;
        if (st == VarStatus::at_lower) eligible = d < -tol;
        else if (st == VarStatus::at_upper) eligible = d > tol;
        else eligible = std::abs(d) > tol;
        if (!eligible) continue;
        if (bland) {
          enter = k;
          enter_d = d;
          break;
        }
        const double score = d * d / devex_[k];
        if (score > best) {
          best = score;
          enter = k;
          enter_d = d;
        }
      }

      if (enter < 0) {
        if (!verified && since_refactor_ > 0) {
          verified = true;
          if (!factor()) return LpStatus::numerical_failure;
          continue;
        }
        if (perturbed_) {
          remove_perturbation();
          ++cleanups_;
          if (!factor()) return LpStatus::numerical_failure;
          verified = true;
          continue;
        }
        return phase1 ? LpStatus::infeasible : LpStatus::optimal;
      }
      verified = false;

      const double dir = enter_d < 0.0 ? 1.0 : -1.0;
      ftran(enter, alpha);

      // Harris two-pass ratio test.
      const double harris = 0.5 * opt_.feasibility_tol;
      double theta_max = kInf;
      for (int i = 0; i < m_; ++i) {
        const double rate = -dir * alpha[i];
        if (std::abs(rate) < kPivotTol) continue;
        double lo, hi;
        effective_bounds(head_[i], phase1, lo, hi);
        if (rate > 0.0 && hi < kInf) theta_max = std::min(theta_max, (hi - x_[head_[i]] + harris) / rate);
        if (rate < 0.0 && lo > -kInf) theta_max = std::min(theta_max, (x_[head_[i]] - lo + harris) / -rate);
      }
      const double flip = ub_[enter] - lb_[enter];
      const bool can_flip = std::isfinite(flip) && status_[enter] != VarStatus::free_zero;

      if (can_flip && flip <= theta_max) {
        apply_step(enter, dir, flip, alpha);
        status_[enter] = status_[enter] == VarStatus::at_lower ? VarStatus::at_upper : VarStatus::at_lower;
        x_[enter] = status_[enter] == VarStatus::at_lower ? lb_[enter] : ub_[enter];
        ++iterations_;
        degenerate_run = 0;
        bland = false;
        continue;
      }

      int leave = -1;
      double leave_step = 0.0, leave_target = 0.0, leave_piv = 0.0;
      if (theta_max < kInf) {
        for (int i = 0; i < m_; ++i) {
          const double rate = -dir * alpha[i];
          if (std::abs(rate) < kPivotTol) continue;
          double lo, hi;
          effective_bounds(head_[i], phase1, lo, hi);
          double step, target;
          if (rate > 0.0 && hi < kInf) {
            step = (hi - x_[head_[i]]) / rate;
            target = hi;
          } else if (rate < 0.0 && lo > -kInf) {
            step = (x_[head_[i]] - lo) / -rate;
            target = lo;
          } else {
            continue;
          }
          if (step > theta_max) continue;
          bool take;
          if (leave < 0) take = true;
          else if (bland) take = step < leave_step - kDegenerateStep ||
                                 (step <= leave_step + kDegenerateStep && head_[i] < head_[leave]);
          else take = std::abs(alpha[i]) > leave_piv;
          if (take) {
            leave = i;
            leave_step = step;
            leave_target = target;
            leave_piv = std::abs(alpha[i]);
          }
        }
      }

      if (leave < 0) {
        if (phase1) return LpStatus::numerical_failure;
        return LpStatus::unbounded;
      }

      const double step = std::max(0.0, leave_step);
      apply_step(enter, dir, step, alpha);
      const int out = head_[leave];
      // A leaving variable already past its bound (within tolerance) would be
      // pulled back onto it, breaking B x = b and re-entering phase 1. Shift the
      // bound to where the variable is instead; cleanup restores it.
      if (leave_step < 0.0 && cleanups_ < kMaxCleanups) {
        save_bounds();
        if (leave_target == lb_[out]) lb_[out] = leave_target = x_[out];
        else ub_[out] = leave_target = x_[out];
      }
      x_[out] = leave_target;
      status_[out] = leave_target == lb_[out] ? VarStatus::at_lower : VarStatus::at_upper;
      if (lb_[out] == ub_[out]) status_[out] = VarStatus::at_lower;
      status_[enter] = VarStatus::basic;
      head_[leave] = enter;
      update_devex(enter, leave, out, alpha);
      pivot(leave, alpha);
      ++iterations_;

      if (step <= kDegenerateStep && ++degenerate_total_ > kPerturbAfter + m_ / 10 && !perturbation_used_ &&
          cleanups_ < kMaxCleanups)
        apply_perturbation();
      // Tiny positive steps can cycle as well, so Bland is keyed on objective
      // progress rather than on the step length alone.
      if (step * std::abs(enter_d) <= kNoProgress) {
        if (++degenerate_run > degenerate_limit_) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  // Stalling on degenerate vertices: widen bounds by small deterministic
  // amounts so that ties in the ratio test break. Basic variables widen on both
  // sides, nonbasic ones only away from the bound they sit at, so the current
  // point stays primal feasible.
  void apply_perturbation() {
    perturbation_used_ = true;
    save_bounds();
    for (int k = 0; k < total_; ++k) {
      const double u = 0.5 + 0.5 * std::fmod(0.6180339887498949 * (k + 1), 1.0);
      const double lo_shift = kPerturbation * u * (1.0 + std::abs(lb_[k]));
      const double hi_shift = kPerturbation * u * (1.0 + std::abs(ub_[k]));
      const bool widen_lo = status_[k] == VarStatus::basic || status_[k] == VarStatus::at_upper;
      const bool widen_hi = status_[k] == VarStatus::basic || status_[k] == VarStatus::at_lower;
      if (widen_lo && lb_[k] > -kInf) lb_[k] -= lo_shift;
      if (widen_hi && ub_[k] < kInf) ub_[k] += hi_shift;
    }
  }

  bool out_of_time() const {
    if (!(opt_.time_limit_seconds < kInf)) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count() >
           opt_.time_limit_seconds;
  }

  void save_bounds() {
    if (perturbed_) return;
    perturbed_ = true;
    true_lb_ = lb_;
    true_ub_ = ub_;
  }

  // Restores the true bounds; nonbasic variables return to them and the
  // iteration continues from the same basis.
  void remove_perturbation() {
    perturbed_ = false;
    lb_ = true_lb_;
    ub_ = true_ub_;
    for (int k = 0; k < total_; ++k) {
      if (status_[k] == VarStatus::basic) continue;
      status_[k] = fix_status(k, status_[k]);
      if (status_[k] == VarStatus::at_lower) x_[k] = lb_[k];
      else if (status_[k] == VarStatus::at_upper) x_[k] = ub_[k];
    }
  }

  // Devex: weights approximate the steepest-edge norms relative to the
  // reference framework and are reset once they grow too large.
  void update_devex(int enter, int leave_pos, int out, const std::vector<double>& alpha) {
    const double* prow = &binv_[static_cast<std::size_t>(leave_pos) * m_];
    const double piv = alpha[leave_pos];
    const double wq = devex_[enter];
    double largest = 0.0;
    for (int k = 0; k < total_; ++k) {
      if (status_[k] == VarStatus::basic || k == enter || k == out) continue;
      double ar = 0.0;
      for_column(k, [&](int r, double v) { ar += prow[r] * v; });
      if (ar == 0.0) continue;
      const double ratio = ar / piv;
      devex_[k] = std::max(devex_[k], ratio * ratio * wq);
      largest = std::max(largest, devex_[k]);
    }
    devex_[out] = std::max(wq / (piv * piv), 1.0);
    if (largest > 1e6) devex_.assign(total_, 1.0);
  }

  // In phase 1 an infeasible basic variable may only travel back to the bound it violates.
  void effective_bounds(int k, bool phase1, double& lo, double& hi) const {
    lo = lb_[k];
    hi = ub_[k];
    if (!phase1) return;
    switch (infeasibility(k)) {
      case Infeasibility::below: lo = -kInf; hi = lb_[k]; break;
      case Infeasibility::above: lo = ub_[k]; hi = kInf; break;
      case Infeasibility::none: break;
    }
  }

  void apply_step(int enter, double dir, double step, const std::vector<double>& alpha) {
    if (step == 0.0) return;
    x_[enter] += dir * step;
    for (int i = 0; i < m_; ++i)
      if (alpha[i] != 0.0) x_[head_[i]] -= dir * alpha[i] * step;
  }

  // ---- output -----------------------------------------------------------

  void fill_result(LpSolution& out) {
    out.x.assign(x_.begin(), x_.begin() + n_);
    out.basis.structural.assign(status_.begin(), status_.begin() + n_);
    out.basis.logical.assign(status_.begin() + n_, status_.end());
    out.objective = model_.evaluate(out.x);
    if (out.status != LpStatus::optimal) return;

    std::vector<double> cb(m_), y;
    for (int i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
    btran(cb, y);
    out.duals.resize(m_);
    for (int r = 0; r < m_; ++r) out.duals[r] = -y[r];
    out.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) out.reduced_costs[j] = -reduced_cost(j, cost_[j], y);
  }

  const LinearModel& model_;
  LpOptions opt_;
  int m_, n_, total_;
  long max_iter_ = 0;
  long degenerate_limit_ = 0;
  long degenerate_total_ = 0;
  bool perturbed_ = false;
  bool perturbation_used_ = false;
  int cleanups_ = 0;
  std::chrono::steady_clock::time_point started_;
  std::vector<double> true_lb_, true_ub_;
  long iterations_ = 0;
  int since_refactor_ = 0;

  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<double> lb_, ub_, cost_, rhs_;
  std::vector<VarStatus> status_;
  std::vector<int> head_;
  std::vector<double> x_;
  std::vector<double> devex_;  // reference weights for pricing
  std::vector<double> binv_;
};

}  // namespace

LpSolution solve_lp(const LinearModel& model, const LpSolveInput& input) {
  model.check();
  if (input.lower && static_cast<int>(input.lower->size()) != model.num_vars())
    throw std::invalid_argument("lower bound override size mismatch");
  if (input.upper && static_cast<int>(input.upper->size()) != model.num_vars())
    throw std::invalid_argument("upper bound override size mismatch");
  if (input.lower && input.upper)
    for (int j = 0; j < model.num_vars(); ++j)
      if ((*input.lower)[j] > (*input.upper)[j]) {
        LpSolution infeasible;
        infeasible.status = LpStatus::infeasible;
        return infeasible;
      }
  return Simplex(model, input).run();
}

LpSolution solve_lp(const LinearModel& model) { return solve_lp(model, LpSolveInput{}); }

}  // namespace lsfrp::lp
