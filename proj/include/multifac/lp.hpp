// Bounded-variable primal simplex with ranged rows and warm starts.
//
// Ranged rows row_lo <= a'x <= row_hi are handled natively by attaching one
// slack per row (a'x - s = 0, s in [row_lo, row_hi]) so the basis is always
// square and a slack basis is always available as a cold start. The basis is
// refactorised densely each pivot; problem sizes here are tens of variables,
// so simplicity wins over update formulas.
#ifndef MULTIFAC_LP_HPP
#define MULTIFAC_LP_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace multifac {

inline constexpr double kLpInf = std::numeric_limits<double>::infinity();

struct LinearProgram {
  std::vector<double> objective;  // minimised
  std::vector<double> col_lo, col_hi;
  struct Entry {
    int col;
    double val;
  };
  std::vector<std::vector<Entry>> rows;
  std::vector<double> row_lo, row_hi;

  int num_cols() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

// Opaque warm-start token: basis membership plus nonbasic sides.
struct Basis {
  std::vector<int> basic;             // m variable indices (structural or slack)
  std::vector<std::uint8_t> at_upper; // per variable, nonbasic side
  bool valid = false;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> primal;
  double objective_value = 0.0;
  Basis basis;
};

struct SimplexOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  long max_pivots = 1000000;
  long bland_after = 10000;  // degenerate pivots before switching to Bland's rule
};

namespace detail {

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt), n_(lp.num_cols()), m_(lp.num_rows()) {
    total_ = n_ + m_;
    lo_.resize(total_);
    hi_.resize(total_);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.col_lo[j];
      hi_[j] = lp.col_hi[j];
    }
    for (int r = 0; r < m_; ++r) {
      lo_[n_ + r] = lp.row_lo[r];
      hi_[n_ + r] = lp.row_hi[r];
    }
    cols_.resize(total_);
    for (int r = 0; r < m_; ++r) {
      for (const auto& e : lp.rows[r]) cols_[e.col].push_back({r, e.val});
      cols_[n_ + r].push_back({r, -1.0});
    }
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = lp.objective[j];
  }

  LpSolution run(const Basis* warm) {
    init_basis(warm);
    compute_basics();
    LpSolution sol;
    // Phase 1: drive basic bound violations to zero.
    for (;;) {
      if (pivots_ >= opt_.max_pivots) return finish(LpStatus::IterationLimit);
      if (max_violation() <= opt_.feas_tol) break;
      if (!iterate(/*phase1=*/true)) return finish(LpStatus::Infeasible);
    }
    // Phase 2: optimise the true objective.
    for (;;) {
      if (pivots_ >= opt_.max_pivots) return finish(LpStatus::IterationLimit);
      int status = iterate(/*phase1=*/false);
      if (status == kOptimal) return finish(LpStatus::Optimal);
      if (status == kUnbounded) return finish(LpStatus::Unbounded);
    }
  }

 private:
  static constexpr int kContinue = 1, kOptimal = 0, kUnbounded = -1;
  enum VStat : std::uint8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

  struct ColEntry {
    int row;
    double val;
  };

  void init_basis(const Basis* warm) {
    vstat_.assign(total_, kAtLower);
    basic_.clear();
    bool warm_ok = warm && warm->valid &&
                   static_cast<int>(warm->basic.size()) == m_ &&
                   static_cast<int>(warm->at_upper.size()) == total_;
    if (warm_ok) {
      std::vector<char> in_basis(total_, 0);
      for (int v : warm->basic)
        if (v < 0 || v >= total_ || in_basis[v]) {
          warm_ok = false;
          break;
        } else {
          in_basis[v] = 1;
        }
      if (warm_ok) {
        basic_ = warm->basic;
        for (int v = 0; v < total_; ++v) {
          if (in_basis[v])
            vstat_[v] = kBasic;
          else
            vstat_[v] = warm->at_upper[v] ? kAtUpper : kAtLower;
        }
      }
    }
    if (basic_.empty()) {
      basic_.resize(m_);
      for (int r = 0; r < m_; ++r) {
        basic_[r] = n_ + r;
        vstat_[n_ + r] = kBasic;
      }
    }
    x_.assign(total_, 0.0);
    for (int v = 0; v < total_; ++v) {
      if (vstat_[v] == kBasic) continue;
      double val;
      if (vstat_[v] == kAtUpper && std::isfinite(hi_[v])) {
        val = hi_[v];
      } else if (std::isfinite(lo_[v])) {
        val = lo_[v];
        vstat_[v] = kAtLower;
      } else if (std::isfinite(hi_[v])) {
        val = hi_[v];
        vstat_[v] = kAtUpper;
      } else {
        val = 0.0;
        vstat_[v] = kAtLower;
      }
      x_[v] = val;
    }
  }

  void factorize() {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
    for (int k = 0; k < m_; ++k)
      for (const auto& e : cols_[basic_[k]]) B(e.row, k) = e.val;
    lu_.compute(B);
    // Basis repair: a singular basis falls back to the slack basis.
    if (std::abs(lu_.determinant()) < 1e-300) {
      for (int r = 0; r < m_; ++r) {
        vstat_[basic_[r]] = kAtLower;
        if (!std::isfinite(lo_[basic_[r]]))
          x_[basic_[r]] = std::isfinite(hi_[basic_[r]]) ? hi_[basic_[r]] : 0.0;
        basic_[r] = n_ + r;
        vstat_[n_ + r] = kBasic;
      }
      Eigen::MatrixXd S = Eigen::MatrixXd::Constant(m_, m_, 0.0);
      for (int r = 0; r < m_; ++r) S(r, r) = -1.0;
      lu_.compute(S);
    }
  }

  void compute_basics() {
    factorize();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int v = 0; v < total_; ++v) {
      if (vstat_[v] == kBasic || x_[v] == 0.0) continue;
      for (const auto& e : cols_[v]) rhs(e.row) -= e.val * x_[v];
    }
    Eigen::VectorXd xb = lu_.solve(rhs);
    for (int k = 0; k < m_; ++k) x_[basic_[k]] = xb(k);
  }

  double max_violation() const {
    double v = 0.0;
    for (int k = 0; k < m_; ++k) {
      int b = basic_[k];
      if (x_[b] < lo_[b]) v = std::max(v, lo_[b] - x_[b]);
      if (x_[b] > hi_[b]) v = std::max(v, x_[b] - hi_[b]);
    }
    return v;
  }

  // One simplex iteration. Phase 2 returns kOptimal/kUnbounded/kContinue;
  // phase 1 returns kContinue on progress and kOptimal (cast to false by the
  // caller) when no improving direction exists while violations remain.
  int iterate(bool phase1) {
    factorize();
    // Objective for pricing.
    Eigen::VectorXd cb(m_);
    for (int k = 0; k < m_; ++k) {
      int b = basic_[k];
      if (phase1) {
        if (x_[b] < lo_[b] - opt_.feas_tol)
          cb(k) = -1.0;
        else if (x_[b] > hi_[b] + opt_.feas_tol)
          cb(k) = 1.0;
        else
          cb(k) = 0.0;
      } else {
        cb(k) = cost_[b];
      }
    }
    Eigen::VectorXd y = lu_.transpose().solve(cb);

    bool bland = degenerate_ >= opt_.bland_after;
    int enter = -1;
    int dir = 0;  // +1 entering increases, -1 decreases
    double best = phase1 ? -opt_.feas_tol : -opt_.opt_tol;
    for (int v = 0; v < total_; ++v) {
      if (vstat_[v] == kBasic) continue;
      double cj = phase1 ? 0.0 : cost_[v];
      double d = cj;
      for (const auto& e : cols_[v]) d -= y(e.row) * e.val;
      bool free_var = !std::isfinite(lo_[v]) && !std::isfinite(hi_[v]);
      int cand_dir = 0;
      double score = 0.0;
      if ((vstat_[v] == kAtLower || free_var) && d < best) {
        cand_dir = +1;
        score = d;
      }
      if ((vstat_[v] == kAtUpper || free_var) && -d < best && cand_dir == 0) {
        cand_dir = -1;
        score = -d;
      }
      if (cand_dir != 0) {
        enter = v;
        dir = cand_dir;
        if (bland) break;       // lowest index wins
        best = score;           // Dantzig: most negative reduced cost
      }
    }
    if (enter < 0) return kOptimal;

    // Direction of basic variables: x_B(t) = x_B - dir * t * w.
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
    for (const auto& e : cols_[enter]) a(e.row) = e.val;
    Eigen::VectorXd w = lu_.solve(a);

    const double piv_tol = 1e-9;
    double t_max = kLpInf;
    int leave = -1;       // basis slot of the blocking variable
    double leave_to = 0;  // bound the leaving variable lands on
    for (int k = 0; k < m_; ++k) {
      int b = basic_[k];
      double delta = -dir * w(k);
      if (std::abs(delta) < piv_tol) continue;
      double limit = kLpInf, target = 0.0;
      bool below = x_[b] < lo_[b] - opt_.feas_tol;
      bool above = x_[b] > hi_[b] + opt_.feas_tol;
      if (delta > 0) {
        // variable increases
        if (below) {
          limit = (lo_[b] - x_[b]) / delta;
          target = lo_[b];
        } else if (!above && std::isfinite(hi_[b])) {
          limit = (hi_[b] - x_[b]) / delta;
          target = hi_[b];
        }
      } else {
        // variable decreases
        if (above) {
          limit = (hi_[b] - x_[b]) / delta;
          target = hi_[b];
        } else if (!below && std::isfinite(lo_[b])) {
          limit = (lo_[b] - x_[b]) / delta;
          target = lo_[b];
        }
      }
      if (limit < -1e-12) limit = 0.0;
      if (limit < t_max - 1e-12 ||
          (bland && limit < t_max + 1e-12 && (leave < 0 || b < basic_[leave]))) {
        t_max = std::max(limit, 0.0);
        leave = k;
        leave_to = target;
      }
    }
    // Bound flip of the entering variable.
    double flip = kLpInf;
    if (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter]))
      flip = hi_[enter] - lo_[enter];
    if (flip < t_max - 1e-12) {
      double t = flip;
      x_[enter] = (dir > 0) ? hi_[enter] : lo_[enter];
      vstat_[enter] = (dir > 0) ? kAtUpper : kAtLower;
      for (int k = 0; k < m_; ++k) x_[basic_[k]] -= dir * t * w(k);
      bump(t);
      return kContinue;
    }
    if (!std::isfinite(t_max)) {
      // No blocking breakpoint: unbounded in phase 2, numerically stalled in
      // phase 1 (the objective is bounded below, so treat as infeasible).
      return phase1 ? kOptimal : kUnbounded;
    }
    // Pivot: entering becomes basic, blocking variable leaves to its bound.
    double t = t_max;
    x_[enter] += dir * t;
    for (int k = 0; k < m_; ++k) x_[basic_[k]] -= dir * t * w(k);
    int out = basic_[leave];
    x_[out] = leave_to;
    vstat_[out] = (leave_to == hi_[out] && std::isfinite(hi_[out])) ? kAtUpper : kAtLower;
    basic_[leave] = enter;
    vstat_[enter] = kBasic;
    bump(t);
    return kContinue;
  }

  void bump(double step) {
    ++pivots_;
    if (step < 1e-12) ++degenerate_;
  }

  LpSolution finish(LpStatus status) {
    LpSolution sol;
    sol.status = status;
    sol.primal.assign(x_.begin(), x_.begin() + n_);
    sol.objective_value = 0.0;
    for (int j = 0; j < n_; ++j) sol.objective_value += cost_[j] * x_[j];
    sol.basis.basic = basic_;
    sol.basis.at_upper.assign(total_, 0);
    for (int v = 0; v < total_; ++v)
      if (vstat_[v] == kAtUpper) sol.basis.at_upper[v] = 1;
    sol.basis.valid = (status == LpStatus::Optimal);
    return sol;
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  int n_, m_, total_;
  std::vector<double> lo_, hi_, cost_, x_;
  std::vector<std::vector<ColEntry>> cols_;
  std::vector<int> basic_;
  std::vector<std::uint8_t> vstat_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  long pivots_ = 0;
  long degenerate_ = 0;
};

}  // namespace detail

inline LpSolution solve(const LinearProgram& lp, const Basis* warm_start = nullptr,
                        const SimplexOptions& options = {}) {
  if (lp.num_rows() == 0) {
    // Pure box problem: each variable sits at its cheaper bound.
    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.primal.resize(lp.num_cols());
    sol.objective_value = 0.0;
    for (int j = 0; j < lp.num_cols(); ++j) {
      double c = lp.objective[j];
      double v;
      if (c > 0) {
        v = lp.col_lo[j];
        if (!std::isfinite(v)) sol.status = LpStatus::Unbounded;
      } else if (c < 0) {
        v = lp.col_hi[j];
        if (!std::isfinite(v)) sol.status = LpStatus::Unbounded;
      } else {
        v = std::isfinite(lp.col_lo[j]) ? lp.col_lo[j] : 0.0;
      }
      if (lp.col_lo[j] > lp.col_hi[j]) sol.status = LpStatus::Infeasible;
      if (sol.status != LpStatus::Optimal) return sol;
      sol.primal[j] = v;
      sol.objective_value += c * v;
    }
    sol.basis.valid = false;
    return sol;
  }
  detail::Simplex simplex(lp, options);
  return simplex.run(warm_start);
}

// Plain-text listing for differential testing against other solvers.
inline std::string dump(const LinearProgram& lp) {
  std::ostringstream os;
  os << "minimize\n";
  for (int j = 0; j < lp.num_cols(); ++j)
    os << "  c" << j << " " << lp.objective[j] << " [" << lp.col_lo[j] << ", "
       << lp.col_hi[j] << "]\n";
  os << "rows\n";
  for (int r = 0; r < lp.num_rows(); ++r) {
    os << "  " << lp.row_lo[r] << " <=";
    for (const auto& e : lp.rows[r]) os << " " << e.val << "*c" << e.col;
    os << " <= " << lp.row_hi[r] << "\n";
  }
  return os.str();
}

}  // namespace multifac

#endif  // MULTIFAC_LP_HPP
