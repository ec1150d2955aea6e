// Independent oracles used to cross-check the solvers:
//  - exhaustive vertex enumeration for small box-bounded LPs,
//  - 2^n subset enumeration for the single-medium gap-filling MILP,
//  - 2^n availability enumeration for the search objective.
#ifndef MULTIFAC_TESTS_ORACLES_HPP
#define MULTIFAC_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "multifac/lp.hpp"
#include "multifac/model.hpp"
#include "multifac/objectives.hpp"
#include "multifac/pfba.hpp"
#include "multifac/preprocess.hpp"
#include "multifac/rng.hpp"

namespace oracles {

struct LpOracleResult {
  bool feasible = false;
  double objective = std::numeric_limits<double>::infinity();
};

// Enumerate every vertex (n linearly independent active constraints) of an LP
// whose variable bounds are all finite, so the feasible set is a polytope and
// the optimum, if any, is attained at a vertex.
inline LpOracleResult lp_vertex_oracle(const multifac::LinearProgram& lp,
                                       double feas_tol = 1e-7) {
  int n = lp.num_cols();
  int m = lp.num_rows();
  struct Plane {
    Eigen::VectorXd a;
    double b;
  };
  std::vector<Plane> planes;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(j) = 1.0;
    planes.push_back({e, lp.col_lo[j]});
    planes.push_back({e, lp.col_hi[j]});
  }
  std::vector<Eigen::VectorXd> row_vecs(m, Eigen::VectorXd::Zero(n));
  for (int r = 0; r < m; ++r) {
    for (const auto& e : lp.rows[r]) row_vecs[r](e.col) = e.val;
    if (std::isfinite(lp.row_lo[r])) planes.push_back({row_vecs[r], lp.row_lo[r]});
    if (std::isfinite(lp.row_hi[r])) planes.push_back({row_vecs[r], lp.row_hi[r]});
  }

  Eigen::VectorXd c(n);
  for (int j = 0; j < n; ++j) c(j) = lp.objective[j];

  LpOracleResult best;
  int total = static_cast<int>(planes.size());
  std::vector<int> pick(n);
  auto check_vertex = [&](const Eigen::VectorXd& x) {
    for (int j = 0; j < n; ++j)
      if (x(j) < lp.col_lo[j] - feas_tol || x(j) > lp.col_hi[j] + feas_tol)
        return;
    for (int r = 0; r < m; ++r) {
      double v = row_vecs[r].dot(x);
      if (v < lp.row_lo[r] - feas_tol || v > lp.row_hi[r] + feas_tol) return;
    }
    best.feasible = true;
    best.objective = std::min(best.objective, c.dot(x));
  };
  // Recursive combination enumeration.
  auto recurse = [&](auto&& self, int depth, int start) -> void {
    if (depth == n) {
      Eigen::MatrixXd A(n, n);
      Eigen::VectorXd b(n);
      for (int k = 0; k < n; ++k) {
        A.row(k) = planes[pick[k]].a.transpose();
        b(k) = planes[pick[k]].b;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (lu.rank() < n) return;
      check_vertex(lu.solve(b));
      return;
    }
    for (int i = start; i < total; ++i) {
      pick[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

// Random box-bounded LP for differential testing.
inline multifac::LinearProgram random_lp(multifac::Rng& rng, int max_vars = 8,
                                         int max_rows = 3) {
  multifac::LinearProgram lp;
  int n = 2 + static_cast<int>(rng.uniform() * (max_vars - 1));
  int m = static_cast<int>(rng.uniform() * (max_rows + 1));
  if (n >= 7) m = std::min(m, 2);  // keep the oracle's combination count sane
  lp.objective.resize(n);
  lp.col_lo.resize(n);
  lp.col_hi.resize(n);
  for (int j = 0; j < n; ++j) {
    lp.objective[j] = -3.0 + 6.0 * rng.uniform();
    lp.col_lo[j] = -2.0 * rng.uniform();
    lp.col_hi[j] = lp.col_lo[j] + 3.0 * rng.uniform();
  }
  for (int r = 0; r < m; ++r) {
    std::vector<multifac::LinearProgram::Entry> row;
    for (int j = 0; j < n; ++j)
      if (rng.uniform() < 0.6)
        row.push_back({j, -2.0 + 4.0 * rng.uniform()});
    if (row.empty()) row.push_back({0, 1.0});
    double center = -1.0 + 2.0 * rng.uniform();
    double width = 0.1 + 2.0 * rng.uniform();
    lp.rows.push_back(std::move(row));
    // Occasionally a deliberately unreachable band to exercise Infeasible.
    if (rng.uniform() < 0.15) {
      lp.row_lo.push_back(50.0);
      lp.row_hi.push_back(51.0);
    } else {
      lp.row_lo.push_back(center - width);
      lp.row_hi.push_back(center + width);
    }
  }
  return lp;
}

// Exhaustive subset enumeration of min sum c_i y_i - alpha x_0 over candidate
// inclusion vectors; the inner LP maximises biomass over the enabled network.
struct MilpOracleResult {
  double objective = std::numeric_limits<double>::infinity();
  std::vector<int> best_subset;  // candidate indices enabled
};

inline MilpOracleResult milp_enumeration_oracle(
    const multifac::MetabolicModel& model, const multifac::MediumSpec& medium,
    const std::vector<double>& costs, double alpha) {
  int bio = model.biomass_index();
  std::vector<int> cand;
  for (std::size_t i = 0; i < model.reactions.size(); ++i)
    if (!model.reactions[i].gene_indicated && static_cast<int>(i) != bio)
      cand.push_back(static_cast<int>(i));
  int nc = static_cast<int>(cand.size());
  MilpOracleResult out;
  for (unsigned mask = 0; mask < (1u << nc); ++mask) {
    auto state = multifac::AvailabilityState::all_available(model);
    double subset_cost = 0.0;
    for (int q = 0; q < nc; ++q) {
      if (mask & (1u << q))
        subset_cost += costs[cand[q]];
      else
        state.available[cand[q]] = 0;
    }
    auto net = multifac::expand(model, state);
    auto lp = multifac::build_pfba_lp(model, net, medium, alpha);
    for (int c = 0; c < lp.num_cols(); ++c)
      if (c != net.biomass_column) lp.objective[c] = 0.0;
    auto sol = multifac::solve(lp);
    if (sol.status != multifac::LpStatus::Optimal) continue;
    double value = subset_cost + sol.objective_value;
    if (value < out.objective) {
      out.objective = value;
      out.best_subset.clear();
      for (int q = 0; q < nc; ++q)
        if (mask & (1u << q)) out.best_subset.push_back(cand[q]);
    }
  }
  return out;
}

// Exhaustive enumeration of the search objective over every availability
// vector of the (non-gene) candidates, holding alphas, targets and C_0 fixed.
struct SearchOracleResult {
  double objective = std::numeric_limits<double>::infinity();
  unsigned best_mask = 0;
};

inline SearchOracleResult search_enumeration_oracle(
    const multifac::MetabolicModel& model, const multifac::PreprocessResult& prep,
    const multifac::Betas& betas) {
  std::vector<int> cand;
  for (std::size_t i = 0; i < model.reactions.size(); ++i)
    if (!model.reactions[i].gene_indicated) cand.push_back(static_cast<int>(i));
  int nc = static_cast<int>(cand.size());
  SearchOracleResult out;
  for (unsigned mask = 0; mask < (1u << nc); ++mask) {
    multifac::AvailabilityState state;
    state.available.assign(model.reactions.size(), 1);
    state.eval_costs.assign(model.reactions.size(), 1.0);
    for (int q = 0; q < nc; ++q)
      if (!(mask & (1u << q))) state.available[cand[q]] = 0;
    auto sols =
        multifac::solve_all_media(model, prep.retained_media, state, prep.alpha);
    std::map<std::string, double> predictions;
    for (const auto& s : sols) predictions[s.medium_id] = s.biomass;
    auto ev = multifac::evaluate_predictions(predictions, prep.targets, betas,
                                             prep.c0, &sols, &model);
    if (ev.objective < out.objective) {
      out.objective = ev.objective;
      out.best_mask = mask;
    }
  }
  return out;
}

}  // namespace oracles

#endif  // MULTIFAC_TESTS_ORACLES_HPP
