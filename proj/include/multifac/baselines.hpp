// Sequential gap-filling baselines. Both process media one at a time in
// decreasing growth-score order and lock in newly selected reactions at cost
// 1.01 for later media; they differ in the per-medium subproblem (cost-
// weighted pFBA vs the single-medium gap-filling MILP solved by a small
// branch-and-bound over the LP relaxation).
#ifndef MULTIFAC_BASELINES_HPP
#define MULTIFAC_BASELINES_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "multifac/lp.hpp"
#include "multifac/model.hpp"
#include "multifac/objectives.hpp"
#include "multifac/pfba.hpp"
#include "multifac/preprocess.hpp"

namespace multifac {

struct SequentialConfig {
  double lock_in_cost = 1.01;
  double min_other_cost = 1.5;
  double time_limit_s = 3600.0;  // per medium
  double mip_gap = 0.01;
  long node_limit = 100000;
  Betas betas;
};

struct MilpResult {
  std::vector<std::uint8_t> y;   // per reaction; gene-indicated fixed at 1
  std::vector<double> fluxes;    // net flux per reaction
  double biomass = 0.0;
  double objective = 0.0;
  double gap = 0.0;              // relative bound gap at termination
  bool truncated = false;        // node/time limit hit
  long nodes = 0;
};

// Single-medium gap-filling MILP: min sum c_i y_i - alpha x_0 with
// x <= y U linking, solved by best-first branch-and-bound on the y's.
inline MilpResult solve_gf_milp(const MetabolicModel& model,
                                const MediumSpec& medium,
                                const std::vector<double>& costs, double alpha,
                                const SequentialConfig& cfg = {}) {
  AvailabilityState all = AvailabilityState::all_available(model);
  ExpandedNetwork net = expand(model, all);
  int bio = model.biomass_index();

  std::vector<int> cand;  // reaction indices with a y variable
  for (std::size_t i = 0; i < model.reactions.size(); ++i)
    if (!model.reactions[i].gene_indicated && static_cast<int>(i) != bio)
      cand.push_back(static_cast<int>(i));

  int nx = static_cast<int>(net.columns.size());
  int ny = static_cast<int>(cand.size());
  LinearProgram lp = build_pfba_lp(model, net, medium, alpha);
  // pFBA objective puts c on the x columns; the MILP costs sit on y instead.
  for (int c = 0; c < nx; ++c)
    if (c != net.biomass_column) lp.objective[c] = 0.0;
  lp.objective.resize(nx + ny);
  lp.col_lo.resize(nx + ny, 0.0);
  lp.col_hi.resize(nx + ny, 1.0);
  std::vector<int> y_col(model.reactions.size(), -1);
  for (int q = 0; q < ny; ++q) {
    lp.objective[nx + q] = costs[cand[q]];
    y_col[cand[q]] = nx + q;
  }
  // Linking rows x_dir - U y <= 0 for both directions of each candidate.
  for (int c = 0; c < nx; ++c) {
    int r = net.columns[c].reaction;
    if (y_col[r] < 0) continue;
    lp.rows.push_back({{c, 1.0}, {y_col[r], -model.reactions[r].flux_upper_bound}});
    lp.row_lo.push_back(-kLpInf);
    lp.row_hi.push_back(0.0);
  }

  struct Node {
    double bound;
    std::vector<std::pair<int, int>> fixings;  // (y column, 0 or 1)
    bool operator>(const Node& o) const { return bound > o.bound; }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;
  open.push({-kLpInf, {}});

  MilpResult res;
  double incumbent = kLpInf;
  std::vector<double> incumbent_primal;
  const double int_tol = 1e-6;
  auto start = std::chrono::steady_clock::now();

  auto rel_gap = [&](double bound) {
    if (!std::isfinite(incumbent)) return kLpInf;
    return (incumbent - bound) / std::max(std::abs(incumbent), 1e-9);
  };

  double best_open_bound = -kLpInf;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    best_open_bound = node.bound;
    if (std::isfinite(incumbent) && rel_gap(node.bound) <= cfg.mip_gap) break;

    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (res.nodes >= cfg.node_limit || elapsed > cfg.time_limit_s) {
      res.truncated = true;
      break;
    }

    LinearProgram sub = lp;
    for (auto [col, v] : node.fixings) {
      sub.col_lo[col] = v;
      sub.col_hi[col] = v;
    }
    LpSolution sol = solve(sub);
    ++res.nodes;
    if (sol.status != LpStatus::Optimal) continue;  // infeasible subtree
    if (sol.objective_value >= incumbent - 1e-9) continue;

    int frac_col = -1;
    double frac_score = -1.0;
    for (int q = 0; q < ny; ++q) {
      double v = sol.primal[nx + q];
      double dist = std::min(v - std::floor(v), std::ceil(v) - v);
      if (dist > int_tol && dist > frac_score) {
        frac_score = dist;
        frac_col = nx + q;
      }
    }
    if (frac_col < 0) {
      incumbent = sol.objective_value;
      incumbent_primal = sol.primal;
    } else {
      Node child = node;
      child.bound = sol.objective_value;
      child.fixings.push_back({frac_col, 0});
      open.push(child);
      child.fixings.back().second = 1;
      open.push(child);
    }
  }

  if (open.empty()) best_open_bound = incumbent;  // search exhausted: gap 0
  res.gap = std::isfinite(incumbent)
                ? std::max(0.0, rel_gap(std::min(best_open_bound, incumbent)))
                : kLpInf;
  res.objective = incumbent;
  res.y.assign(model.reactions.size(), 0);
  res.fluxes.assign(model.reactions.size(), 0.0);
  if (!incumbent_primal.empty()) {
    std::vector<double> directed(incumbent_primal.begin(),
                                 incumbent_primal.begin() + nx);
    res.fluxes = net.net_fluxes(model, directed);
    res.biomass = res.fluxes[bio];
    for (std::size_t i = 0; i < model.reactions.size(); ++i) {
      if (model.reactions[i].gene_indicated || static_cast<int>(i) == bio)
        res.y[i] = 1;
      else
        res.y[i] = incumbent_primal[y_col[i]] > 0.5 ? 1 : 0;
    }
  }
  return res;
}

struct BaselineResult {
  AvailabilityState final_state;
  Evaluation eval;
  std::map<std::string, double> predictions;
  std::vector<std::set<std::string>> lock_history;  // locked set after each medium
  bool truncated = false;
};

namespace detail {

inline std::vector<std::size_t> medium_order(const std::vector<MediumSpec>& media,
                                             const std::vector<std::string>& explicit_order) {
  std::vector<std::size_t> order(media.size());
  std::iota(order.begin(), order.end(), 0);
  if (!explicit_order.empty()) {
    order.clear();
    for (const auto& id : explicit_order)
      for (std::size_t k = 0; k < media.size(); ++k)
        if (media[k].id == id) order.push_back(k);
    return order;
  }
  // Decreasing growth score; ties broken by id, lexicographic.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (media[a].growth_score != media[b].growth_score)
      return media[a].growth_score > media[b].growth_score;
    return media[a].id < media[b].id;
  });
  return order;
}

inline std::vector<double> starting_costs(const MetabolicModel& model,
                                          const SequentialConfig& cfg) {
  std::vector<double> costs(model.reactions.size());
  int bio = model.biomass_index();
  for (std::size_t i = 0; i < model.reactions.size(); ++i) {
    const auto& r = model.reactions[i];
    costs[i] = (r.gene_indicated || static_cast<int>(i) == bio)
                   ? 1.0
                   : std::max(r.cost, cfg.min_other_cost);
  }
  return costs;
}

// Shared outer loop; `selected` must return the per-medium selected reaction
// indices (non-gene reactions picked by the inner subproblem).
template <typename PerMedium>
BaselineResult run_sequential(const MetabolicModel& model,
                              const PreprocessResult& prep,
                              const SequentialConfig& cfg,
                              const std::vector<std::string>& explicit_order,
                              PerMedium per_medium) {
  const auto& media = prep.retained_media;
  std::vector<double> costs = starting_costs(model, cfg);
  std::set<std::string> locked;
  BaselineResult res;
  int bio = model.biomass_index();

  for (std::size_t k : medium_order(media, explicit_order)) {
    std::vector<int> selected = per_medium(media[k], costs, res);
    for (int r : selected) {
      if (model.reactions[r].gene_indicated || r == bio) continue;
      if (locked.insert(model.reactions[r].id).second)
        costs[r] = cfg.lock_in_cost;
    }
    res.lock_history.push_back(locked);
  }

  // Final GEM: gene-indicated plus everything selected in at least one medium.
  res.final_state.available.assign(model.reactions.size(), 0);
  res.final_state.eval_costs = costs;
  for (std::size_t i = 0; i < model.reactions.size(); ++i)
    if (model.reactions[i].gene_indicated || locked.count(model.reactions[i].id))
      res.final_state.available[i] = 1;

  std::vector<FluxSolution> sols =
      solve_all_media(model, media, res.final_state, prep.alpha);
  for (const auto& s : sols) res.predictions[s.medium_id] = s.biomass;
  res.eval = evaluate_predictions(res.predictions, prep.targets, cfg.betas,
                                  prep.c0, &sols, &model);
  return res;
}

}  // namespace detail

inline BaselineResult run_lp_seq(const MetabolicModel& model,
                                 const PreprocessResult& prep,
                                 const SequentialConfig& cfg = {},
                                 const std::vector<std::string>& explicit_order = {}) {
  AvailabilityState all = AvailabilityState::all_available(model);
  int bio = model.biomass_index();
  return detail::run_sequential(
      model, prep, cfg, explicit_order,
      [&](const MediumSpec& medium, const std::vector<double>& costs,
          BaselineResult&) {
        AvailabilityState state = all;
        state.eval_costs = costs;
        FluxSolution sol = solve_pfba(model, medium, state, prep.alpha.at(medium.id));
        std::vector<int> used;
        for (std::size_t i = 0; i < model.reactions.size(); ++i)
          if (static_cast<int>(i) != bio &&
              std::abs(sol.fluxes[i]) > kFluxUseThreshold)
            used.push_back(static_cast<int>(i));
        return used;
      });
}

inline BaselineResult run_mip_seq(const MetabolicModel& model,
                                  const PreprocessResult& prep,
                                  const SequentialConfig& cfg = {},
                                  const std::vector<std::string>& explicit_order = {}) {
  return detail::run_sequential(
      model, prep, cfg, explicit_order,
      [&](const MediumSpec& medium, const std::vector<double>& costs,
          BaselineResult& res) {
        MilpResult milp =
            solve_gf_milp(model, medium, costs, prep.alpha.at(medium.id), cfg);
        if (milp.truncated) res.truncated = true;
        std::vector<int> selected;
        for (std::size_t i = 0; i < milp.y.size(); ++i)
          if (milp.y[i] && !model.reactions[i].gene_indicated)
            selected.push_back(static_cast<int>(i));
        return selected;
      });
}

}  // namespace multifac

#endif  // MULTIFAC_BASELINES_HPP
