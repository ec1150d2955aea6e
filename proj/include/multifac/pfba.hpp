// Cost-weighted parsimonious FBA per medium: LP construction, alpha
// calibration against the ladder, and carbon-balance runaway detection.
#ifndef MULTIFAC_PFBA_HPP
#define MULTIFAC_PFBA_HPP

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "multifac/lp.hpp"
#include "multifac/model.hpp"

namespace multifac {

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlphaSchedule {
  std::vector<double> alpha_values{1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  double stabilization_tol = 1e-4;
};

struct FluxSolution {
  std::string medium_id;
  std::vector<double> fluxes;  // net flux per reaction index
  double biomass = 0.0;        // x_0^k
  double alpha_used = 1.0;
  LpStatus status = LpStatus::Optimal;
  bool runaway = false;
};

// Per-medium warm-start cache; one owner per solve stream, keyed by medium id.
struct WarmStartCache {
  std::map<std::string, Basis> bases;
};

inline LinearProgram build_pfba_lp(const MetabolicModel& model,
                                   const ExpandedNetwork& net,
                                   const MediumSpec& medium, double alpha) {
  LinearProgram lp;
  int ncols = static_cast<int>(net.columns.size());
  lp.objective.resize(ncols);
  lp.col_lo.assign(ncols, 0.0);
  lp.col_hi.resize(ncols);
  for (int c = 0; c < ncols; ++c) {
    const auto& col = net.columns[c];
    lp.col_hi[c] = col.upper;
    lp.objective[c] = (c == net.biomass_column) ? -alpha : col.cost;
  }
  int nmets = static_cast<int>(model.metabolites.size());
  lp.rows.resize(nmets);
  lp.row_lo.resize(nmets);
  lp.row_hi.resize(nmets);
  for (int j = 0; j < nmets; ++j) {
    const std::string& met = model.metabolites[j].id;
    lp.row_lo[j] = -medium.supply_of(met);
    lp.row_hi[j] = medium.demand_of(met);
  }
  for (int c = 0; c < ncols; ++c) {
    const Reaction& r = model.reactions[net.columns[c].reaction];
    double sign = net.columns[c].forward ? 1.0 : -1.0;
    for (const auto& [met, coef] : r.stoich) {
      int j = model.metabolite_index(met);
      lp.rows[j].push_back({c, sign * coef});
    }
  }
  return lp;
}

inline FluxSolution solve_pfba(const MetabolicModel& model,
                               const MediumSpec& medium,
                               const AvailabilityState& state, double alpha,
                               WarmStartCache* cache = nullptr) {
  ExpandedNetwork net = expand(model, state);
  LinearProgram lp = build_pfba_lp(model, net, medium, alpha);
  const Basis* warm = nullptr;
  if (cache) {
    auto it = cache->bases.find(medium.id);
    if (it != cache->bases.end()) warm = &it->second;
  }
  LpSolution sol = solve(lp, warm);
  if (sol.status != LpStatus::Optimal) {
    if (sol.status == LpStatus::Infeasible)
      throw SolveError("pFBA infeasible on medium '" + medium.id +
                       "': inconsistent model data");
    throw SolveError("pFBA solve failed on medium '" + medium.id + "'");
  }
  if (cache) cache->bases[medium.id] = sol.basis;
  FluxSolution out;
  out.medium_id = medium.id;
  out.fluxes = net.net_fluxes(model, sol.primal);
  out.biomass = out.fluxes[model.biomass_index()];
  out.alpha_used = alpha;
  out.status = sol.status;
  return out;
}

// Carbon carried into biomass per unit biomass flux, from the biomass
// reaction's reactant side.
inline double biomass_carbon_per_unit(const MetabolicModel& model) {
  const Reaction& bio = model.reactions[model.biomass_index()];
  double carbon = 0.0;
  for (const auto& [met, coef] : bio.stoich) {
    if (coef < 0)
      carbon += -coef * model.metabolites[model.metabolite_index(met)].carbon_count;
  }
  return carbon;
}

inline bool detect_runaway(const FluxSolution& solution, const MediumSpec& medium,
                           const MetabolicModel& model, double epsilon = 1e-3) {
  double capacity = 0.0;
  for (const auto& [met, s] : medium.supply) {
    int j = model.metabolite_index(met);
    if (j >= 0) capacity += s * model.metabolites[j].carbon_count;
  }
  double biomass_carbon = solution.biomass * biomass_carbon_per_unit(model);
  return biomass_carbon > (1.0 + epsilon) * capacity + kGrowthThreshold;
}

struct CalibrationResult {
  double alpha_k = 1.0;
  double max_biomass = 0.0;
};

// Walk the alpha ladder until the biomass flux stabilises; if it never does,
// the ladder maximum is used.
inline CalibrationResult calibrate_alpha(const MetabolicModel& model,
                                         const MediumSpec& medium,
                                         const AvailabilityState& state,
                                         const AlphaSchedule& schedule = {},
                                         WarmStartCache* cache = nullptr) {
  if (schedule.alpha_values.empty())
    throw std::invalid_argument("empty alpha schedule");
  double prev = -1.0, prev_alpha = 0.0;
  CalibrationResult res;
  for (std::size_t i = 0; i < schedule.alpha_values.size(); ++i) {
    double alpha = schedule.alpha_values[i];
    FluxSolution sol = solve_pfba(model, medium, state, alpha, cache);
    res.alpha_k = alpha;
    res.max_biomass = sol.biomass;
    if (i > 0) {
      double scale = std::max(std::abs(prev), 1e-12);
      // Zero-to-zero never counts as stabilised: a larger alpha may still
      // unlock biomass, and zero at the ladder maximum means no growth.
      // On stabilisation, the first alpha of the agreeing pair is returned.
      if (std::abs(sol.biomass - prev) / scale < schedule.stabilization_tol &&
          !(prev == 0.0 && sol.biomass == 0.0)) {
        res.alpha_k = prev_alpha;
        res.max_biomass = prev;
        return res;
      }
    }
    prev = sol.biomass;
    prev_alpha = alpha;
  }
  return res;
}

}  // namespace multifac

#endif  // MULTIFAC_PFBA_HPP
