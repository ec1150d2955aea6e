// Objective components for a candidate GEM: used-reaction cost, growth match
// error, Kendall tau-b rank agreement, RMS error against calibrated targets,
// MAPE as a reporting metric, scalarisation and Pareto dominance.
#ifndef MULTIFAC_OBJECTIVES_HPP
#define MULTIFAC_OBJECTIVES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "multifac/model.hpp"
#include "multifac/pfba.hpp"

namespace multifac {

struct TargetSet {
  std::string reference_medium;  // medium l
  double reference_biomass = 0.0;
  std::map<std::string, double> targets;         // medium id -> target biomass
  std::map<std::string, double> scores;          // medium id -> G^k
  std::map<std::string, GrowthClass> growth_classes;
};

struct Betas {
  double cost = 1.0;
  double gme = 1000.0;
  double tau = 10.0;
  double rms = 1.0;

  static Betas regime(const std::string& name) {
    Betas b;
    if (name == "cost/error") {
      b.cost = 100.0;
      b.rms = 1.0;
    } else if (name == "error/cost") {
      b.cost = 1.0;
      b.rms = 100.0;
    } else if (name == "cost+error") {
      b.cost = 1.0;
      b.rms = 1.0;
    } else {
      throw std::invalid_argument("unknown objective regime: " + name);
    }
    return b;
  }
};

struct Evaluation {
  double cost_raw = 0.0;   // C_u
  double cost = 0.0;       // C = C_u / C_0
  int gme = 0;
  double tau = 0.0;
  double tau_prime = 1.0;  // 1 - tau
  bool tau_degenerate = false;
  double rms = 0.0;
  double mape = 0.0;       // percent; reporting only
  double objective = 0.0;
  int used_reactions = 0;

  std::array<double, 4> components() const {
    return {cost, static_cast<double>(gme), tau_prime, rms};
  }
};

struct ZeroReferenceScore : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Target biomass fluxes proportional to growth scores, exact at the
// reference medium (the one with the largest score unless overridden).
inline TargetSet compute_targets(const std::vector<MediumSpec>& media,
                                 double reference_biomass,
                                 const std::string& reference_override = "") {
  TargetSet ts;
  ts.reference_biomass = reference_biomass;
  const MediumSpec* ref = nullptr;
  for (const auto& m : media) {
    if (!reference_override.empty()) {
      if (m.id == reference_override) ref = &m;
    } else if (!ref || m.growth_score > ref->growth_score ||
               (m.growth_score == ref->growth_score && m.id < ref->id)) {
      ref = &m;
    }
  }
  if (!ref) throw std::invalid_argument("no media given");
  if (ref->growth_score <= 0.0)
    throw ZeroReferenceScore("reference medium '" + ref->id +
                             "' has zero growth score");
  ts.reference_medium = ref->id;
  for (const auto& m : media) {
    ts.targets[m.id] = m.growth_score * reference_biomass / ref->growth_score;
    ts.scores[m.id] = m.growth_score;
    ts.growth_classes[m.id] = m.growth_class;
  }
  return ts;
}

enum class GmeRule {
  Symmetric,          // any growth/no-growth disagreement counts
  FalseNegativeOnly,  // only observed-growth media predicted as no-growth
};

inline int growth_match_error(const std::map<std::string, double>& predictions,
                              const TargetSet& targets,
                              double growth_threshold = kGrowthThreshold,
                              GmeRule rule = GmeRule::Symmetric) {
  int mismatches = 0;
  for (const auto& [medium, cls] : targets.growth_classes) {
    auto it = predictions.find(medium);
    if (it == predictions.end())
      throw std::invalid_argument("missing prediction for medium " + medium);
    bool predicted_growth = it->second > growth_threshold;
    bool observed_growth = cls == GrowthClass::Growth;
    if (rule == GmeRule::Symmetric) {
      if (predicted_growth != observed_growth) ++mismatches;
    } else {
      if (observed_growth && !predicted_growth) ++mismatches;
    }
  }
  return mismatches;
}

struct KendallResult {
  double tau = 0.0;
  double tau_prime = 1.0;
  bool degenerate = false;
};

// Kendall tau-b (tie corrected). A constant vector has no defined ranking;
// reported as tau = 0 with the degenerate flag set.
inline KendallResult kendall_tau(const std::vector<double>& predicted,
                                 const std::vector<double>& scores) {
  if (predicted.size() != scores.size() || predicted.size() < 2)
    throw std::invalid_argument("kendall_tau needs two same-length vectors");
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  std::size_t n = predicted.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = predicted[i] - predicted[j];
      double dy = scores[i] - scores[j];
      if (dx == 0.0 && dy == 0.0) {
        ++ties_x;
        ++ties_y;
      } else if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  long long n0 = static_cast<long long>(n) * (n - 1) / 2;
  double denom = std::sqrt(static_cast<double>(n0 - ties_x)) *
                 std::sqrt(static_cast<double>(n0 - ties_y));
  KendallResult res;
  if (denom == 0.0) {
    res.degenerate = true;
    res.tau = 0.0;
  } else {
    res.tau = static_cast<double>(concordant - discordant) / denom;
  }
  res.tau_prime = 1.0 - res.tau;
  return res;
}

inline double rms_error(const std::map<std::string, double>& predictions,
                        const TargetSet& targets) {
  if (targets.targets.empty()) throw std::invalid_argument("no media");
  double sum = 0.0;
  for (const auto& [medium, target] : targets.targets) {
    double pred = predictions.at(medium);
    sum += (target - pred) * (target - pred);
  }
  return std::sqrt(sum / static_cast<double>(targets.targets.size()));
}

// Percent error against the target; media with zero target are skipped.
inline double mape(const std::map<std::string, double>& predictions,
                   const TargetSet& targets) {
  double sum = 0.0;
  int count = 0;
  for (const auto& [medium, target] : targets.targets) {
    if (target <= 0.0) continue;
    sum += std::abs(target - predictions.at(medium)) / target;
    ++count;
  }
  return count == 0 ? 0.0 : 100.0 * sum / count;
}

struct UsedCost {
  double total = 0.0;  // C_u, in original RC units
  std::set<std::string> used;
};

inline UsedCost used_cost(const std::vector<FluxSolution>& solutions,
                          const MetabolicModel& model,
                          double flux_threshold = kFluxUseThreshold) {
  UsedCost out;
  int bio = model.biomass_index();
  for (std::size_t i = 0; i < model.reactions.size(); ++i) {
    if (static_cast<int>(i) == bio) continue;
    double max_flux = 0.0;
    for (const auto& sol : solutions)
      max_flux = std::max(max_flux, std::abs(sol.fluxes[i]));
    if (max_flux > flux_threshold) {
      out.total += model.reactions[i].cost;
      out.used.insert(model.reactions[i].id);
    }
  }
  return out;
}

inline double scalarize(const std::array<double, 4>& components, const Betas& b) {
  return b.cost * components[0] + b.gme * components[1] +
         b.tau * components[2] + b.rms * components[3];
}

// Strict Pareto dominance over (cost, gme, tau', rms).
inline bool dominates(const Evaluation& a, const Evaluation& b) {
  auto ca = a.components(), cb = b.components();
  bool strictly_better = false;
  for (int i = 0; i < 4; ++i) {
    if (ca[i] > cb[i]) return false;
    if (ca[i] < cb[i]) strictly_better = true;
  }
  return strictly_better;
}

// Full evaluation from per-medium predictions plus (optionally) the flux
// solutions that produced them. cost_raw/cost are zero when `solutions` is
// null (prediction-only scoring, e.g. published tables).
inline Evaluation evaluate_predictions(
    const std::map<std::string, double>& predictions, const TargetSet& targets,
    const Betas& betas, double c0 = 1.0,
    const std::vector<FluxSolution>* solutions = nullptr,
    const MetabolicModel* model = nullptr,
    double growth_threshold = kGrowthThreshold) {
  Evaluation ev;
  if (solutions && model) {
    UsedCost uc = used_cost(*solutions, *model);
    ev.cost_raw = uc.total;
    ev.cost = c0 > 0.0 ? uc.total / c0 : uc.total;
    ev.used_reactions = static_cast<int>(uc.used.size());
  }
  ev.gme = growth_match_error(predictions, targets, growth_threshold);
  std::vector<double> pred_vec, score_vec;
  for (const auto& [medium, score] : targets.scores) {
    pred_vec.push_back(predictions.at(medium));
    score_vec.push_back(score);
  }
  if (pred_vec.size() >= 2) {
    KendallResult kt = kendall_tau(pred_vec, score_vec);
    ev.tau = kt.tau;
    ev.tau_prime = kt.tau_prime;
    ev.tau_degenerate = kt.degenerate;
  }
  ev.rms = rms_error(predictions, targets);
  ev.mape = mape(predictions, targets);
  ev.objective = scalarize(ev.components(), betas);
  return ev;
}

}  // namespace multifac

#endif  // MULTIFAC_OBJECTIVES_HPP
