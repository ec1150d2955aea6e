// Run preprocessing shared by the search and the sequential baselines:
// per-medium alpha calibration with everything available, removal of media
// that can never produce biomass, target clamping to the achievable maximum,
// and the baseline cost C_0 used for cost normalisation.
#ifndef MULTIFAC_PREPROCESS_HPP
#define MULTIFAC_PREPROCESS_HPP

#include <future>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "multifac/model.hpp"
#include "multifac/objectives.hpp"
#include "multifac/pfba.hpp"

namespace multifac {

struct AllMediaInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreprocessResult {
  std::vector<MediumSpec> retained_media;
  std::map<std::string, double> alpha;        // frozen alpha^k
  std::map<std::string, double> max_biomass;  // upper bound under exclusions
  double c0 = 1.0;
  TargetSet targets;
};

// Solve all media for one availability state, fanned out over `threads`
// workers. Results are keyed by position, so the outcome is independent of
// scheduling order.
inline std::vector<FluxSolution> solve_all_media(
    const MetabolicModel& model, const std::vector<MediumSpec>& media,
    const AvailabilityState& state, const std::map<std::string, double>& alpha,
    int threads = 1) {
  std::vector<FluxSolution> out(media.size());
  auto work = [&](std::size_t k) {
    out[k] = solve_pfba(model, media[k], state, alpha.at(media[k].id));
  };
  if (threads <= 1 || media.size() <= 1) {
    for (std::size_t k = 0; k < media.size(); ++k) work(k);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t k = 0; k < media.size(); ++k)
      jobs.push_back(std::async(std::launch::async, work, k));
    for (auto& j : jobs) j.get();
  }
  return out;
}

inline PreprocessResult preprocess(const MetabolicModel& model,
                                   const std::vector<MediumSpec>& media,
                                   const AlphaSchedule& schedule = {},
                                   const std::string& reference_override = "") {
  PreprocessResult res;
  AvailabilityState all = AvailabilityState::all_available(model);
  for (const auto& medium : media) {
    CalibrationResult cal = calibrate_alpha(model, medium, all, schedule);
    if (cal.max_biomass <= kGrowthThreshold) continue;  // never produces biomass
    res.retained_media.push_back(medium);
    res.alpha[medium.id] = cal.alpha_k;
    res.max_biomass[medium.id] = cal.max_biomass;
  }
  if (res.retained_media.empty())
    throw AllMediaInfeasible("no medium can produce biomass");

  // Reference biomass: achievable maximum on the reference medium.
  TargetSet provisional = compute_targets(res.retained_media, 1.0, reference_override);
  double ref_biomass = res.max_biomass.at(provisional.reference_medium);
  res.targets = compute_targets(res.retained_media, ref_biomass,
                                provisional.reference_medium);
  // Clamp targets down to what is achievable with everything available.
  for (auto& [medium, target] : res.targets.targets) {
    double cap = res.max_biomass.at(medium);
    if (target > cap) target = cap;
  }

  // C_0 from the all-available pFBA(c = RC) run at the frozen alphas.
  std::vector<FluxSolution> sols =
      solve_all_media(model, res.retained_media, all, res.alpha);
  res.c0 = used_cost(sols, model).total;
  if (res.c0 <= 0.0) res.c0 = 1.0;
  return res;
}

}  // namespace multifac

#endif  // MULTIFAC_PREPROCESS_HPP
