// Core domain types: metabolic networks, media, availability decisions and
// the reversible-reaction split used by every LP built downstream.
#ifndef MULTIFAC_MODEL_HPP
#define MULTIFAC_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace multifac {

// Secretion cap for metabolites absent from a medium's demand map.
inline constexpr double kDefaultDemandCap = 1e4;

// Absolute tolerance for comparing stoichiometric coefficients.
inline constexpr double kStoichTol = 1e-9;

// Predicted growth iff biomass flux exceeds this.
inline constexpr double kGrowthThreshold = 1e-6;

// A reaction is "used" when some medium carries at least this much flux.
inline constexpr double kFluxUseThreshold = 1e-7;

enum class GrowthClass { Growth, NoGrowth };

struct Metabolite {
  std::string id;
  std::string name;
  int carbon_count = 0;  // atoms of carbon, from the chemical formula
};

struct Reaction {
  std::string id;
  // metabolite id -> signed coefficient; negative = reactant, positive = product
  std::map<std::string, double> stoich;
  bool reversible = false;
  bool gene_indicated = false;
  double cost = 1.0;              // RC_i, taxonomic cost; >= 1, gene-indicated == 1
  double flux_upper_bound = 1000.0;  // U_i, mmol/gDW/h
};

struct MetabolicModel {
  std::vector<Metabolite> metabolites;
  std::vector<Reaction> reactions;
  std::string biomass_reaction_id;

  // Lookup maps are rebuilt lazily; call index() after mutating the lists.
  void index() {
    met_index_.clear();
    rxn_index_.clear();
    for (std::size_t i = 0; i < metabolites.size(); ++i)
      met_index_.emplace(metabolites[i].id, static_cast<int>(i));
    for (std::size_t i = 0; i < reactions.size(); ++i)
      rxn_index_.emplace(reactions[i].id, static_cast<int>(i));
  }

  int metabolite_index(const std::string& id) const {
    auto it = met_index_.find(id);
    return it == met_index_.end() ? -1 : it->second;
  }
  int reaction_index(const std::string& id) const {
    auto it = rxn_index_.find(id);
    return it == rxn_index_.end() ? -1 : it->second;
  }
  int biomass_index() const { return reaction_index(biomass_reaction_id); }

 private:
  std::unordered_map<std::string, int> met_index_;
  std::unordered_map<std::string, int> rxn_index_;
};

struct MediumSpec {
  std::string id;
  std::string carbon_source;                 // metabolite id
  std::map<std::string, double> supply;      // S_j >= 0; absent -> 0
  std::map<std::string, double> demand;      // D_j >= 0; absent -> kDefaultDemandCap
  double growth_score = 0.0;                 // G^k
  GrowthClass growth_class = GrowthClass::NoGrowth;

  double supply_of(const std::string& met) const {
    auto it = supply.find(met);
    return it == supply.end() ? 0.0 : it->second;
  }
  double demand_of(const std::string& met) const {
    auto it = demand.find(met);
    return it == demand.end() ? kDefaultDemandCap : it->second;
  }
};

// Outer decision state: availability bit per reaction plus the evaluation
// cost vector c (starts at RC, dragged to 1 by the make-unit operator).
struct AvailabilityState {
  std::vector<std::uint8_t> available;
  std::vector<double> eval_costs;

  static AvailabilityState all_available(const MetabolicModel& model) {
    AvailabilityState s;
    s.available.assign(model.reactions.size(), 1);
    s.eval_costs.resize(model.reactions.size());
    for (std::size_t i = 0; i < model.reactions.size(); ++i)
      s.eval_costs[i] = model.reactions[i].cost;
    return s;
  }

  int excluded_count(const MetabolicModel& model) const {
    int n = 0;
    for (std::size_t i = 0; i < available.size(); ++i)
      if (!available[i] && !model.reactions[i].gene_indicated) ++n;
    return n;
  }
};

struct Violation {
  std::string entity;
  std::string rule;  // e.g. "DuplicateReactionId", "CostBelowOne"
};

inline std::vector<Violation> validate_model(const MetabolicModel& model) {
  std::vector<Violation> out;
  {
    std::unordered_map<std::string, int> seen;
    for (const auto& m : model.metabolites) {
      if (m.id.empty()) out.push_back({m.name, "EmptyMetaboliteId"});
      if (++seen[m.id] == 2) out.push_back({m.id, "DuplicateMetaboliteId"});
      if (m.carbon_count < 0) out.push_back({m.id, "NegativeCarbonCount"});
    }
  }
  std::unordered_map<std::string, int> rxn_seen;
  for (const auto& r : model.reactions) {
    if (r.id.empty()) out.push_back({r.id, "EmptyReactionId"});
    if (++rxn_seen[r.id] == 2) out.push_back({r.id, "DuplicateReactionId"});
    if (r.stoich.empty()) out.push_back({r.id, "EmptyStoichiometry"});
    for (const auto& [met, coef] : r.stoich) {
      (void)coef;
      if (model.metabolite_index(met) < 0)
        out.push_back({r.id, "UnknownMetabolite:" + met});
    }
    if (r.cost < 1.0) out.push_back({r.id, "CostBelowOne"});
    if (r.gene_indicated && std::abs(r.cost - 1.0) > kStoichTol)
      out.push_back({r.id, "GeneIndicatedCostNotOne"});
    if (!(r.flux_upper_bound > 0.0))
      out.push_back({r.id, "NonPositiveFluxBound"});
  }
  int bio = model.biomass_index();
  if (bio < 0) {
    out.push_back({model.biomass_reaction_id, "MissingBiomassReaction"});
  } else if (!model.reactions[bio].gene_indicated) {
    out.push_back({model.biomass_reaction_id, "BiomassNotGeneIndicated"});
  }
  return out;
}

// Directed view of the network: one column per irreversible reaction, two per
// reversible one. Unavailable reactions keep their columns with upper bound 0
// so the LP shape (and any warm-start basis) survives availability toggles.
struct ExpandedNetwork {
  struct Column {
    int reaction;   // parent reaction index
    bool forward;   // false = reverse direction of a reversible reaction
    double upper;   // 0 when the parent is unavailable
    double cost;    // parent's evaluation cost (both directions pay in full)
  };
  std::vector<Column> columns;
  int biomass_column = -1;
  std::vector<int> first_column;  // reaction index -> first column index

  // Net flux per parent reaction from a directed flux vector.
  std::vector<double> net_fluxes(const MetabolicModel& model,
                                 const std::vector<double>& directed) const {
    std::vector<double> net(model.reactions.size(), 0.0);
    for (std::size_t c = 0; c < columns.size(); ++c)
      net[columns[c].reaction] += columns[c].forward ? directed[c] : -directed[c];
    return net;
  }
};

inline ExpandedNetwork expand(const MetabolicModel& model,
                              const AvailabilityState& state) {
  if (state.available.size() != model.reactions.size() ||
      state.eval_costs.size() != model.reactions.size())
    throw std::invalid_argument("availability state does not match model");
  ExpandedNetwork net;
  net.first_column.resize(model.reactions.size());
  int bio = model.biomass_index();
  for (std::size_t i = 0; i < model.reactions.size(); ++i) {
    const Reaction& r = model.reactions[i];
    double ub = state.available[i] ? r.flux_upper_bound : 0.0;
    double c = state.eval_costs[i];
    net.first_column[i] = static_cast<int>(net.columns.size());
    if (static_cast<int>(i) == bio) net.biomass_column = net.first_column[i];
    net.columns.push_back({static_cast<int>(i), true, ub, c});
    // The biomass reaction is irreversible by fiat.
    if (r.reversible && static_cast<int>(i) != bio)
      net.columns.push_back({static_cast<int>(i), false, ub, c});
  }
  return net;
}

inline const char* to_string(GrowthClass g) {
  return g == GrowthClass::Growth ? "Growth" : "NoGrowth";
}

}  // namespace multifac

#endif  // MULTIFAC_MODEL_HPP
