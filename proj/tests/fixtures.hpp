// Shared fixture builders and loaders for the test suites.
#ifndef MULTIFAC_TESTS_FIXTURES_HPP
#define MULTIFAC_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multifac/json_io.hpp"
#include "multifac/model.hpp"
#include "multifac/objectives.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(MULTIFAC_DATA_DIR) + "/" + name;
}

inline multifac::MetabolicModel load_fixture_model(const std::string& name) {
  return multifac::load_model(data_path(name));
}

inline std::vector<multifac::MediumSpec> load_fixture_media(const std::string& name) {
  return multifac::load_media(data_path(name));
}

// Published-data tables shipped as CSV: medium,score,class,target,prediction.
struct TableRow {
  std::string medium;
  double score = 0.0;
  multifac::GrowthClass cls = multifac::GrowthClass::Growth;
  double target = 0.0;
  double prediction = 0.0;
};

inline std::vector<TableRow> load_table(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw std::runtime_error("cannot open " + data_path(name));
  std::vector<TableRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    TableRow row;
    std::getline(ls, row.medium, ',');
    std::getline(ls, field, ',');
    row.score = std::stod(field);
    std::getline(ls, field, ',');
    row.cls = multifac::parse_growth_class(field);
    std::getline(ls, field, ',');
    row.target = std::stod(field);
    std::getline(ls, field, ',');
    row.prediction = std::stod(field);
    rows.push_back(row);
  }
  return rows;
}

inline multifac::TargetSet table_targets(const std::vector<TableRow>& rows) {
  multifac::TargetSet ts;
  for (const auto& r : rows) {
    ts.targets[r.medium] = r.target;
    ts.scores[r.medium] = r.score;
    ts.growth_classes[r.medium] = r.cls;
  }
  return ts;
}

inline std::map<std::string, double> table_predictions(
    const std::vector<TableRow>& rows) {
  std::map<std::string, double> p;
  for (const auto& r : rows) p[r.medium] = r.prediction;
  return p;
}

// ---- in-code models -------------------------------------------------------

inline multifac::Metabolite met(const std::string& id, int carbon) {
  multifac::Metabolite m;
  m.id = id;
  m.name = id;
  m.carbon_count = carbon;
  return m;
}

inline multifac::Reaction rxn(const std::string& id,
                              std::map<std::string, double> stoich,
                              bool gene = true, double cost = 1.0,
                              double ub = 1000.0, bool reversible = false) {
  multifac::Reaction r;
  r.id = id;
  r.stoich = std::move(stoich);
  r.gene_indicated = gene;
  r.cost = cost;
  r.flux_upper_bound = ub;
  r.reversible = reversible;
  return r;
}

inline multifac::MediumSpec medium(const std::string& id,
                                   std::map<std::string, double> supply,
                                   double score = 1.0,
                                   multifac::GrowthClass cls =
                                       multifac::GrowthClass::Growth) {
  multifac::MediumSpec m;
  m.id = id;
  m.supply = std::move(supply);
  if (!m.supply.empty()) m.carbon_source = m.supply.begin()->first;
  m.growth_score = score;
  m.growth_class = cls;
  return m;
}

// Two equal-yield routes S -> X with different costs; pFBA must route through
// the cheaper one.
inline multifac::MetabolicModel cheap_expensive_model() {
  multifac::MetabolicModel m;
  m.metabolites = {met("S", 1), met("X", 1)};
  m.reactions = {rxn("cheap", {{"S", -1}, {"X", 1}}, false, 2.0),
                 rxn("expensive", {{"S", -1}, {"X", 1}}, false, 5.0),
                 rxn("biomass", {{"X", -1}})};
  m.biomass_reaction_id = "biomass";
  m.index();
  return m;
}

// A 2-cycle that manufactures carbon: P -> 2Q, Q -> P. With the loop enabled,
// biomass carbon exceeds the supplied carbon by an order of magnitude.
inline multifac::MetabolicModel runaway_loop_model() {
  multifac::MetabolicModel m;
  m.metabolites = {met("seed", 1), met("P", 1), met("Q", 1)};
  m.reactions = {rxn("r_seed", {{"seed", -1}, {"P", 1}}),
                 rxn("r_amp", {{"P", -1}, {"Q", 2}}, false, 1.5, 10.0),
                 rxn("r_back", {{"Q", -1}, {"P", 1}}, false, 1.5),
                 rxn("biomass", {{"Q", -1}})};
  m.biomass_reaction_id = "biomass";
  m.index();
  return m;
}

inline multifac::MediumSpec runaway_medium() {
  return medium("seeded", {{"seed", 0.1}}, 10.0);
}

// Biomass directly bounded by its own flux cap.
inline multifac::MetabolicModel single_reaction_model(double biomass_ub = 2.0) {
  multifac::MetabolicModel m;
  m.metabolites = {met("S", 1)};
  m.reactions = {rxn("biomass", {{"S", -1}}, true, 1.0, biomass_ub)};
  m.biomass_reaction_id = "biomass";
  m.index();
  return m;
}

// One-step yield 0.9 vs two-step yield 1.0: at large alpha the higher-yield
// path wins despite the extra flux cost.
inline multifac::MetabolicModel yield_choice_model() {
  multifac::MetabolicModel m;
  m.metabolites = {met("S", 1), met("M", 1), met("X", 1)};
  m.reactions = {rxn("direct", {{"S", -1}, {"X", 0.9}}),
                 rxn("step1", {{"S", -1}, {"M", 1}}),
                 rxn("step2", {{"M", -1}, {"X", 1}}),
                 rxn("biomass", {{"X", -1}})};
  m.biomass_reaction_id = "biomass";
  m.index();
  return m;
}

// A reversible conversion used in its forward direction.
inline multifac::MetabolicModel reversible_model() {
  multifac::MetabolicModel m;
  m.metabolites = {met("A", 1), met("B", 1)};
  m.reactions = {rxn("conv", {{"A", -1}, {"B", 1}}, false, 1.0, 1000.0, true),
                 rxn("biomass", {{"B", -1}})};
  m.biomass_reaction_id = "biomass";
  m.index();
  return m;
}

// Excess supply with a biomass cap: parsimony leaves the surplus untouched.
inline multifac::MetabolicModel capped_chain_model() {
  multifac::MetabolicModel m;
  m.metabolites = {met("S", 1), met("M", 1), met("X", 1)};
  m.reactions = {rxn("r1", {{"S", -1}, {"M", 1}}),
                 rxn("r2", {{"M", -1}, {"X", 1}}),
                 rxn("biomass", {{"X", -1}}, true, 1.0, 1.0)};
  m.biomass_reaction_id = "biomass";
  m.index();
  return m;
}

// Two media, two sources, shared intermediate Y; the cheapest per-medium
// route depends on what earlier media locked in.
inline multifac::MetabolicModel order_sensitivity_model() {
  multifac::MetabolicModel m;
  m.metabolites = {met("sA", 1), met("sB", 1), met("Y", 1), met("X", 1)};
  m.reactions = {rxn("rA", {{"sA", -1}, {"X", 1}}, false, 5.0),
                 rxn("rA2", {{"sA", -1}, {"Y", 1}}, false, 1.5),
                 rxn("rY", {{"Y", -1}, {"X", 1}}, false, 2.5),
                 rxn("rB1", {{"sB", -1}, {"X", 1}}, false, 4.0),
                 rxn("rB2", {{"sB", -1}, {"Y", 1}}, false, 2.0),
                 rxn("biomass", {{"X", -1}})};
  m.biomass_reaction_id = "biomass";
  m.index();
  return m;
}

inline std::vector<multifac::MediumSpec> order_sensitivity_media() {
  return {medium("mA", {{"sA", 1.0}}, 10.0), medium("mB", {{"sB", 1.0}}, 5.0)};
}

// Single-medium gap-filling instance with 6 candidates: four direct routes of
// increasing yield and a two-step unit-yield chain.
inline multifac::MetabolicModel milp_model() {
  multifac::MetabolicModel m;
  m.metabolites = {met("S", 1), met("M", 1), met("X", 1)};
  m.reactions = {rxn("k1", {{"S", -1}, {"X", 0.5}}, false, 3.0),
                 rxn("k2", {{"S", -1}, {"X", 0.7}}, false, 2.0),
                 rxn("k3", {{"S", -1}, {"X", 0.9}}, false, 8.0),
                 rxn("k4", {{"S", -1}, {"X", 1.0}}, false, 12.0),
                 rxn("k5", {{"S", -1}, {"M", 1}}, false, 1.0),
                 rxn("k6", {{"M", -1}, {"X", 1}}, false, 1.0),
                 rxn("biomass", {{"X", -1}})};
  m.biomass_reaction_id = "biomass";
  m.index();
  return m;
}

inline multifac::MediumSpec milp_medium() {
  return medium("m", {{"S", 1.0}}, 1.0);
}

// Tight flux caps make the root LP relaxation integral.
inline multifac::MetabolicModel milp_integral_model() {
  multifac::MetabolicModel m;
  m.metabolites = {met("S", 1), met("M", 1), met("X", 1)};
  m.reactions = {rxn("c_a", {{"S", -1}, {"M", 1}}, false, 2.0, 1.0),
                 rxn("c_b", {{"M", -1}, {"X", 1}}, false, 2.0, 1.0),
                 rxn("biomass", {{"X", -1}})};
  m.biomass_reaction_id = "biomass";
  m.index();
  return m;
}

// ---- taxonomy fixtures ----------------------------------------------------

inline multifac::TaxonomyRecord tax_record(
    const std::string& id, const std::array<std::string, 6>& labels,
    std::set<std::string> reactions = {}) {
  multifac::TaxonomyRecord rec;
  rec.model_id = id;
  rec.rank_labels = labels;
  rec.reaction_ids = std::move(reactions);
  return rec;
}

inline multifac::TaxonomyRecord labrador() {
  return tax_record("labrador", {"familiaris", "Canis", "Canidae", "Carnivora",
                                 "Mammalia", "Chordata"});
}

inline multifac::TaxonomyRecord red_fox() {
  return tax_record("red_fox", {"vulpes", "Vulpes", "Canidae", "Carnivora",
                                "Mammalia", "Chordata"});
}

}  // namespace fixtures

#endif  // MULTIFAC_TESTS_FIXTURES_HPP
