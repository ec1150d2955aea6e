// JSON schemas for models, media, taxonomy records and evaluations.
//
// Model file: { "metabolites": [{"id","name","carbon_count"}...],
//               "reactions": [{"id","stoich":{met:coef},"reversible",
//                              "gene_indicated","cost","ub"}...],
//               "biomass_reaction_id": "..." }
// Media file: [ {"id","carbon_source","supply":{},"demand":{},
//                "growth_score","growth_class":"Growth"|"NoGrowth"} ... ]
// Taxonomy DB: JSON lines, one record per line:
//   {"model_id","taxonomy":{"species",...,"phylum"},"reactions":[...]}
#ifndef MULTIFAC_JSON_IO_HPP
#define MULTIFAC_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "multifac/model.hpp"
#include "multifac/objectives.hpp"
#include "multifac/taxcost.hpp"

namespace multifac {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline GrowthClass parse_growth_class(const std::string& s) {
  if (s == "Growth") return GrowthClass::Growth;
  if (s == "NoGrowth") return GrowthClass::NoGrowth;
  throw ParseError("unknown growth_class value: '" + s + "'");
}

inline MetabolicModel model_from_json(const json& j) {
  try {
    MetabolicModel model;
    for (const auto& m : j.at("metabolites")) {
      Metabolite met;
      met.id = m.at("id").get<std::string>();
      met.name = m.value("name", met.id);
      met.carbon_count = m.value("carbon_count", 0);
      model.metabolites.push_back(std::move(met));
    }
    for (const auto& r : j.at("reactions")) {
      Reaction rxn;
      rxn.id = r.at("id").get<std::string>();
      for (const auto& [met, coef] : r.at("stoich").items())
        rxn.stoich[met] = coef.get<double>();
      rxn.reversible = r.value("reversible", false);
      rxn.gene_indicated = r.value("gene_indicated", false);
      rxn.cost = r.value("cost", 1.0);
      rxn.flux_upper_bound = r.value("ub", 1000.0);
      model.reactions.push_back(std::move(rxn));
    }
    model.biomass_reaction_id = j.at("biomass_reaction_id").get<std::string>();
    model.index();
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad model document: ") + e.what());
  }
}

inline json model_to_json(const MetabolicModel& model) {
  json j;
  j["metabolites"] = json::array();
  for (const auto& m : model.metabolites)
    j["metabolites"].push_back(
        {{"id", m.id}, {"name", m.name}, {"carbon_count", m.carbon_count}});
  j["reactions"] = json::array();
  for (const auto& r : model.reactions) {
    json s = json::object();
    for (const auto& [met, coef] : r.stoich) s[met] = coef;
    j["reactions"].push_back({{"id", r.id},
                              {"stoich", s},
                              {"reversible", r.reversible},
                              {"gene_indicated", r.gene_indicated},
                              {"cost", r.cost},
                              {"ub", r.flux_upper_bound}});
  }
  j["biomass_reaction_id"] = model.biomass_reaction_id;
  return j;
}

inline MetabolicModel load_model(const std::string& path) {
  return model_from_json(parse_json_file(path));
}

inline std::vector<MediumSpec> media_from_json(const json& j) {
  try {
    std::vector<MediumSpec> media;
    for (const auto& m : j) {
      MediumSpec spec;
      spec.id = m.at("id").get<std::string>();
      spec.carbon_source = m.value("carbon_source", "");
      if (m.contains("supply"))
        for (const auto& [met, v] : m.at("supply").items())
          spec.supply[met] = v.get<double>();
      if (m.contains("demand"))
        for (const auto& [met, v] : m.at("demand").items())
          spec.demand[met] = v.get<double>();
      spec.growth_score = m.value("growth_score", 0.0);
      spec.growth_class = parse_growth_class(m.at("growth_class").get<std::string>());
      media.push_back(std::move(spec));
    }
    return media;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad media document: ") + e.what());
  }
}

inline std::vector<MediumSpec> load_media(const std::string& path) {
  return media_from_json(parse_json_file(path));
}

inline std::vector<TaxonomyRecord> load_taxonomy_db(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<TaxonomyRecord> db;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      TaxonomyRecord rec;
      rec.model_id = j.at("model_id").get<std::string>();
      const auto& tax = j.at("taxonomy");
      for (int k = 0; k < 6; ++k)
        rec.rank_labels[k] = tax.at(kRankNames[k]).get<std::string>();
      if (j.contains("reactions"))
        for (const auto& r : j.at("reactions"))
          rec.reaction_ids.insert(r.get<std::string>());
      if (!rec.complete())
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": incomplete taxonomy record");
      db.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return db;
}

inline json evaluation_to_json(const Evaluation& ev, const Betas& betas) {
  return json{{"cost", ev.cost},
              {"cost_raw", ev.cost_raw},
              {"gme", ev.gme},
              {"tau", ev.tau},
              {"tau_prime", ev.tau_prime},
              {"tau_degenerate", ev.tau_degenerate},
              {"rms", ev.rms},
              {"mape", ev.mape},
              {"objective", ev.objective},
              {"used_reactions", ev.used_reactions},
              {"betas", {{"cost", betas.cost},
                         {"gme", betas.gme},
                         {"tau", betas.tau},
                         {"rms", betas.rms}}}};
}

inline std::string evaluation_csv_header() {
  return "cost,gme,tau,rms,mape,objective,used_reactions";
}

inline std::string evaluation_csv_row(const Evaluation& ev) {
  std::ostringstream os;
  os.precision(12);
  os << ev.cost << "," << ev.gme << "," << ev.tau << "," << ev.rms << ","
     << ev.mape << "," << ev.objective << "," << ev.used_reactions;
  return os.str();
}

}  // namespace multifac

#endif  // MULTIFAC_JSON_IO_HPP
