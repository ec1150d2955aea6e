// multifac: gap-fill genome-scale metabolic models against growth data.
//
// Subcommands: fba, gapfill, seq-lp, seq-mip, taxcost, evaluate,
// pareto-export. Exit codes: 0 success, 2 input error, 3 solver failure,
// 4 time/node limit hit with partial output written.
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multifac/baselines.hpp"
#include "multifac/json_io.hpp"
#include "multifac/model.hpp"
#include "multifac/objectives.hpp"
#include "multifac/pfba.hpp"
#include "multifac/preprocess.hpp"
#include "multifac/search.hpp"
#include "multifac/taxcost.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitOk = 0, kExitInput = 2, kExitSolver = 3, kExitTruncated = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

int default_threads() {
  if (const char* env = std::getenv("MULTIFAC_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

multifac::MetabolicModel load_model_checked(const std::string& path) {
  multifac::MetabolicModel model = multifac::load_model(path);
  auto violations = multifac::validate_model(model);
  if (!violations.empty()) {
    std::ostringstream os;
    os << path << ": invalid model:";
    for (const auto& v : violations) os << " [" << v.entity << ": " << v.rule << "]";
    throw InputError(os.str());
  }
  return model;
}

// Flat key=value configuration file; '#' starts a comment line.
std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(const std::map<std::string, std::string>& kv,
                  multifac::SearchConfig& cfg, std::string& regime) {
  auto has = [&](const char* k) { return kv.count(k) > 0; };
  auto num = [&](const char* k) { return std::stod(kv.at(k)); };
  if (has("iterations")) cfg.iterations = static_cast<long>(num("iterations"));
  if (has("seed")) cfg.seed = static_cast<std::uint64_t>(num("seed"));
  if (has("threads")) cfg.threads = static_cast<int>(num("threads"));
  if (has("t_fail")) cfg.tabu_fail = static_cast<long>(num("t_fail"));
  if (has("t_worse")) cfg.tabu_worse = static_cast<long>(num("t_worse"));
  if (has("t_incumbent")) cfg.tabu_incumbent = static_cast<long>(num("t_incumbent"));
  if (has("gamma1")) cfg.gamma_new_best = num("gamma1");
  if (has("gamma2")) cfg.gamma_incumbent = num("gamma2");
  if (has("gamma3")) cfg.gamma_pareto = num("gamma3");
  if (has("sigma")) cfg.sigma = num("sigma");
  if (has("period")) cfg.adaptive_period = static_cast<long>(num("period"));
  if (has("t0_fraction")) cfg.t0_fraction = num("t0_fraction");
  if (has("cooling")) cfg.cooling = num("cooling");
  if (has("similar_tol")) cfg.similar_tol = num("similar_tol");
  if (has("checkpoint_period"))
    cfg.checkpoint_period = static_cast<long>(num("checkpoint_period"));
  if (has("reference")) cfg.reference_medium = kv.at("reference");
  if (has("regime")) regime = kv.at("regime");
  if (has("beta_gme")) cfg.betas.gme = num("beta_gme");
  if (has("beta_tau")) cfg.betas.tau = num("beta_tau");
}

multifac::json config_snapshot(const multifac::SearchConfig& cfg,
                               const std::string& regime) {
  return multifac::json{{"iterations", cfg.iterations},
                        {"seed", cfg.seed},
                        {"threads", cfg.threads},
                        {"regime", regime},
                        {"t_fail", cfg.tabu_fail},
                        {"t_worse", cfg.tabu_worse},
                        {"t_incumbent", cfg.tabu_incumbent},
                        {"gamma1", cfg.gamma_new_best},
                        {"gamma2", cfg.gamma_incumbent},
                        {"gamma3", cfg.gamma_pareto},
                        {"sigma", cfg.sigma},
                        {"period", cfg.adaptive_period},
                        {"t0_fraction", cfg.t0_fraction},
                        {"cooling", cfg.cooling},
                        {"similar_tol", cfg.similar_tol},
                        {"checkpoint_period", cfg.checkpoint_period},
                        {"beta_c", cfg.betas.cost},
                        {"beta_e", cfg.betas.rms},
                        {"beta_gme", cfg.betas.gme},
                        {"beta_tau", cfg.betas.tau},
                        {"reference", cfg.reference_medium}};
}

std::string pareto_csv(const multifac::ParetoArchive& archive) {
  std::ostringstream os;
  os.precision(12);
  os << "index,iteration,cost,gme,tau_prime,rms,objective,used_reactions\n";
  int idx = 0;
  for (const auto& e : archive.entries()) {
    os << idx++ << "," << e.iteration << "," << e.eval.cost << "," << e.eval.gme
       << "," << e.eval.tau_prime << "," << e.eval.rms << ","
       << e.eval.objective << "," << e.eval.used_reactions << "\n";
  }
  return os.str();
}

multifac::json pareto_json(const multifac::ParetoArchive& archive,
                           const multifac::MetabolicModel& model,
                           const multifac::Betas& betas) {
  multifac::json arr = multifac::json::array();
  for (const auto& e : archive.entries()) {
    multifac::json excluded = multifac::json::array();
    for (std::size_t i = 0; i < e.state.available.size(); ++i)
      if (!e.state.available[i] && !model.reactions[i].gene_indicated)
        excluded.push_back(model.reactions[i].id);
    arr.push_back({{"iteration", e.iteration},
                   {"eval", multifac::evaluation_to_json(e.eval, betas)},
                   {"excluded", excluded}});
  }
  return arr;
}

void write_predictions_csv(const std::string& path,
                           const multifac::TargetSet& targets,
                           const std::map<std::string, double>& predictions) {
  std::ofstream out(path);
  out.precision(12);
  out << "medium,score,class,target,prediction\n";
  for (const auto& [medium, target] : targets.targets) {
    out << medium << "," << targets.scores.at(medium) << ","
        << to_string(targets.growth_classes.at(medium)) << "," << target << ","
        << predictions.at(medium) << "\n";
  }
}

void print_evaluation(std::ostream& os, const multifac::Evaluation& ev,
                      int gme_fn) {
  os.precision(6);
  os << "cost            " << ev.cost << " (raw " << ev.cost_raw << ")\n"
     << "gme             " << ev.gme << " (false-negative-only " << gme_fn << ")\n"
     << "tau             " << ev.tau
     << (ev.tau_degenerate ? " (degenerate)\n" : "\n")
     << "tau_prime       " << ev.tau_prime << "\n"
     << "rms             " << ev.rms << "\n"
     << "mape            " << ev.mape << "%\n"
     << "objective       " << ev.objective << "\n"
     << "used_reactions  " << ev.used_reactions << "\n";
}

// ---------------------------------------------------------------- fba
int cmd_fba(const std::string& model_path, const std::string& media_path,
            const std::string& medium_id, double alpha, bool auto_calibrate,
            bool unit_costs) {
  auto model = load_model_checked(model_path);
  auto media = multifac::load_media(media_path);
  const multifac::MediumSpec* medium = nullptr;
  for (const auto& m : media)
    if (medium_id.empty() || m.id == medium_id) {
      medium = &m;
      break;
    }
  if (!medium) throw InputError("medium '" + medium_id + "' not found");

  auto state = multifac::AvailabilityState::all_available(model);
  if (unit_costs)
    for (auto& c : state.eval_costs) c = 1.0;
  if (auto_calibrate) {
    auto cal = multifac::calibrate_alpha(model, *medium, state);
    alpha = cal.alpha_k;
  }
  auto sol = multifac::solve_pfba(model, *medium, state, alpha);
  std::cout.precision(9);
  std::cout << "medium " << medium->id << "\nalpha " << sol.alpha_used << "\n";
  for (std::size_t i = 0; i < model.reactions.size(); ++i)
    std::cout << model.reactions[i].id << " " << sol.fluxes[i] << "\n";
  std::cout << "biomass " << sol.biomass << "\n";
  if (multifac::detect_runaway(sol, *medium, model))
    std::cout << "runaway true\n";
  return kExitOk;
}

// ------------------------------------------------------------- gapfill
int cmd_gapfill(const std::string& model_path, const std::string& media_path,
                multifac::SearchConfig cfg, const std::string& regime,
                const std::string& out_dir, const std::string& resume_path,
                const std::string& tax_db, const std::string& tax_target) {
  auto model = load_model_checked(model_path);
  auto media = multifac::load_media(media_path);
  multifac::Betas betas = multifac::Betas::regime(regime);
  betas.gme = cfg.betas.gme;
  betas.tau = cfg.betas.tau;
  cfg.betas = betas;

  if (!tax_db.empty()) {
    auto db = multifac::load_taxonomy_db(tax_db);
    auto targets = multifac::load_taxonomy_db(tax_target);
    if (targets.empty()) throw InputError("empty target taxonomy " + tax_target);
    std::set<std::string> universe;
    for (const auto& r : model.reactions)
      if (!r.gene_indicated) universe.insert(r.id);
    auto costs = multifac::reaction_costs(db, targets.front(), universe);
    for (auto& r : model.reactions)
      if (!r.gene_indicated) r.cost = costs.costs.at(r.id);
  }

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  cfg.checkpoint_dir = out_dir;

  multifac::json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = config_snapshot(cfg, regime);
  manifest["inputs"] = {
      {"model", {{"path", model_path}, {"fnv1a", fnv1a_file(model_path)}}},
      {"media", {{"path", media_path}, {"fnv1a", fnv1a_file(media_path)}}}};
  manifest["seed"] = cfg.seed;
  manifest["timestamp"] = static_cast<long>(std::time(nullptr));
  {
    std::ofstream mf(out_dir + "/manifest.json");
    mf << manifest.dump(2) << "\n";
  }

  multifac::MultiFacSearch search(model, media, cfg);
  multifac::RunResult result =
      resume_path.empty() ? search.run() : search.resume(resume_path);

  {
    std::ofstream log(out_dir + "/run_log.jsonl");
    for (const auto& rec : result.log) log << rec.to_json().dump() << "\n";
  }
  {
    std::ofstream pc(out_dir + "/pareto.csv");
    pc << pareto_csv(result.archive);
    std::ofstream pj(out_dir + "/pareto.json");
    pj << pareto_json(result.archive, model, cfg.betas).dump(2) << "\n";
  }
  write_predictions_csv(out_dir + "/predictions.csv", result.prep.targets,
                        result.best_predictions);
  {
    std::ofstream be(out_dir + "/best_evaluation.json");
    be << multifac::evaluation_to_json(result.best_eval, cfg.betas).dump(2) << "\n";
  }
  std::cout << "best objective " << result.best_eval.objective << ", pareto size "
            << result.archive.entries().size() << ", artifacts in " << out_dir
            << "\n";
  return kExitOk;
}

// -------------------------------------------------------- seq-lp / seq-mip
int cmd_sequential(bool mip, const std::string& model_path,
                   const std::string& media_path, const std::string& regime,
                   const std::vector<std::string>& order,
                   multifac::SequentialConfig cfg, const std::string& out_dir) {
  auto model = load_model_checked(model_path);
  auto media = multifac::load_media(media_path);
  cfg.betas = multifac::Betas::regime(regime);
  auto prep = multifac::preprocess(model, media);
  multifac::BaselineResult res = mip
      ? multifac::run_mip_seq(model, prep, cfg, order)
      : multifac::run_lp_seq(model, prep, cfg, order);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream ec(out_dir + "/evaluation.csv");
    ec << multifac::evaluation_csv_header() << "\n"
       << multifac::evaluation_csv_row(res.eval) << "\n";
    std::ofstream ej(out_dir + "/evaluation.json");
    ej << multifac::evaluation_to_json(res.eval, cfg.betas).dump(2) << "\n";
    write_predictions_csv(out_dir + "/predictions.csv", prep.targets,
                          res.predictions);
  }
  int gme_fn = multifac::growth_match_error(
      res.predictions, prep.targets, multifac::kGrowthThreshold,
      multifac::GmeRule::FalseNegativeOnly);
  print_evaluation(std::cout, res.eval, gme_fn);
  std::cout << "locked";
  if (!res.lock_history.empty())
    for (const auto& rid : res.lock_history.back()) std::cout << " " << rid;
  std::cout << "\n";
  if (res.truncated) {
    std::cerr << "warning: subproblem hit node/time limit; output is partial\n";
    return kExitTruncated;
  }
  return kExitOk;
}

// -------------------------------------------------------------- taxcost
int cmd_taxcost(const std::string& db_path, const std::string& target_path,
                const std::string& model_path, const std::string& out_path,
                bool patch) {
  auto db = multifac::load_taxonomy_db(db_path);
  auto targets = multifac::load_taxonomy_db(target_path);
  if (targets.empty()) throw InputError("empty target taxonomy " + target_path);
  auto model = load_model_checked(model_path);
  std::set<std::string> universe;
  for (const auto& r : model.reactions)
    if (!r.gene_indicated) universe.insert(r.id);
  auto result = multifac::reaction_costs(db, targets.front(), universe);
  if (result.no_matching_rank)
    std::cerr << "warning: no reference model matches the target at any rank\n";

  std::ostringstream csv;
  csv.precision(12);
  csv << "reaction_id,cost\n";
  for (const auto& [rid, cost] : result.costs) csv << rid << "," << cost << "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    out << csv.str();
  }
  if (patch) {
    for (auto& r : model.reactions)
      if (!r.gene_indicated) r.cost = result.costs.at(r.id);
    std::ofstream out(model_path);
    out << multifac::model_to_json(model).dump(1) << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------- evaluate
struct TableRow {
  std::string medium;
  double score, target, prediction;
  multifac::GrowthClass cls;
};

std::vector<TableRow> load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<TableRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // medium,score,class,target,prediction
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
  if (rows.empty()) throw InputError(path + ": no data rows");
  return rows;
}

int cmd_evaluate_table(const std::string& table_path, const std::string& regime,
                       bool as_json) {
  auto rows = load_table(table_path);
  multifac::TargetSet targets;
  std::map<std::string, double> predictions;
  for (const auto& r : rows) {
    targets.targets[r.medium] = r.target;
    targets.scores[r.medium] = r.score;
    targets.growth_classes[r.medium] = r.cls;
    predictions[r.medium] = r.prediction;
  }
  auto betas = multifac::Betas::regime(regime);
  auto ev = multifac::evaluate_predictions(predictions, targets, betas);
  int gme_fn = multifac::growth_match_error(
      predictions, targets, multifac::kGrowthThreshold,
      multifac::GmeRule::FalseNegativeOnly);
  if (as_json) {
    auto j = multifac::evaluation_to_json(ev, betas);
    j["gme_false_negative_only"] = gme_fn;
    std::cout << j.dump(2) << "\n";
  } else {
    print_evaluation(std::cout, ev, gme_fn);
  }
  return kExitOk;
}

int cmd_evaluate_model(const std::string& model_path, const std::string& media_path,
                       const std::string& regime, bool as_json) {
  auto model = load_model_checked(model_path);
  auto media = multifac::load_media(media_path);
  auto betas = multifac::Betas::regime(regime);
  auto prep = multifac::preprocess(model, media);
  auto state = multifac::AvailabilityState::all_available(model);
  auto sols = multifac::solve_all_media(model, prep.retained_media, state,
                                        prep.alpha, default_threads());
  std::map<std::string, double> predictions;
  for (const auto& s : sols) predictions[s.medium_id] = s.biomass;
  auto ev = multifac::evaluate_predictions(predictions, prep.targets, betas,
                                           prep.c0, &sols, &model);
  int gme_fn = multifac::growth_match_error(
      predictions, prep.targets, multifac::kGrowthThreshold,
      multifac::GmeRule::FalseNegativeOnly);
  if (as_json) {
    auto j = multifac::evaluation_to_json(ev, betas);
    j["gme_false_negative_only"] = gme_fn;
    std::cout << j.dump(2) << "\n";
  } else {
    print_evaluation(std::cout, ev, gme_fn);
  }
  return kExitOk;
}

// --------------------------------------------------------- pareto-export
int cmd_pareto_export(const std::string& checkpoint_path,
                      const std::string& model_path, const std::string& out_dir) {
  auto model = load_model_checked(model_path);
  auto j = multifac::parse_json_file(checkpoint_path);
  multifac::ParetoArchive archive;
  for (const auto& e : j.at("archive")) {
    multifac::ArchiveEntry entry;
    entry.state.available =
        e.at("state").at("available").get<std::vector<std::uint8_t>>();
    entry.state.eval_costs =
        e.at("state").at("eval_costs").get<std::vector<double>>();
    const auto& ev = e.at("eval");
    entry.eval.cost = ev.at("cost").get<double>();
    entry.eval.cost_raw = ev.at("cost_raw").get<double>();
    entry.eval.gme = ev.at("gme").get<int>();
    entry.eval.tau = ev.at("tau").get<double>();
    entry.eval.tau_prime = ev.at("tau_prime").get<double>();
    entry.eval.tau_degenerate = ev.at("tau_degenerate").get<bool>();
    entry.eval.rms = ev.at("rms").get<double>();
    entry.eval.mape = ev.at("mape").get<double>();
    entry.eval.objective = ev.at("objective").get<double>();
    entry.eval.used_reactions = ev.at("used_reactions").get<int>();
    entry.iteration = e.at("iteration").get<long>();
    archive.mutable_entries().push_back(std::move(entry));
  }
  std::filesystem::create_directories(out_dir);
  std::ofstream pc(out_dir + "/pareto.csv");
  pc << pareto_csv(archive);
  std::ofstream pj(out_dir + "/pareto.json");
  pj << pareto_json(archive, model, multifac::Betas{}).dump(2) << "\n";
  std::cout << "exported " << archive.entries().size() << " entries to " << out_dir
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-medium metabolic model gap-filling"};
  app.require_subcommand(1);

  // fba
  auto* fba = app.add_subcommand("fba", "cost-weighted pFBA on one medium");
  std::string fba_model, fba_media, fba_medium_id;
  double fba_alpha = 0.0;
  bool fba_unit_costs = false;
  fba->add_option("model", fba_model)->required();
  fba->add_option("media", fba_media)->required();
  fba->add_option("--medium", fba_medium_id, "medium id (default: first)");
  auto* alpha_opt = fba->add_option("--alpha", fba_alpha, "fixed alpha (default: auto-calibrate)");
  fba->add_flag("--unit-costs", fba_unit_costs, "ignore taxonomic costs");

  // gapfill
  auto* gapfill = app.add_subcommand("gapfill", "multi-medium gap-filling search");
  std::string gf_model, gf_media, gf_out, gf_config, gf_resume, gf_regime = "cost+error";
  std::string gf_tax_db, gf_tax_target;
  multifac::SearchConfig gf_cfg;
  gf_cfg.threads = default_threads();
  gapfill->add_option("model", gf_model)->required();
  gapfill->add_option("media", gf_media)->required();
  gapfill->add_option("--out-dir", gf_out)->required();
  gapfill->add_option("--config", gf_config, "flat key=value config file");
  auto* gf_regime_opt = gapfill->add_option("--regime", gf_regime,
                                            "cost/error, error/cost or cost+error");
  auto* gf_iter_opt = gapfill->add_option("--iterations", gf_cfg.iterations);
  auto* gf_seed_opt = gapfill->add_option("--seed", gf_cfg.seed);
  auto* gf_threads_opt = gapfill->add_option("--threads", gf_cfg.threads);
  auto* gf_ref_opt = gapfill->add_option("--reference", gf_cfg.reference_medium);
  auto* gf_ckpt_opt = gapfill->add_option("--checkpoint-period", gf_cfg.checkpoint_period);
  gapfill->add_option("--resume", gf_resume, "checkpoint file to continue from");
  gapfill->add_option("--taxonomy-db", gf_tax_db, "patch costs from this DB");
  gapfill->add_option("--taxonomy-target", gf_tax_target);

  // seq-lp / seq-mip
  std::string seq_model, seq_media, seq_out, seq_regime = "cost+error";
  std::vector<std::string> seq_order;
  multifac::SequentialConfig seq_cfg;
  auto add_seq = [&](const char* name, const char* desc) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->add_option("model", seq_model)->required();
    cmd->add_option("media", seq_media)->required();
    cmd->add_option("--out-dir", seq_out);
    cmd->add_option("--regime", seq_regime);
    cmd->add_option("--order", seq_order, "explicit medium order")->delimiter(',');
    cmd->add_option("--time-limit", seq_cfg.time_limit_s, "seconds per medium");
    cmd->add_option("--gap", seq_cfg.mip_gap);
    cmd->add_option("--node-limit", seq_cfg.node_limit);
    return cmd;
  };
  auto* seq_lp = add_seq("seq-lp", "sequential LP baseline");
  auto* seq_mip = add_seq("seq-mip", "sequential MILP baseline");

  // taxcost
  auto* taxcost = app.add_subcommand("taxcost", "taxonomy-informed reaction costs");
  std::string tc_db, tc_target, tc_model, tc_out;
  bool tc_patch = false;
  taxcost->add_option("--db", tc_db)->required();
  taxcost->add_option("--target", tc_target)->required();
  taxcost->add_option("--model", tc_model)->required();
  taxcost->add_option("--out", tc_out, "CSV path ('-' = stdout)");
  taxcost->add_flag("--patch", tc_patch, "write costs back into the model file");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "score predictions against targets");
  std::string ev_table, ev_model, ev_media, ev_regime = "cost+error";
  bool ev_json = false;
  evaluate->add_option("--table", ev_table,
                       "CSV with medium,score,class,target,prediction");
  evaluate->add_option("--model", ev_model);
  evaluate->add_option("--media", ev_media);
  evaluate->add_option("--regime", ev_regime);
  evaluate->add_flag("--json", ev_json);

  // pareto-export
  auto* pexport = app.add_subcommand("pareto-export", "export a checkpoint's archive");
  std::string pe_checkpoint, pe_model, pe_out;
  pexport->add_option("--checkpoint", pe_checkpoint)->required();
  pexport->add_option("--model", pe_model)->required();
  pexport->add_option("--out-dir", pe_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (fba->parsed())
      return cmd_fba(fba_model, fba_media, fba_medium_id, fba_alpha,
                     alpha_opt->count() == 0, fba_unit_costs);
    if (gapfill->parsed()) {
      multifac::SearchConfig cfg;
      cfg.threads = default_threads();
      std::string regime = "cost+error";
      if (!gf_config.empty()) apply_config(load_config_file(gf_config), cfg, regime);
      if (gf_regime_opt->count()) regime = gf_regime;
      if (gf_iter_opt->count()) cfg.iterations = gf_cfg.iterations;
      if (gf_seed_opt->count()) cfg.seed = gf_cfg.seed;
      if (gf_threads_opt->count()) cfg.threads = gf_cfg.threads;
      if (gf_ref_opt->count()) cfg.reference_medium = gf_cfg.reference_medium;
      if (gf_ckpt_opt->count()) cfg.checkpoint_period = gf_cfg.checkpoint_period;
      return cmd_gapfill(gf_model, gf_media, cfg, regime, gf_out, gf_resume,
                         gf_tax_db, gf_tax_target);
    }
    if (seq_lp->parsed() || seq_mip->parsed())
      return cmd_sequential(seq_mip->parsed(), seq_model, seq_media, seq_regime,
                            seq_order, seq_cfg, seq_out);
    if (taxcost->parsed())
      return cmd_taxcost(tc_db, tc_target, tc_model, tc_out, tc_patch);
    if (evaluate->parsed()) {
      if (!ev_table.empty()) return cmd_evaluate_table(ev_table, ev_regime, ev_json);
      if (ev_model.empty() || ev_media.empty())
        throw InputError("evaluate needs --table or both --model and --media");
      return cmd_evaluate_model(ev_model, ev_media, ev_regime, ev_json);
    }
    if (pexport->parsed())
      return cmd_pareto_export(pe_checkpoint, pe_model, pe_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const multifac::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const multifac::SolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const multifac::AllMediaInfeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
