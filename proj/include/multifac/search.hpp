// The MultiFac improvement loop: ALNS-style operator selection with tabu
// memory and simulated-annealing acceptance over reaction availability
// vectors, solving one cost-weighted pFBA per medium per iteration and
// maintaining best/incumbent solutions plus a Pareto archive.
#ifndef MULTIFAC_SEARCH_HPP
#define MULTIFAC_SEARCH_HPP

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "multifac/json_io.hpp"
#include "multifac/model.hpp"
#include "multifac/objectives.hpp"
#include "multifac/pfba.hpp"
#include "multifac/preprocess.hpp"
#include "multifac/rng.hpp"

namespace multifac {

enum class SearchOperator : int {
  ExcludeByCost = 0,
  ExcludeByFlux,
  ExcludeByCostFlux,
  ExcludeOversUnders,
  ExcludeRandom,
  AddByCost,
  AddRandom,
  MakeUnit,        // forced while used reactions keep non-unit costs
  ExcludeRunaway,  // forced while a runaway cycle is present
};

inline constexpr int kNumOperators = 9;
inline constexpr int kNumFreeOperators = 7;  // roulette-selectable ones

inline constexpr std::array<const char*, kNumOperators> kOperatorNames = {
    "exclude-by-cost",  "exclude-by-flux", "exclude-by-cost-flux",
    "exclude-overs-unders", "exclude-random", "add-by-cost",
    "add-random",       "make-unit",       "exclude-runaway"};

struct SearchConfig {
  long iterations = 5000;
  Betas betas;
  long tabu_fail = 200;       // GME increased
  long tabu_worse = 25;       // objective worsened
  long tabu_incumbent = 500;  // accepted as incumbent
  double gamma_new_best = 10.0;
  double gamma_incumbent = 3.0;
  double gamma_pareto = 1.0;
  double sigma = 0.3;
  long adaptive_period = 100;
  std::uint64_t seed = 0;
  double t0_fraction = 0.05;  // initial temperature as fraction of first objective
  double cooling = 0.999;     // geometric, per iteration
  double similar_tol = 1e-6;  // relative "similar objective" band
  double overs_deadband = 1e-6;
  int threads = 1;
  long checkpoint_period = 500;
  std::string checkpoint_dir;  // empty = no checkpoints
  AlphaSchedule schedule;
  std::string reference_medium;  // preprocess reference override
};

struct TabuList {
  std::map<std::string, long> expiry;

  bool is_tabu(const std::string& reaction, long iteration) const {
    auto it = expiry.find(reaction);
    return it != expiry.end() && it->second > iteration;
  }
  void add(const std::string& reaction, long until) {
    long& e = expiry[reaction];
    e = std::max(e, until);
  }
};

// Adaptive probability update over one period: operators with usage get
// p' = m_k / sum(m), unused keep p' = p, then p'' = sigma p' + (1-sigma) p,
// renormalised. All-zero scores leave the distribution untouched.
inline std::vector<double> update_adaptive(const std::vector<double>& p,
                                           const std::vector<double>& s,
                                           const std::vector<long>& n,
                                           double sigma) {
  std::size_t k = p.size();
  std::vector<double> m(k, 0.0);
  double msum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (n[i] > 0) m[i] = s[i] / static_cast<double>(n[i]);
    msum += m[i];
  }
  if (msum <= 0.0) return p;  // AllZeroScores
  std::vector<double> pp(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double p_prime = n[i] > 0 ? m[i] / msum : p[i];
    pp[i] = sigma * p_prime + (1.0 - sigma) * p[i];
    total += pp[i];
  }
  for (auto& v : pp) v /= total;
  return pp;
}

struct OperatorStats {
  std::array<double, kNumFreeOperators> p{};
  std::array<double, kNumOperators> s{};
  std::array<long, kNumOperators> n{};

  OperatorStats() { p.fill(1.0 / kNumFreeOperators); }

  void apply_period_update(double sigma) {
    std::vector<double> pv(p.begin(), p.end());
    std::vector<double> sv(s.begin(), s.begin() + kNumFreeOperators);
    std::vector<long> nv(n.begin(), n.begin() + kNumFreeOperators);
    std::vector<double> updated = update_adaptive(pv, sv, nv, sigma);
    std::copy(updated.begin(), updated.end(), p.begin());
    s.fill(0.0);
    n.fill(0);
  }
};

struct ArchiveEntry {
  AvailabilityState state;
  Evaluation eval;
  long iteration = 0;
};

class ParetoArchive {
 public:
  // Insert iff no member dominates (or duplicates) the candidate; members the
  // candidate dominates are evicted. Returns whether it was inserted.
  bool insert(ArchiveEntry entry) {
    for (const auto& e : entries_) {
      if (dominates(e.eval, entry.eval)) return false;
      if (e.eval.components() == entry.eval.components()) return false;
    }
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [&](const ArchiveEntry& e) {
                                    return dominates(entry.eval, e.eval);
                                  }),
                   entries_.end());
    entries_.push_back(std::move(entry));
    return true;
  }

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::vector<ArchiveEntry>& mutable_entries() { return entries_; }

 private:
  std::vector<ArchiveEntry> entries_;
};

enum class Decision { NewBest, Incumbent, ParetoOnly, Reject };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::NewBest: return "new-best";
    case Decision::Incumbent: return "incumbent";
    case Decision::ParetoOnly: return "pareto-only";
    default: return "reject";
  }
}

struct Move {
  SearchOperator op;
  int reaction = -1;  // model reaction index; -1 = no-op
  enum class Kind { None, Exclude, Add, MakeUnit } kind = Kind::None;
};

struct IterationRecord {
  long iteration = 0;
  std::string op;
  std::string reaction;
  std::string decision;
  double objective = 0.0;
  double cost = 0.0;
  int gme = 0;
  double tau_prime = 0.0;
  double rms = 0.0;
  int excluded = 0;
  bool runaway = false;

  json to_json() const {
    return json{{"iteration", iteration}, {"op", op},
                {"reaction", reaction},   {"decision", decision},
                {"objective", objective}, {"cost", cost},
                {"gme", gme},             {"tau_prime", tau_prime},
                {"rms", rms},             {"excluded", excluded},
                {"runaway", runaway}};
  }
};

struct RunResult {
  PreprocessResult prep;
  ParetoArchive archive;
  AvailabilityState best_state;
  Evaluation best_eval;
  std::map<std::string, double> best_predictions;
  std::vector<IterationRecord> log;
};

class MultiFacSearch {
 public:
  MultiFacSearch(const MetabolicModel& model, std::vector<MediumSpec> media,
                 SearchConfig config)
      : model_(model), media_(std::move(media)), cfg_(std::move(config)),
        rng_(cfg_.seed) {}

  // Greedy construction: gene-indicated reactions only, then candidates in
  // increasing RC order (random tie-break); keep a candidate iff total
  // biomass does not decrease and no runaway appears.
  AvailabilityState build_initial(const PreprocessResult& prep) {
    AvailabilityState state;
    state.available.assign(model_.reactions.size(), 0);
    state.eval_costs.resize(model_.reactions.size());
    std::vector<int> candidates;
    for (std::size_t i = 0; i < model_.reactions.size(); ++i) {
      state.eval_costs[i] = model_.reactions[i].cost;
      if (model_.reactions[i].gene_indicated) {
        state.available[i] = 1;
      } else {
        candidates.push_back(static_cast<int>(i));
      }
    }
    // Increasing RC order, ties broken randomly.
    std::vector<double> tie(model_.reactions.size(), 0.0);
    for (int r : candidates) tie[r] = rng_.uniform();
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      double ca = model_.reactions[a].cost, cb = model_.reactions[b].cost;
      if (ca != cb) return ca < cb;
      return tie[a] < tie[b];
    });

    std::vector<FluxSolution> sols =
        solve_all_media(model_, prep.retained_media, state, prep.alpha, cfg_.threads);
    double total = total_biomass(sols);
    for (int r : candidates) {
      AvailabilityState trial = state;
      trial.available[r] = 1;
      trial.eval_costs[r] = 1.0;
      std::vector<FluxSolution> trial_sols =
          solve_all_media(model_, prep.retained_media, trial, prep.alpha, cfg_.threads);
      bool runaway = false;
      for (std::size_t k = 0; k < trial_sols.size(); ++k)
        runaway |= detect_runaway(trial_sols[k], prep.retained_media[k], model_);
      double trial_total = total_biomass(trial_sols);
      if (trial_total + 1e-12 >= total && !runaway) {
        state = std::move(trial);
        total = trial_total;
      }
    }
    return state;
  }

  RunResult run() {
    RunResult res;
    res.prep = preprocess(model_, media_, cfg_.schedule, cfg_.reference_medium);
    const auto& prep = res.prep;
    incumbent_state_ = build_initial(prep);
    incumbent_sols_ =
        solve_all_media(model_, prep.retained_media, incumbent_state_, prep.alpha,
                        cfg_.threads);
    incumbent_eval_ = evaluate_state(incumbent_sols_, prep);
    best_eval_ = incumbent_eval_;
    best_state_ = incumbent_state_;
    archive_.insert({incumbent_state_, incumbent_eval_, 0});
    temperature_ = cfg_.t0_fraction * std::max(incumbent_eval_.objective, 1e-6);
    iteration_ = 0;
    tabu_ = TabuList{};
    stats_ = OperatorStats{};
    return run_loop(std::move(res));
  }

  // Continue a checkpointed run up to cfg.iterations.
  RunResult resume(const std::string& checkpoint_path) {
    RunResult res;
    res.prep = preprocess(model_, media_, cfg_.schedule, cfg_.reference_medium);
    load_checkpoint(checkpoint_path, res.prep);
    incumbent_sols_ = solve_all_media(model_, res.prep.retained_media,
                                      incumbent_state_, res.prep.alpha, cfg_.threads);
    return run_loop(std::move(res));
  }

  void save_checkpoint(const std::string& path) const {
    json j;
    j["iteration"] = iteration_;
    j["temperature"] = temperature_;
    j["rng"] = rng_.serialize();
    j["incumbent"] = state_to_json(incumbent_state_);
    j["incumbent_eval"] = evaluation_to_json(incumbent_eval_, cfg_.betas);
    j["best"] = state_to_json(best_state_);
    j["best_eval"] = evaluation_to_json(best_eval_, cfg_.betas);
    j["tabu"] = json::object();
    for (const auto& [rid, until] : tabu_.expiry) j["tabu"][rid] = until;
    j["stats"] = {{"p", stats_.p}, {"s", stats_.s}, {"n", stats_.n}};
    j["archive"] = json::array();
    for (const auto& e : archive_.entries())
      j["archive"].push_back({{"state", state_to_json(e.state)},
                              {"eval", evaluation_to_json(e.eval, cfg_.betas)},
                              {"iteration", e.iteration}});
    std::ofstream out(path);
    out << j.dump(2) << "\n";
  }

 private:
  RunResult run_loop(RunResult res) {
    const auto& prep = res.prep;
    for (long iter = iteration_ + 1; iter <= cfg_.iterations; ++iter) {
      iteration_ = iter;
      assert_gene_available(incumbent_state_);

      Context ctx = build_context(prep);
      int op_index = select_operator(ctx);
      if (op_index < 0) {
        res.log.push_back(make_record(iter, "none", "", "skipped",
                                      incumbent_eval_, ctx.runaway_present));
        end_of_iteration(iter);
        continue;
      }
      auto op = static_cast<SearchOperator>(op_index);

      AvailabilityState cand = incumbent_state_;
      Move move = apply_operator(op, cand, ctx);
      if (move.kind == Move::Kind::None) {
        res.log.push_back(make_record(iter, kOperatorNames[op_index], "",
                                      "skipped", incumbent_eval_,
                                      ctx.runaway_present));
        end_of_iteration(iter);
        continue;
      }

      std::vector<FluxSolution> cand_sols =
          solve_all_media(model_, prep.retained_media, cand, prep.alpha, cfg_.threads);
      flag_runaways(cand_sols, prep);
      Evaluation cand_eval = evaluate_state(cand_sols, prep);
      Decision decision = decide(cand_eval, cand);

      // Make-unit rollback: an unacceptable unit-cost solution disables the
      // reaction instead.
      if (op == SearchOperator::MakeUnit && decision == Decision::Reject) {
        cand.available[move.reaction] = 0;
        move.kind = Move::Kind::Exclude;
        cand_sols = solve_all_media(model_, prep.retained_media, cand, prep.alpha,
                                    cfg_.threads);
        flag_runaways(cand_sols, prep);
        cand_eval = evaluate_state(cand_sols, prep);
        decision = decide(cand_eval, cand);
      }

      bool inserted = archive_.insert({cand, cand_eval, iter});
      if (decision == Decision::Reject && inserted)
        decision = Decision::ParetoOnly;

      // Operator scores.
      stats_.n[op_index] += 1;
      if (decision == Decision::NewBest)
        stats_.s[op_index] += cfg_.gamma_new_best + cfg_.gamma_incumbent;
      else if (decision == Decision::Incumbent)
        stats_.s[op_index] += cfg_.gamma_incumbent;
      if (inserted) stats_.s[op_index] += cfg_.gamma_pareto;

      // Tabu the reverse move.
      const std::string& rid = model_.reactions[move.reaction].id;
      bool accepted = decision == Decision::NewBest || decision == Decision::Incumbent;
      if (accepted)
        tabu_.add(rid, iter + cfg_.tabu_incumbent);
      else if (cand_eval.gme > incumbent_eval_.gme)
        tabu_.add(rid, iter + cfg_.tabu_fail);
      else if (cand_eval.objective > incumbent_eval_.objective)
        tabu_.add(rid, iter + cfg_.tabu_worse);

      if (decision == Decision::NewBest) {
        best_eval_ = cand_eval;
        best_state_ = cand;
      }
      if (accepted) {
        incumbent_state_ = std::move(cand);
        incumbent_sols_ = std::move(cand_sols);
        incumbent_eval_ = cand_eval;
      }

      res.log.push_back(make_record(iter, kOperatorNames[op_index], rid,
                                    to_string(decision), cand_eval,
                                    ctx.runaway_present));

      end_of_iteration(iter);
    }

    res.archive = archive_;
    res.best_state = best_state_;
    res.best_eval = best_eval_;
    std::vector<FluxSolution> best_sols =
        solve_all_media(model_, prep.retained_media, best_state_, prep.alpha,
                        cfg_.threads);
    for (const auto& s : best_sols) res.best_predictions[s.medium_id] = s.biomass;
    return res;
  }

  struct Context {
    std::vector<int> used;               // non-biomass reactions carrying flux
    std::vector<double> flux_sum;        // sum_k |x_i^k| per reaction
    std::vector<int> overs_minus_unders; // per reaction
    bool runaway_present = false;
    std::vector<int> runaway_media;      // indices into retained media
  };

  Context build_context(const PreprocessResult& prep) {
    Context ctx;
    std::size_t nr = model_.reactions.size();
    ctx.flux_sum.assign(nr, 0.0);
    ctx.overs_minus_unders.assign(nr, 0);
    int bio = model_.biomass_index();
    std::vector<char> used_flag(nr, 0);
    for (std::size_t k = 0; k < incumbent_sols_.size(); ++k) {
      const auto& sol = incumbent_sols_[k];
      const std::string& medium = prep.retained_media[k].id;
      double target = prep.targets.targets.at(medium);
      int over = sol.biomass > target + cfg_.overs_deadband   ? 1
                 : sol.biomass < target - cfg_.overs_deadband ? -1
                                                              : 0;
      if (detect_runaway(sol, prep.retained_media[k], model_)) {
        ctx.runaway_present = true;
        ctx.runaway_media.push_back(static_cast<int>(k));
      }
      for (std::size_t i = 0; i < nr; ++i) {
        double f = std::abs(sol.fluxes[i]);
        ctx.flux_sum[i] += f;
        if (f > kFluxUseThreshold && static_cast<int>(i) != bio) {
          used_flag[i] = 1;
          ctx.overs_minus_unders[i] += over;
        }
      }
    }
    for (std::size_t i = 0; i < nr; ++i)
      if (used_flag[i]) ctx.used.push_back(static_cast<int>(i));
    return ctx;
  }

  void flag_runaways(std::vector<FluxSolution>& sols, const PreprocessResult& prep) {
    for (std::size_t k = 0; k < sols.size(); ++k)
      sols[k].runaway = detect_runaway(sols[k], prep.retained_media[k], model_);
  }

  bool excludable(int r, long iter) const {
    return !model_.reactions[r].gene_indicated &&
           r != model_.biomass_index() &&
           !tabu_.is_tabu(model_.reactions[r].id, iter);
  }

  std::vector<double> operator_weights(SearchOperator op, const Context& ctx) {
    std::size_t nr = model_.reactions.size();
    std::vector<double> w(nr, 0.0);
    switch (op) {
      case SearchOperator::ExcludeByCost:
        for (int r : ctx.used)
          if (excludable(r, iteration_) && incumbent_state_.available[r])
            w[r] = model_.reactions[r].cost;
        break;
      case SearchOperator::ExcludeByFlux:
        for (int r : ctx.used)
          if (excludable(r, iteration_) && incumbent_state_.available[r])
            w[r] = ctx.flux_sum[r];
        break;
      case SearchOperator::ExcludeByCostFlux:
        for (int r : ctx.used)
          if (excludable(r, iteration_) && incumbent_state_.available[r])
            w[r] = model_.reactions[r].cost * ctx.flux_sum[r];
        break;
      case SearchOperator::ExcludeOversUnders:
        for (int r : ctx.used)
          if (excludable(r, iteration_) && incumbent_state_.available[r] &&
              ctx.overs_minus_unders[r] > 0)
            w[r] = static_cast<double>(ctx.overs_minus_unders[r]);
        break;
      case SearchOperator::ExcludeRandom:
        for (int r : ctx.used)
          if (excludable(r, iteration_) && incumbent_state_.available[r]) w[r] = 1.0;
        break;
      case SearchOperator::AddByCost:
        for (std::size_t r = 0; r < nr; ++r)
          if (!incumbent_state_.available[r] &&
              !tabu_.is_tabu(model_.reactions[r].id, iteration_))
            w[r] = 1.0 / model_.reactions[r].cost;
        break;
      case SearchOperator::AddRandom:
        for (std::size_t r = 0; r < nr; ++r)
          if (!incumbent_state_.available[r] &&
              !tabu_.is_tabu(model_.reactions[r].id, iteration_))
            w[r] = 1.0;
        break;
      case SearchOperator::MakeUnit:
        // Not tabu-filtered: the tabu list guards availability toggles, and a
        // just-accepted add would otherwise block its own cost normalisation.
        for (int r : ctx.used)
          if (incumbent_state_.available[r] &&
              incumbent_state_.eval_costs[r] > 1.0)
            w[r] = model_.reactions[r].cost;
        break;
      case SearchOperator::ExcludeRunaway:
        break;  // deterministic, handled in apply_operator
    }
    return w;
  }

  bool applicable(SearchOperator op, const Context& ctx) {
    if (op == SearchOperator::ExcludeRunaway)
      return ctx.runaway_present && runaway_target(ctx) >= 0;
    auto w = operator_weights(op, ctx);
    return std::any_of(w.begin(), w.end(), [](double v) { return v > 0.0; });
  }

  // Highest-cost excludable reaction among those attaining the maximum flux
  // in a runaway medium.
  int runaway_target(const Context& ctx) const {
    double max_flux = 0.0;
    for (int k : ctx.runaway_media)
      for (std::size_t i = 0; i < model_.reactions.size(); ++i)
        if (excludable(static_cast<int>(i), iteration_) &&
            incumbent_state_.available[i])
          max_flux = std::max(max_flux, std::abs(incumbent_sols_[k].fluxes[i]));
    if (max_flux <= kFluxUseThreshold) return -1;
    int pick = -1;
    for (int k : ctx.runaway_media)
      for (std::size_t i = 0; i < model_.reactions.size(); ++i) {
        int r = static_cast<int>(i);
        if (!excludable(r, iteration_) || !incumbent_state_.available[r]) continue;
        if (std::abs(incumbent_sols_[k].fluxes[i]) >= max_flux * (1.0 - 1e-9) &&
            (pick < 0 || model_.reactions[r].cost > model_.reactions[pick].cost))
          pick = r;
      }
    return pick;
  }

  // Forced operators first, then a roulette draw over the adaptive
  // probabilities with bounded resampling of inapplicable picks.
  int select_operator(const Context& ctx) {
    if (ctx.runaway_present &&
        applicable(SearchOperator::ExcludeRunaway, ctx))
      return static_cast<int>(SearchOperator::ExcludeRunaway);
    if (applicable(SearchOperator::MakeUnit, ctx))
      return static_cast<int>(SearchOperator::MakeUnit);
    std::vector<double> p(stats_.p.begin(), stats_.p.end());
    for (int attempt = 0; attempt < 32; ++attempt) {
      int k = rng_.pick_weighted(p);
      if (k < 0) break;
      if (applicable(static_cast<SearchOperator>(k), ctx)) return k;
      p[k] = 0.0;  // resample without the inapplicable operator
    }
    return -1;  // NoApplicableOperator: iteration skipped
  }

  Move apply_operator(SearchOperator op, AvailabilityState& cand, const Context& ctx) {
    Move move{op};
    if (op == SearchOperator::ExcludeRunaway) {
      int r = runaway_target(ctx);
      if (r < 0) return move;
      cand.available[r] = 0;
      move.reaction = r;
      move.kind = Move::Kind::Exclude;
      return move;
    }
    std::vector<double> w = operator_weights(op, ctx);
    int r = rng_.pick_weighted(w);
    if (r < 0) return move;
    move.reaction = r;
    switch (op) {
      case SearchOperator::AddByCost:
      case SearchOperator::AddRandom:
        cand.available[r] = 1;
        cand.eval_costs[r] = model_.reactions[r].cost;
        move.kind = Move::Kind::Add;
        break;
      case SearchOperator::MakeUnit:
        cand.eval_costs[r] = 1.0;
        move.kind = Move::Kind::MakeUnit;
        break;
      default:
        cand.available[r] = 0;
        move.kind = Move::Kind::Exclude;
        break;
    }
    return move;
  }

  Decision decide(const Evaluation& cand_eval, const AvailabilityState& cand) {
    if (cand_eval.objective < best_eval_.objective) return Decision::NewBest;
    if (cand_eval.objective < incumbent_eval_.objective) return Decision::Incumbent;
    double delta = cand_eval.objective - incumbent_eval_.objective;
    double band = cfg_.similar_tol * std::abs(incumbent_eval_.objective);
    if (cand.excluded_count(model_) < incumbent_state_.excluded_count(model_) &&
        delta <= band)
      return Decision::Incumbent;
    // Simulated annealing; the uniform draw happens only when this point is
    // reached, keeping the documented draw order stable.
    double u = rng_.uniform();
    if (temperature_ > 0.0 && u < std::exp(-delta / temperature_))
      return Decision::Incumbent;
    return Decision::Reject;
  }

  Evaluation evaluate_state(const std::vector<FluxSolution>& sols,
                            const PreprocessResult& prep) {
    std::map<std::string, double> predictions;
    for (const auto& s : sols) predictions[s.medium_id] = s.biomass;
    return evaluate_predictions(predictions, prep.targets, cfg_.betas, prep.c0,
                                &sols, &model_);
  }

  static double total_biomass(const std::vector<FluxSolution>& sols) {
    double t = 0.0;
    for (const auto& s : sols) t += s.biomass;
    return t;
  }

  void assert_gene_available(const AvailabilityState& state) const {
    for (std::size_t i = 0; i < model_.reactions.size(); ++i)
      if (model_.reactions[i].gene_indicated && !state.available[i])
        throw std::logic_error("gene-indicated reaction excluded: " +
                               model_.reactions[i].id);
  }

  IterationRecord make_record(long iter, const std::string& op,
                              const std::string& rid, const std::string& decision,
                              const Evaluation& ev, bool runaway) const {
    IterationRecord rec;
    rec.iteration = iter;
    rec.op = op;
    rec.reaction = rid;
    rec.decision = decision;
    rec.objective = ev.objective;
    rec.cost = ev.cost;
    rec.gme = ev.gme;
    rec.tau_prime = ev.tau_prime;
    rec.rms = ev.rms;
    rec.excluded = incumbent_state_.excluded_count(model_);
    rec.runaway = runaway;
    return rec;
  }

  void cool() { temperature_ *= cfg_.cooling; }

  // Period bookkeeping shared by applied and skipped iterations, so adaptive
  // updates and checkpoints land on schedule either way.
  void end_of_iteration(long iter) {
    if (cfg_.adaptive_period > 0 && iter % cfg_.adaptive_period == 0)
      stats_.apply_period_update(cfg_.sigma);
    if (!cfg_.checkpoint_dir.empty() && cfg_.checkpoint_period > 0 &&
        iter % cfg_.checkpoint_period == 0)
      save_checkpoint(cfg_.checkpoint_dir + "/checkpoint_" +
                      std::to_string(iter) + ".json");
    cool();
  }

  json state_to_json(const AvailabilityState& s) const {
    return json{{"available", s.available}, {"eval_costs", s.eval_costs}};
  }
  static AvailabilityState state_from_json(const json& j) {
    AvailabilityState s;
    s.available = j.at("available").get<std::vector<std::uint8_t>>();
    s.eval_costs = j.at("eval_costs").get<std::vector<double>>();
    return s;
  }
  static Evaluation evaluation_from_json(const json& j) {
    Evaluation ev;
    ev.cost = j.at("cost").get<double>();
    ev.cost_raw = j.at("cost_raw").get<double>();
    ev.gme = j.at("gme").get<int>();
    ev.tau = j.at("tau").get<double>();
    ev.tau_prime = j.at("tau_prime").get<double>();
    ev.tau_degenerate = j.at("tau_degenerate").get<bool>();
    ev.rms = j.at("rms").get<double>();
    ev.mape = j.at("mape").get<double>();
    ev.objective = j.at("objective").get<double>();
    ev.used_reactions = j.at("used_reactions").get<int>();
    return ev;
  }

  void load_checkpoint(const std::string& path, const PreprocessResult& prep) {
    (void)prep;
    json j = parse_json_file(path);
    iteration_ = j.at("iteration").get<long>();
    temperature_ = j.at("temperature").get<double>();
    rng_.deserialize(j.at("rng").get<std::string>());
    incumbent_state_ = state_from_json(j.at("incumbent"));
    incumbent_eval_ = evaluation_from_json(j.at("incumbent_eval"));
    best_state_ = state_from_json(j.at("best"));
    best_eval_ = evaluation_from_json(j.at("best_eval"));
    tabu_ = TabuList{};
    for (const auto& [rid, until] : j.at("tabu").items())
      tabu_.expiry[rid] = until.get<long>();
    stats_ = OperatorStats{};
    auto p = j.at("stats").at("p").get<std::vector<double>>();
    auto s = j.at("stats").at("s").get<std::vector<double>>();
    auto n = j.at("stats").at("n").get<std::vector<long>>();
    std::copy(p.begin(), p.end(), stats_.p.begin());
    std::copy(s.begin(), s.end(), stats_.s.begin());
    std::copy(n.begin(), n.end(), stats_.n.begin());
    archive_ = ParetoArchive{};
    for (const auto& e : j.at("archive"))
      archive_.mutable_entries().push_back({state_from_json(e.at("state")),
                                            evaluation_from_json(e.at("eval")),
                                            e.at("iteration").get<long>()});
  }

  const MetabolicModel& model_;
  std::vector<MediumSpec> media_;
  SearchConfig cfg_;
  Rng rng_;

  long iteration_ = 0;
  double temperature_ = 1.0;
  AvailabilityState incumbent_state_, best_state_;
  std::vector<FluxSolution> incumbent_sols_;
  Evaluation incumbent_eval_, best_eval_;
  TabuList tabu_;
  OperatorStats stats_;
  ParetoArchive archive_;
};

}  // namespace multifac

#endif  // MULTIFAC_SEARCH_HPP
