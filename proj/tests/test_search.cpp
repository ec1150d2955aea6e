#include <filesystem>
#include <string>

#include "catch_amalgamated.hpp"
#include "fixtures.hpp"
#include "multifac/search.hpp"

using namespace multifac;

namespace {

SearchConfig quick_config(long iterations, std::uint64_t seed = 1) {
  SearchConfig cfg;
  cfg.iterations = iterations;
  cfg.seed = seed;
  cfg.betas = Betas::regime("cost+error");
  return cfg;
}

std::vector<std::string> log_dump(const RunResult& res) {
  std::vector<std::string> out;
  for (const auto& rec : res.log) out.push_back(rec.to_json().dump());
  return out;
}

}  // namespace

TEST_CASE("adaptive update hand example yields (0.565, 0.435)") {
  auto p = update_adaptive({0.5, 0.5}, {10.0, 0.0}, {5, 0}, 0.3);
  CHECK(p[0] == Catch::Approx(0.565).margin(5e-4));
  CHECK(p[1] == Catch::Approx(0.435).margin(5e-4));
}

TEST_CASE("adaptive update corner cases") {
  // sigma = 0 leaves probabilities unchanged.
  auto same = update_adaptive({0.3, 0.7}, {10.0, 0.0}, {5, 0}, 0.0);
  CHECK(same[0] == Catch::Approx(0.3));
  CHECK(same[1] == Catch::Approx(0.7));
  // Single operator keeps probability 1.
  auto one = update_adaptive({1.0}, {5.0}, {2}, 0.3);
  CHECK(one[0] == Catch::Approx(1.0));
  // All-zero scores: distribution untouched.
  auto zero = update_adaptive({0.25, 0.75}, {0.0, 0.0}, {3, 0}, 0.3);
  CHECK(zero[0] == Catch::Approx(0.25));
  CHECK(zero[1] == Catch::Approx(0.75));
}

TEST_CASE("adaptive update stays a probability distribution") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(7), s(7);
    std::vector<long> n(7);
    double total = 0.0;
    for (int i = 0; i < 7; ++i) {
      p[i] = 0.01 + rng.uniform();
      total += p[i];
      n[i] = static_cast<long>(rng.uniform() * 5);
      s[i] = n[i] > 0 ? rng.uniform() * 20 : 0.0;
    }
    for (auto& v : p) v /= total;
    auto updated = update_adaptive(p, s, n, 0.3);
    double sum = 0.0;
    for (double v : updated) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("operator stats reset after a period update") {
  OperatorStats stats;
  stats.s[0] = 10.0;
  stats.n[0] = 5;
  stats.apply_period_update(0.3);
  CHECK(stats.s[0] == 0.0);
  CHECK(stats.n[0] == 0);
  double sum = 0.0;
  for (double v : stats.p) sum += v;
  CHECK(sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("tabu list expiry semantics") {
  TabuList tabu;
  tabu.add("r1", 205);
  CHECK(tabu.is_tabu("r1", 204));
  CHECK_FALSE(tabu.is_tabu("r1", 205));
  CHECK_FALSE(tabu.is_tabu("r2", 0));
  tabu.add("r1", 100);  // shorter tenure never shortens an existing one
  CHECK(tabu.is_tabu("r1", 204));
}

TEST_CASE("pareto archive keeps only mutually non-dominated entries") {
  ParetoArchive archive;
  auto entry = [](double cost, int gme, double tp, double rms) {
    ArchiveEntry e;
    e.eval.cost = cost;
    e.eval.gme = gme;
    e.eval.tau_prime = tp;
    e.eval.rms = rms;
    return e;
  };
  CHECK(archive.insert(entry(1.0, 0, 0.5, 0.2)));
  CHECK_FALSE(archive.insert(entry(1.0, 0, 0.5, 0.2)));  // exact duplicate
  CHECK_FALSE(archive.insert(entry(2.0, 0, 0.5, 0.2)));  // dominated
  CHECK(archive.insert(entry(2.0, 0, 0.4, 0.2)));        // trade-off
  CHECK(archive.insert(entry(0.5, 0, 0.4, 0.1)));        // dominates both
  CHECK(archive.entries().size() == 1);
  for (std::size_t i = 0; i < archive.entries().size(); ++i)
    for (std::size_t j = 0; j < archive.entries().size(); ++j)
      if (i != j)
        CHECK_FALSE(dominates(archive.entries()[i].eval,
                              archive.entries()[j].eval));
}

TEST_CASE("rng: serialization round-trips the stream") {
  Rng a(42);
  a.uniform();
  a.uniform();
  Rng b;
  b.deserialize(a.serialize());
  for (int i = 0; i < 100; ++i) CHECK(a.next_raw() == b.next_raw());
}

TEST_CASE("rng: uniform covers [0,1) and metropolis at T ln2 accepts half") {
  Rng rng(7);
  int below = 0;
  const int n = 10000;
  double accept_p = std::exp(-std::log(2.0));  // delta = T ln 2
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    if (u < accept_p) ++below;
  }
  CHECK(static_cast<double>(below) / n == Catch::Approx(0.5).margin(0.02));
}

TEST_CASE("rng: roulette draw respects cumulative weights") {
  // exclude-by-cost style weights {1, 9}: the pick replays the uniform draw.
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 99ull}) {
    Rng probe(seed);
    double u = probe.uniform();
    Rng actual(seed);
    int pick = actual.pick_weighted({1.0, 9.0});
    CHECK(pick == (u * 10.0 < 1.0 ? 0 : 1));
  }
  Rng rng(5);
  int second = 0;
  for (int i = 0; i < 10000; ++i)
    if (rng.pick_weighted({1.0, 9.0}) == 1) ++second;
  CHECK(second / 10000.0 == Catch::Approx(0.9).margin(0.02));
  CHECK(rng.pick_weighted({0.0, 0.0}) == -1);
  CHECK(rng.pick_weighted({0.0, 3.0}) == 1);  // singleton support
}

TEST_CASE("build_initial rejects candidates that create a runaway") {
  auto model = fixtures::runaway_loop_model();
  std::vector<MediumSpec> media = {fixtures::runaway_medium()};
  MultiFacSearch search(model, media, quick_config(0));
  auto res = search.run();
  const auto& state = res.archive.entries().front().state;
  CHECK(state.available[model.reaction_index("r_amp")] == 0);
  CHECK(state.available[model.reaction_index("r_seed")] == 1);
}

TEST_CASE("zero iterations: archive holds only the initial evaluation") {
  auto model = fixtures::load_fixture_model("search12_model.json");
  auto media = fixtures::load_fixture_media("search12_media.json");
  MultiFacSearch search(model, media, quick_config(0));
  auto res = search.run();
  CHECK(res.log.empty());
  CHECK(res.archive.entries().size() == 1);
  CHECK(res.best_eval.objective ==
        Catch::Approx(res.archive.entries().front().eval.objective));
}

TEST_CASE("forced exclude-runaway follows an accepted runaway move") {
  auto model = fixtures::runaway_loop_model();
  std::vector<MediumSpec> media = {fixtures::runaway_medium()};
  MultiFacSearch search(model, media, quick_config(20, 3));
  auto res = search.run();
  bool saw_add = false;
  bool next_is_runaway_exclude = false;
  for (std::size_t i = 0; i + 1 < res.log.size(); ++i) {
    const auto& rec = res.log[i];
    if (rec.op.rfind("add-", 0) == 0 &&
        (rec.decision == "incumbent" || rec.decision == "new-best")) {
      saw_add = true;
      next_is_runaway_exclude = res.log[i + 1].op == "exclude-runaway";
      break;
    }
  }
  REQUIRE(saw_add);
  CHECK(next_is_runaway_exclude);
}

TEST_CASE("identical seeds give bitwise-identical logs; different seeds differ") {
  auto model = fixtures::load_fixture_model("search12_model.json");
  auto media = fixtures::load_fixture_media("search12_media.json");
  MultiFacSearch a(model, media, quick_config(150, 9));
  MultiFacSearch b(model, media, quick_config(150, 9));
  auto ra = a.run();
  auto rb = b.run();
  CHECK(log_dump(ra) == log_dump(rb));

  MultiFacSearch c(model, media, quick_config(150, 10));
  auto rc = c.run();
  CHECK(log_dump(ra) != log_dump(rc));
}

TEST_CASE("thread counts 1 and 4 produce identical runs") {
  auto model = fixtures::load_fixture_model("search12_model.json");
  auto media = fixtures::load_fixture_media("search12_media.json");
  auto cfg1 = quick_config(120, 4);
  auto cfg4 = quick_config(120, 4);
  cfg4.threads = 4;
  MultiFacSearch s1(model, media, cfg1);
  MultiFacSearch s4(model, media, cfg4);
  auto r1 = s1.run();
  auto r4 = s4.run();
  CHECK(log_dump(r1) == log_dump(r4));
  CHECK(r1.best_eval.objective == r4.best_eval.objective);
}

TEST_CASE("run invariants: gene availability, best monotonicity, tabu replay") {
  auto model = fixtures::load_fixture_model("search12_model.json");
  auto media = fixtures::load_fixture_media("search12_media.json");

  MultiFacSearch init_probe(model, media, quick_config(0, 21));
  auto initial = init_probe.run();
  Evaluation incumbent = initial.archive.entries().front().eval;

  // Long enough for the 500-iteration add tabu to expire, so re-adds (and the
  // forced make-unit that follows them) appear in the log.
  MultiFacSearch search(model, media, quick_config(700, 21));
  auto res = search.run();

  // Gene-indicated reactions available in every archive state and the best.
  auto check_genes = [&](const AvailabilityState& state) {
    for (std::size_t i = 0; i < model.reactions.size(); ++i)
      if (model.reactions[i].gene_indicated) CHECK(state.available[i] == 1);
  };
  for (const auto& e : res.archive.entries()) check_genes(e.state);
  check_genes(res.best_state);

  // Archive is mutually non-dominated.
  const auto& entries = res.archive.entries();
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < entries.size(); ++j)
      if (i != j) CHECK_FALSE(dominates(entries[i].eval, entries[j].eval));

  // New-best objectives are strictly decreasing.
  double best_seen = initial.best_eval.objective;
  for (const auto& rec : res.log)
    if (rec.decision == "new-best") {
      CHECK(rec.objective < best_seen);
      best_seen = rec.objective;
    }
  CHECK(res.best_eval.objective == Catch::Approx(best_seen));

  // Replay the tabu rules over the log: no move touches a tabu reaction.
  TabuList tabu;
  for (const auto& rec : res.log) {
    if (rec.reaction.empty()) continue;
    // Tabu guards availability toggles; make-unit only rewrites a cost.
    if (rec.op != "make-unit")
      CHECK_FALSE(tabu.is_tabu(rec.reaction, rec.iteration));
    bool accepted = rec.decision == "incumbent" || rec.decision == "new-best";
    if (accepted)
      tabu.add(rec.reaction, rec.iteration + 500);
    else if (rec.gme > incumbent.gme)
      tabu.add(rec.reaction, rec.iteration + 200);
    else if (rec.objective > incumbent.objective)
      tabu.add(rec.reaction, rec.iteration + 25);
    if (accepted) {
      incumbent.gme = rec.gme;
      incumbent.objective = rec.objective;
    }
  }

  // The forced make-unit operator shows up once adds start being accepted.
  bool saw_make_unit = false;
  for (const auto& rec : res.log) saw_make_unit |= rec.op == "make-unit";
  CHECK(saw_make_unit);
}

TEST_CASE("checkpoint resume replays the remainder of the run exactly") {
  namespace fs = std::filesystem;
  auto model = fixtures::load_fixture_model("search12_model.json");
  auto media = fixtures::load_fixture_media("search12_media.json");
  fs::path dir = fs::temp_directory_path() / "multifac_ckpt_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  auto cfg = quick_config(250, 17);
  cfg.checkpoint_period = 100;
  cfg.checkpoint_dir = dir.string();
  MultiFacSearch full(model, media, cfg);
  auto full_res = full.run();

  auto resume_cfg = cfg;
  resume_cfg.checkpoint_dir.clear();
  MultiFacSearch resumed(model, media, resume_cfg);
  auto res = resumed.resume((dir / "checkpoint_100.json").string());

  REQUIRE(res.log.size() == 150);
  auto full_dump = log_dump(full_res);
  auto tail = std::vector<std::string>(full_dump.end() - 150, full_dump.end());
  CHECK(log_dump(res) == tail);
  CHECK(res.best_eval.objective == Catch::Approx(full_res.best_eval.objective));
  fs::remove_all(dir);
}
