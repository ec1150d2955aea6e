// Taxonomy-informed reaction costs: how often do increasingly distant
// relatives of the target organism use a reaction, mapped through
// rank-specific cost ranges on an inverse linear scale.
#ifndef MULTIFAC_TAXCOST_HPP
#define MULTIFAC_TAXCOST_HPP

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace multifac {

enum class Rank { Species = 0, Genus, Family, Order, Class, Phylum };

inline constexpr std::array<const char*, 6> kRankNames = {
    "species", "genus", "family", "order", "class", "phylum"};

struct RankCostRange {
  Rank rank;
  double lower;  // l_k
  double upper;  // u_k
};

inline constexpr std::array<RankCostRange, 6> kRankCostRanges = {{
    {Rank::Species, 1.0, 2.0},
    {Rank::Genus, 2.0, 10.0},
    {Rank::Family, 10.0, 50.0},
    {Rank::Order, 50.0, 250.0},
    {Rank::Class, 250.0, 1250.0},
    {Rank::Phylum, 1250.0, 6250.0},
}};

// Cost for a reaction seen in no reference model at any rank.
inline constexpr double kUnseenReactionCost = 6250.0;

struct TaxonomyRecord {
  std::string model_id;
  std::array<std::string, 6> rank_labels;  // indexed by Rank
  std::set<std::string> reaction_ids;

  bool complete() const {
    return std::all_of(rank_labels.begin(), rank_labels.end(),
                       [](const std::string& s) { return !s.empty(); });
  }
};

// Label agreement at rank k itself; "matches first at k" is derived by
// callers as matches(k) && !matches(k-1).
inline bool matches(const TaxonomyRecord& record, const TaxonomyRecord& target,
                    Rank rank) {
  int k = static_cast<int>(rank);
  return record.rank_labels[k] == target.rank_labels[k];
}

struct TaxCostResult {
  std::map<std::string, double> costs;
  bool no_matching_rank = false;  // m^k == 0 for every rank
};

inline TaxCostResult reaction_costs(const std::vector<TaxonomyRecord>& db,
                                    const TaxonomyRecord& target,
                                    const std::set<std::string>& universe) {
  if (db.empty()) throw std::invalid_argument("empty taxonomy database");
  TaxCostResult out;
  out.no_matching_rank = true;
  // Per rank: the matching pool and per-reaction usage counts.
  std::array<int, 6> pool_size{};
  std::array<std::map<std::string, int>, 6> usage;
  for (const auto& rec : db) {
    for (int k = 0; k < 6; ++k) {
      if (!matches(rec, target, static_cast<Rank>(k))) continue;
      ++pool_size[k];
      for (const auto& rid : rec.reaction_ids)
        if (universe.count(rid)) ++usage[k][rid];
    }
  }
  for (int k = 0; k < 6; ++k)
    if (pool_size[k] > 0) out.no_matching_rank = false;
  // Reactions absent from every reference model keep the phylum upper cost.
  std::set<std::string> seen_anywhere;
  for (const auto& rec : db)
    for (const auto& rid : rec.reaction_ids)
      if (universe.count(rid)) seen_anywhere.insert(rid);
  for (const auto& rid : universe) {
    if (!seen_anywhere.count(rid)) {
      out.costs[rid] = kUnseenReactionCost;
      continue;
    }
    double w = kUnseenReactionCost;
    for (int k = 0; k < 6; ++k) {
      if (pool_size[k] == 0) continue;  // empty pool: skipped, not p = 0
      auto it = usage[k].find(rid);
      double p = it == usage[k].end()
                     ? 0.0
                     : static_cast<double>(it->second) / pool_size[k];
      double wk = kRankCostRanges[k].lower +
                  (1.0 - p) * (kRankCostRanges[k].upper - kRankCostRanges[k].lower);
      w = std::min(w, wk);
    }
    out.costs[rid] = w;
  }
  return out;
}

}  // namespace multifac

#endif  // MULTIFAC_TAXCOST_HPP
