#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <set>
#include <vector>

#include "simnet/error.hpp"
#include "simnet/model.hpp"
#include "simnet/store.hpp"

namespace simnet {

using CategoryCounts = std::array<std::size_t, 4>;
using CategoryWeights = std::array<double, 4>;

struct CategoryStats {
  EntityCategory category = EntityCategory::Hashtag;
  std::size_t e_n_examined = 0;
  std::size_t e_n_other = 0;
  std::size_t e_cn = 0;
  double e_cf = 0.0;   // e_cn / e_n_other
  double e_w = 0.0;    // examined account's usage share of the category
  double e_wc = 0.0;   // e_cf * e_w
  double e_cc = 0.0;   // e_cf * e_cn
  double e_cwc = 0.0;  // e_cf * e_cn * e_w
};

struct SimilarityScore {
  AccountId examined;
  AccountId other;
  std::array<CategoryStats, 4> categories;
  int label = 0;
  double cwc_sum = 0.0;
  double sm = 0.0;

  const CategoryStats& stats(EntityCategory c) const { return categories[index_of(c)]; }
};

/// Share of each category in the account's total distinct entities.
inline CategoryWeights entity_weights(const EntityProfile& profile) {
  const std::size_t total = profile.total();
  if (total == 0)
    throw Error(ErrorKind::NoEntities, "account '" + profile.account().value() + "' has no entities");
  CategoryWeights w{};
  for (auto c : kCategories)
    w[index_of(c)] = static_cast<double>(profile.count(c)) / static_cast<double>(total);
  return w;
}

/// Scores `other` against `examined` given the per-category intersection sizes.
inline SimilarityScore score(const EntityProfile& examined, const EntityProfile& other, const CategoryCounts& common) {
  const CategoryWeights weights = entity_weights(examined);
  SimilarityScore s;
  s.examined = examined.account();
  s.other = other.account();
  for (auto c : kCategories) {
    const std::size_t i = index_of(c);
    CategoryStats& st = s.categories[i];
    st.category = c;
    st.e_n_examined = examined.count(c);
    st.e_n_other = other.count(c);
    st.e_cn = common[i];
    if (st.e_cn > std::min(st.e_n_examined, st.e_n_other))
      throw Error(ErrorKind::InconsistentInput, std::string("common ") + to_string(c) + " count exceeds a total for '" +
                                                    other.account().value() + "'");
    st.e_w = weights[i];
    st.e_cf = st.e_n_other > 0 ? static_cast<double>(st.e_cn) / static_cast<double>(st.e_n_other) : 0.0;
    const auto cn = static_cast<double>(st.e_cn);
    st.e_wc = st.e_cf * st.e_w;
    st.e_cc = st.e_cf * cn;
    st.e_cwc = st.e_cf * cn * st.e_w;
    if (st.e_cn > 0) ++s.label;
    s.cwc_sum += st.e_cwc;
  }
  s.sm = s.cwc_sum * static_cast<double>(s.label) / 4.0;
  return s;
}

inline SimilarityScore score(const GraphStore& store, const AccountId& examined, const AccountId& other) {
  CategoryCounts common{};
  for (auto c : kCategories) common[index_of(c)] = store.common_entity_count(examined, other, c);
  return score(store.profile(examined), store.profile(other), common);
}

/// Ranking order: higher SM first, then account id ascending.
inline bool ranks_before(const SimilarityScore& a, const SimilarityScore& b) {
  if (a.sm != b.sm) return a.sm > b.sm;
  return a.other < b.other;
}

/// Every account sharing at least one entity with `examined`, excluding itself.
inline std::set<AccountId> candidates(const GraphStore& store, const AccountId& examined) {
  std::set<AccountId> out;
  for (auto c : kCategories) {
    for (const auto& e : store.entities_of(examined, c)) {
      const auto& users = store.accounts_including(e, c);
      out.insert(users.begin(), users.end());
    }
  }
  out.erase(examined);
  return out;
}

/// The k accounts most similar to `examined`, best first.
inline std::vector<SimilarityScore> top_k_similar(const GraphStore& store, const AccountId& examined, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "k must be at least 1");
  const EntityProfile& self = store.profile(examined);
  entity_weights(self);  // rejects accounts without entities

  std::vector<SimilarityScore> scored;
  for (const auto& other : candidates(store, examined)) scored.push_back(score(store, examined, other));
  const std::size_t n = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n), scored.end(), ranks_before);
  scored.resize(n);
  return scored;
}

}  // namespace simnet
