#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "simnet/influence.hpp"
#include "simnet/ingest.hpp"
#include "simnet/model.hpp"
#include "simnet/similarity.hpp"
#include "simnet/store.hpp"
#include "simnet/synth.hpp"

namespace simnet::testing {

inline Timestamp at(const char* iso) {
  auto t = parse_timestamp(iso);
  if (!t) throw std::runtime_error(std::string("bad test timestamp ") + iso);
  return *t;
}

inline AccountId id(const std::string& name) { return normalize_account(name); }

inline AccountProfile account(const std::string& name, std::uint64_t followers = 100, std::uint64_t following = 10) {
  AccountProfile a;
  a.id = id(name);
  a.display_name = name;
  a.followers = followers;
  a.following = following;
  a.total_tweets = 10;
  a.created_at = at("2012-01-01T00:00:00Z");
  return a;
}

inline TweetRecord tweet(const std::string& tid, const std::string& author, Timestamp when,
                         std::vector<std::string> hashtags = {}, std::vector<std::string> mentions = {},
                         std::vector<std::string> urls = {}) {
  TweetRecord t;
  t.tweet_id = tid;
  t.author = id(author);
  t.created_at = when;
  t.hashtags = std::move(hashtags);
  for (const auto& m : mentions) t.mentions.push_back(id(m));
  t.urls = std::move(urls);
  return t;
}

inline Timestamp default_as_of() { return at("2015-01-01T00:00:00Z"); }

inline GraphStore build_store(const Dataset& ds, Timestamp as_of = default_as_of()) {
  BuildOptions opts;
  opts.as_of = as_of;
  return build(ds, opts);
}

inline std::string export_text(const GraphStore& s) {
  std::ostringstream out;
  export_ntriples(s, out);
  return out.str();
}

/// Small random dataset for the property suites.
inline Dataset random_dataset(std::mt19937_64& rng, std::size_t max_accounts = 8, std::size_t max_pool = 20) {
  std::uniform_int_distribution<std::size_t> accounts(2, max_accounts);
  std::uniform_int_distribution<std::size_t> pool(1, max_pool);
  std::uniform_int_distribution<std::size_t> tweets(1, 6);
  SynthParams p;
  p.accounts = accounts(rng);
  p.tweets_per_account = tweets(rng);
  p.hashtag_pool = pool(rng);
  p.mention_pool = pool(rng);
  p.url_pool = pool(rng);
  p.domain_pool = std::max<std::size_t>(1, pool(rng) / 2);
  p.max_entities_per_tweet = 3;
  p.resolve_rate = 0.6;
  p.follow_rate = 0.2;
  return synth(rng(), p);
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path = std::filesystem::temp_directory_path() / ("simnet-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Published top-15 rows for the examined account: CWC, label, SM.
struct Table3Row {
  const char* name;
  double cwc;
  int label;
  double sm;
};

inline const std::vector<Table3Row>& table3_rows() {
  static const std::vector<Table3Row> rows = {
      {"thanosplevis", 9.848, 4, 9.848},   {"app_117", 6.303, 3, 4.727},        {"mvarvitsiotis", 4.518, 4, 4.518},
      {"vozemberg", 3.913, 4, 3.913},      {"velopky", 3.411, 4, 3.411},        {"evangantonaros", 4.521, 3, 3.390},
      {"vkikilias", 4.292, 3, 3.219},      {"papadimoulis", 4.067, 3, 3.050},   {"aris_spiliotop", 4.052, 3, 3.039},
      {"gkoumoutsakos", 3.776, 3, 2.833},  {"iptamenos23", 3.746, 3, 2.810},    {"terensquick", 3.706, 3, 2.780},
      {"nchatzinikolaou", 2.743, 4, 2.743}, {"panoskammenos", 3.404, 3, 2.553}, {"kgravas", 3.234, 3, 2.425},
  };
  return rows;
}

// Independent scoring straight from the per-category entity sets.
inline SimilarityScore oracle_score(const GraphStore& store, const AccountId& a, const AccountId& b) {
  SimilarityScore s;
  s.examined = a;
  s.other = b;
  std::size_t total = 0;
  for (auto c : kCategories) total += store.entities_of(a, c).size();
  for (auto c : kCategories) {
    const auto& x = store.entities_of(a, c);
    const auto& y = store.entities_of(b, c);
    std::vector<std::string> both;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
    auto& st = s.categories[index_of(c)];
    st.category = c;
    st.e_n_examined = x.size();
    st.e_n_other = y.size();
    st.e_cn = both.size();
    st.e_w = static_cast<double>(x.size()) / static_cast<double>(total);
    st.e_cf = y.empty() ? 0.0 : static_cast<double>(both.size()) / static_cast<double>(y.size());
    st.e_wc = st.e_cf * st.e_w;
    st.e_cc = st.e_cf * static_cast<double>(both.size());
    st.e_cwc = st.e_cf * static_cast<double>(both.size()) * st.e_w;
    s.label += both.empty() ? 0 : 1;
    s.cwc_sum += st.e_cwc;
  }
  s.sm = s.cwc_sum * s.label / 4.0;
  return s;
}

// Scores every other account and sorts the lot.
inline std::vector<SimilarityScore> oracle_top_k(const GraphStore& store, const AccountId& examined, std::size_t k) {
  std::vector<SimilarityScore> all;
  for (const auto& other : store.accounts()) {
    if (other == examined) continue;
    auto s = oracle_score(store, examined, other);
    if (s.label > 0) all.push_back(s);
  }
  std::sort(all.begin(), all.end(), [](const SimilarityScore& x, const SimilarityScore& y) {
    if (x.sm != y.sm) return x.sm > y.sm;
    return x.other < y.other;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

// Every simple cycle by brute force: grow paths from each start, close when
// the next vertex is the start, keep only rotations starting at their minimum.
inline std::vector<std::vector<std::size_t>> brute_force_cycles(const std::vector<std::vector<std::size_t>>& adj,
                                                                std::size_t max_len) {
  std::set<std::vector<std::size_t>> found;
  const std::size_t n = adj.size();
  std::vector<std::size_t> path;
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> walk = [&](std::size_t u) {
    for (std::size_t v : adj[u]) {
      if (v == path.front()) {
        if (path.size() <= max_len && *std::min_element(path.begin(), path.end()) == path.front()) found.insert(path);
      } else if (!used[v] && path.size() < max_len) {
        used[v] = true;
        path.push_back(v);
        walk(v);
        path.pop_back();
        used[v] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    used.assign(n, false);
    used[s] = true;
    walk(s);
  }
  return {found.begin(), found.end()};
}

inline std::int64_t brute_h_index(const std::vector<std::int64_t>& counts) {
  std::int64_t best = 0;
  for (std::int64_t h = 0; h <= static_cast<std::int64_t>(counts.size()); ++h) {
    auto n = std::count_if(counts.begin(), counts.end(), [&](std::int64_t c) { return c >= h; });
    if (n >= h) best = h;
  }
  return best;
}

}  // namespace simnet::testing
