#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "simnet/error.hpp"
#include "simnet/ingest.hpp"
#include "simnet/model.hpp"

namespace simnet {

/// Per-category counts in Hashtag, Mention, Url, Domain order.
using SynthCounts = std::array<std::size_t, 4>;

struct OverlapRow {
  std::string name;
  SynthCounts totals;
  SynthCounts common;  // intersection with the examined account
};

/// Exact construction target: one examined account plus accounts whose totals
/// and intersections with it are prescribed.
struct OverlapSpec {
  std::string examined;
  SynthCounts examined_totals;
  std::vector<OverlapRow> rows;
};

struct SynthParams {
  std::size_t accounts = 20;
  std::size_t tweets_per_account = 30;
  std::size_t hashtag_pool = 40;
  std::size_t mention_pool = 40;
  std::size_t url_pool = 60;
  std::size_t domain_pool = 15;
  std::size_t max_entities_per_tweet = 3;
  double resolve_rate = 0.7;
  double follow_rate = 0.1;
};

namespace detail {

class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 engine_;
};

inline std::string padded(std::size_t n, int width = 4) {
  std::string s = std::to_string(n);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

inline std::string host_safe(std::string s) {
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

inline Timestamp synth_epoch() { return *parse_timestamp("2014-10-13T00:00:00Z"); }

inline AccountProfile synth_profile(const std::string& name, std::size_t tweet_count, SynthRng& rng) {
  AccountProfile a;
  a.id = normalize_account(name);
  a.display_name = name;
  a.description = "synthetic account " + name;
  a.followers = 10 + rng.below(100000);
  a.following = 1 + rng.below(5000);
  a.total_tweets = tweet_count + rng.below(20000);
  a.created_at = *parse_timestamp("2011-01-01T00:00:00Z") + std::chrono::days(rng.below(700));
  return a;
}

// Spreads entity lists over tweets, at most `per_tweet` of each category per tweet.
inline void emit_tweets(Dataset& ds, const AccountId& author, const std::vector<std::string>& hashtags,
                        const std::vector<std::string>& mentions, const std::vector<std::string>& urls,
                        std::size_t per_tweet, SynthRng& rng) {
  const std::size_t longest = std::max({hashtags.size(), mentions.size(), urls.size()});
  const std::size_t count = std::max<std::size_t>(1, (longest + per_tweet - 1) / per_tweet);
  for (std::size_t n = 0; n < count; ++n) {
    TweetRecord t;
    t.tweet_id = author.value() + "-" + padded(n);
    t.author = author;
    t.created_at = synth_epoch() + std::chrono::hours(n);
    t.retweets = rng.below(200);
    t.favorites = rng.below(200);
    auto slice = [&](const std::vector<std::string>& from, auto&& sink) {
      for (std::size_t i = n * per_tweet; i < std::min(from.size(), (n + 1) * per_tweet); ++i) sink(from[i]);
    };
    slice(hashtags, [&](const std::string& h) { t.hashtags.push_back(h); });
    slice(mentions, [&](const std::string& m) { t.mentions.push_back(normalize_account(m)); });
    slice(urls, [&](const std::string& u) { t.urls.push_back(u); });
    ds.tweets.push_back(std::move(t));
  }
}

}  // namespace detail

/// Builds a dataset realizing `spec` exactly: per-category distinct totals of
/// every account and intersections of every row with the examined account.
inline Dataset synth_overlap(const OverlapSpec& spec, std::uint64_t seed = 0) {
  using detail::padded;
  constexpr std::size_t H = 0, M = 1, U = 2, D = 3;
  const SynthCounts& ex = spec.examined_totals;

  std::size_t max_shared_urls = 0;
  for (const auto& row : spec.rows) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (row.common[c] > row.totals[c] || row.common[c] > ex[c])
        throw Error(ErrorKind::Parameter, "row '" + row.name + "': intersection exceeds a total");
    }
    if (ex[D] > 0 && row.common[U] > 0 && row.common[D] == 0)
      throw Error(ErrorKind::Parameter, "row '" + row.name + "': shared URLs need a shared domain");
    if (row.totals[D] > 0 && row.totals[U] == 0)
      throw Error(ErrorKind::Parameter, "row '" + row.name + "': domains need URLs");
    max_shared_urls = std::max(max_shared_urls, row.common[U]);
  }
  if (ex[D] > 0 && ex[U] < max_shared_urls + ex[D])
    throw Error(ErrorKind::Parameter, "examined account has too few URLs to cover its domains");

  detail::SynthRng rng(seed);
  Dataset ds;

  std::vector<std::string> ex_tags, ex_mentions, ex_urls, ex_domains;
  for (std::size_t j = 0; j < ex[H]; ++j) ex_tags.push_back("tag" + padded(j));
  for (std::size_t j = 0; j < ex[M]; ++j) ex_mentions.push_back("m_" + padded(j));
  for (std::size_t j = 0; j < ex[U]; ++j) ex_urls.push_back("http://sho.rt/e" + padded(j));
  for (std::size_t j = 0; j < ex[D]; ++j) ex_domains.push_back("d" + padded(j) + ".example.com");
  for (std::size_t j = 0; j < ex[U] && ex[D] > 0; ++j) {
    const std::string& dom = j < max_shared_urls ? ex_domains[0] : ex_domains[(j - max_shared_urls) % ex[D]];
    ds.url_map[ex_urls[j]] = "http://" + dom + "/e" + padded(j);
  }

  const std::size_t per_tweet = 10;
  auto examined = normalize_account(spec.examined);
  ds.accounts.push_back(detail::synth_profile(spec.examined, 1, rng));
  detail::emit_tweets(ds, examined, ex_tags, ex_mentions, ex_urls, per_tweet, rng);

  for (const auto& row : spec.rows) {
    const std::string base = normalize_account(row.name).value();
    std::vector<std::string> tags(ex_tags.begin(), ex_tags.begin() + static_cast<std::ptrdiff_t>(row.common[H]));
    for (std::size_t j = row.common[H]; j < row.totals[H]; ++j) tags.push_back(base + "_tag" + padded(j));
    std::vector<std::string> mentions(ex_mentions.begin(),
                                      ex_mentions.begin() + static_cast<std::ptrdiff_t>(row.common[M]));
    for (std::size_t j = row.common[M]; j < row.totals[M]; ++j) mentions.push_back(base + "_m" + padded(j));
    std::vector<std::string> urls(ex_urls.begin(), ex_urls.begin() + static_cast<std::ptrdiff_t>(row.common[U]));

    std::vector<std::string> domains(ex_domains.begin(), ex_domains.begin() + static_cast<std::ptrdiff_t>(row.common[D]));
    for (std::size_t j = row.common[D]; j < row.totals[D]; ++j)
      domains.push_back(detail::host_safe(base) + "-d" + padded(j) + ".example.org");

    // Shared URLs already land on domains[0]; private URLs must reach the rest.
    const bool first_covered = row.common[U] > 0 && ex[D] > 0;
    std::vector<std::string> uncovered(domains.begin() + (first_covered ? 1 : 0), domains.end());
    const std::size_t private_urls = row.totals[U] - row.common[U];
    if (!domains.empty() && private_urls < uncovered.size())
      throw Error(ErrorKind::Parameter, "row '" + row.name + "': too few URLs to cover its domains");
    for (std::size_t j = 0; j < private_urls; ++j) {
      const std::string u = "http://sho.rt/" + base + "-" + padded(j);
      urls.push_back(u);
      if (domains.empty()) continue;
      const std::string& dom = j < uncovered.size() ? uncovered[j] : domains[(j - uncovered.size()) % domains.size()];
      ds.url_map[u] = "http://" + dom + "/" + base + "-" + padded(j);
    }

    auto id = normalize_account(row.name);
    ds.accounts.push_back(detail::synth_profile(row.name, 1, rng));
    detail::emit_tweets(ds, id, tags, mentions, urls, per_tweet, rng);
  }
  return ds;
}

/// Per-account totals and intersections of the reference top-15 ranking,
/// with examined-account totals (16, 90, 127, 21) whose category shares match
/// the weights implied by that table.
inline OverlapSpec table3_spec() {
  OverlapSpec spec;
  spec.examined = "adonisgeorgiadi";
  spec.examined_totals = {16, 90, 127, 21};
  auto row = [&](const char* name, std::size_t ht, std::size_t hc, std::size_t mt, std::size_t mc, std::size_t ut,
                 std::size_t uc, std::size_t dt, std::size_t dc) {
    spec.rows.push_back({name, {ht, mt, ut, dt}, {hc, mc, uc, dc}});
  };
  row("thanosplevis", 3, 2, 98, 50, 130, 9, 5, 5);
  row("app_117", 18, 5, 59, 29, 52, 0, 23, 18);
  row("mvarvitsiotis", 37, 6, 83, 32, 303, 1, 1, 1);
  row("vozemberg", 40, 3, 65, 26, 93, 3, 2, 2);
  row("velopky", 25, 4, 373, 57, 410, 4, 5, 4);
  row("evangantonaros", 2, 2, 29, 18, 63, 0, 23, 11);
  row("vkikilias", 59, 4, 74, 29, 309, 0, 3, 3);
  row("papadimoulis", 55, 5, 128, 38, 402, 0, 2, 1);
  row("aris_spiliotop", 20, 3, 37, 19, 65, 0, 21, 12);
  row("gkoumoutsakos", 9, 1, 46, 22, 51, 0, 2, 1);
  row("iptamenos23", 10, 2, 71, 27, 45, 0, 1, 1);
  row("terensquick", 34, 2, 313, 57, 923, 0, 4, 1);
  row("nchatzinikolaou", 68, 7, 309, 47, 1175, 6, 5, 3);
  row("panoskammenos", 0, 0, 134, 35, 249, 3, 9, 4);
  row("kgravas", 18, 1, 16, 12, 88, 0, 2, 1);
  return spec;
}

inline Dataset synth_table3(std::uint64_t seed = 0) { return synth_overlap(table3_spec(), seed); }

/// Random dataset drawn from shared entity pools.
inline Dataset synth(std::uint64_t seed, const SynthParams& p) {
  if (p.accounts == 0 || p.tweets_per_account == 0 || p.hashtag_pool == 0 || p.mention_pool == 0 ||
      p.url_pool == 0 || p.domain_pool == 0 || p.max_entities_per_tweet == 0)
    throw Error(ErrorKind::Parameter, "synthetic dataset parameters must be positive");
  if (p.resolve_rate < 0.0 || p.resolve_rate > 1.0 || p.follow_rate < 0.0 || p.follow_rate > 1.0)
    throw Error(ErrorKind::Parameter, "rates must lie in [0, 1]");

  using detail::padded;
  detail::SynthRng rng(seed);
  Dataset ds;
  std::vector<AccountId> ids;
  for (std::size_t i = 0; i < p.accounts; ++i) {
    ds.accounts.push_back(detail::synth_profile("user" + padded(i, 3), p.tweets_per_account, rng));
    ids.push_back(ds.accounts.back().id);
  }
  for (std::size_t x = 0; x < p.url_pool; ++x) {
    if (rng.chance(p.resolve_rate))
      ds.url_map["http://sho.rt/u" + padded(x)] =
          "http://www.dom" + padded(x % p.domain_pool, 2) + ".example.com/p" + padded(x);
  }
  for (std::size_t i = 0; i < p.accounts; ++i) {
    for (std::size_t n = 0; n < p.tweets_per_account; ++n) {
      TweetRecord t;
      t.tweet_id = ids[i].value() + "-" + padded(n);
      t.author = ids[i];
      t.created_at = detail::synth_epoch() + std::chrono::minutes(37 * (n + 1) + i);
      t.retweets = rng.below(300);
      t.favorites = rng.below(300);
      t.is_retweet = rng.chance(0.2);
      if (rng.chance(0.15)) t.reply_to = ids[rng.below(ids.size())];
      for (std::size_t e = rng.below(p.max_entities_per_tweet + 1); e > 0; --e)
        t.hashtags.push_back("h" + padded(rng.below(p.hashtag_pool)));
      for (std::size_t e = rng.below(p.max_entities_per_tweet + 1); e > 0; --e)
        t.mentions.push_back(normalize_account("mention" + padded(rng.below(p.mention_pool))));
      for (std::size_t e = rng.below(p.max_entities_per_tweet + 1); e > 0; --e)
        t.urls.push_back("http://sho.rt/u" + padded(rng.below(p.url_pool)));
      if (rng.chance(0.05)) t.images.push_back("http://pic.example.com/" + t.tweet_id + ".jpg");
      ds.tweets.push_back(std::move(t));
    }
  }
  for (std::size_t a = 0; a < p.accounts; ++a) {
    for (std::size_t b = 0; b < p.accounts; ++b) {
      if (a != b && rng.chance(p.follow_rate)) ds.follows.push_back({ids[a], ids[b]});
    }
  }
  return ds;
}

}  // namespace simnet
