#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <fstream>
#include <functional>
#include <future>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "simnet/error.hpp"
#include "simnet/model.hpp"

namespace simnet {

using Warn = std::function<void(const std::string&)>;

struct FollowEdge {
  AccountId follower;
  AccountId followee;

  friend bool operator==(const FollowEdge&, const FollowEdge&) = default;
};

struct Dataset {
  std::vector<AccountProfile> accounts;
  std::vector<TweetRecord> tweets;
  std::vector<FollowEdge> follows;
  std::map<std::string, std::string> url_map;  // short -> full

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct UrlResource {
  std::string short_url;
  std::optional<std::string> full_url;
  std::optional<std::string> domain;

  friend bool operator==(const UrlResource&, const UrlResource&) = default;
};

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline std::string get_string(const json& obj, const char* key, std::size_t line, bool required,
                              std::string fallback = {}) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw ParseError(line, std::string("missing field '") + key + "'");
    return fallback;
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return it->dump();
  throw ParseError(line, std::string("field '") + key + "' must be a string");
}

inline std::uint64_t get_count(const json& obj, const char* key, std::size_t line, bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw ParseError(line, std::string("missing field '") + key + "'");
    return 0;
  }
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer()) {
    auto v = it->get<std::int64_t>();
    if (v < 0) throw ParseError(line, std::string("field '") + key + "' must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  throw ParseError(line, std::string("field '") + key + "' must be an integer");
}

inline bool get_flag(const json& obj, const char* key, std::size_t line, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) throw ParseError(line, std::string("field '") + key + "' must be a boolean");
  return it->get<bool>();
}

inline std::optional<double> get_optional_real(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw ParseError(line, std::string("field '") + key + "' must be a number");
  double v = it->get<double>();
  if (v < 0) throw ParseError(line, std::string("field '") + key + "' must be non-negative");
  return v;
}

inline Timestamp get_time(const json& obj, const char* key, std::size_t line) {
  auto text = get_string(obj, key, line, true);
  auto ts = parse_timestamp(text);
  if (!ts) throw ParseError(line, std::string("field '") + key + "' is not an ISO-8601 timestamp: " + text);
  return *ts;
}

inline std::vector<std::string> get_strings(const json& obj, const char* key, std::size_t line) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw ParseError(line, std::string("field '") + key + "' must be an array");
  for (const auto& v : *it) {
    if (!v.is_string()) throw ParseError(line, std::string("field '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <class F>
auto at_line(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

inline AccountProfile parse_account(const json& obj, std::size_t line) {
  AccountProfile a;
  a.id = at_line(line, [&] { return normalize_account(get_string(obj, "screen_name", line, true)); });
  a.display_name = get_string(obj, "display_name", line, false);
  a.description = get_string(obj, "description", line, false);
  a.followers = get_count(obj, "followers", line, true);
  a.following = get_count(obj, "following", line, true);
  a.total_tweets = get_count(obj, "total_tweets", line, true);
  a.created_at = get_time(obj, "created_at", line);
  a.locked = get_flag(obj, "locked", line, false);
  a.active = get_flag(obj, "active", line, true);
  a.h_index_rt_daily = get_optional_real(obj, "h_index_rt_daily", line);
  a.h_index_fav_daily = get_optional_real(obj, "h_index_fav_daily", line);
  return a;
}

inline TweetRecord parse_tweet(const json& obj, std::size_t line) {
  TweetRecord t;
  t.tweet_id = get_string(obj, "id", line, true);
  if (t.tweet_id.empty()) throw ParseError(line, "empty tweet id");
  t.author = at_line(line, [&] { return normalize_account(get_string(obj, "author", line, true)); });
  t.created_at = get_time(obj, "created_at", line);
  t.retweets = get_count(obj, "retweets", line, false);
  t.favorites = get_count(obj, "favorites", line, false);
  t.is_retweet = get_flag(obj, "is_retweet", line, false);
  auto reply = get_string(obj, "reply_to", line, false);
  if (!reply.empty()) t.reply_to = at_line(line, [&] { return normalize_account(reply); });
  for (const auto& h : get_strings(obj, "hashtags", line))
    t.hashtags.push_back(at_line(line, [&] { return normalize_hashtag(h); }));
  for (const auto& m : get_strings(obj, "mentions", line))
    t.mentions.push_back(at_line(line, [&] { return normalize_account(m); }));
  for (auto u : get_strings(obj, "urls", line)) {
    u = std::string(detail::trim(u));
    if (!is_absolute_url(u)) throw ParseError(line, "not an absolute URL: " + u);
    t.urls.push_back(std::move(u));
  }
  for (auto u : get_strings(obj, "images", line)) {
    u = std::string(detail::trim(u));
    if (!is_absolute_url(u)) throw ParseError(line, "not an absolute image URL: " + u);
    t.images.push_back(std::move(u));
  }
  return t;
}

}  // namespace detail

/// Reads a JSON Lines dataset. Blank lines are ignored.
inline Dataset read_dataset(std::istream& in, const Warn& warn = {}) {
  Dataset ds;
  std::unordered_map<std::string, std::size_t> account_slot;
  std::unordered_map<std::string, std::size_t> tweet_line;
  std::vector<std::size_t> tweet_lines;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (detail::trim(text).empty()) continue;
    detail::json obj;
    try {
      obj = detail::json::parse(text);
    } catch (const detail::json::exception& e) {
      throw ParseError(line, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line, "record is not a JSON object");
    auto type = detail::get_string(obj, "type", line, true);
    if (type == "account") {
      auto a = detail::parse_account(obj, line);
      auto [it, fresh] = account_slot.emplace(a.id.value(), ds.accounts.size());
      if (fresh) {
        ds.accounts.push_back(std::move(a));
      } else {
        if (warn) warn("line " + std::to_string(line) + ": duplicate account '" + a.id.value() + "', last wins");
        ds.accounts[it->second] = std::move(a);
      }
    } else if (type == "tweet") {
      auto t = detail::parse_tweet(obj, line);
      auto [it, fresh] = tweet_line.emplace(t.tweet_id, line);
      if (!fresh)
        throw ParseError(line, "duplicate tweet id '" + t.tweet_id + "' (first seen on line " +
                                   std::to_string(it->second) + ")",
                         ErrorKind::Integrity);
      tweet_lines.push_back(line);
      ds.tweets.push_back(std::move(t));
    } else if (type == "follow") {
      FollowEdge f;
      f.follower = detail::at_line(line, [&] { return normalize_account(detail::get_string(obj, "follower", line, true)); });
      f.followee = detail::at_line(line, [&] { return normalize_account(detail::get_string(obj, "followee", line, true)); });
      ds.follows.push_back(std::move(f));
    } else {
      throw ParseError(line, "unknown record type '" + type + "'");
    }
  }
  for (std::size_t i = 0; i < ds.tweets.size(); ++i) {
    if (!account_slot.count(ds.tweets[i].author.value()))
      throw ParseError(tweet_lines[i], "tweet author '" + ds.tweets[i].author.value() + "' has no account record",
                       ErrorKind::Integrity);
  }
  return ds;
}

/// Reads a two-column TSV (short TAB full). Later duplicates win.
inline std::map<std::string, std::string> read_url_map(std::istream& in, const Warn& warn = {}) {
  std::map<std::string, std::string> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (detail::trim(text).empty()) continue;
    auto tab = text.find('\t');
    if (tab == std::string::npos || text.find('\t', tab + 1) != std::string::npos)
      throw ParseError(line, "expected two tab-separated columns");
    std::string short_url(detail::trim(std::string_view(text).substr(0, tab)));
    std::string full_url(detail::trim(std::string_view(text).substr(tab + 1)));
    if (!is_absolute_url(short_url)) throw ParseError(line, "not an absolute URL: " + short_url);
    if (!is_absolute_url(full_url)) throw ParseError(line, "not an absolute URL: " + full_url);
    auto [it, fresh] = out.emplace(short_url, full_url);
    if (!fresh && it->second != full_url) {
      if (warn) warn("line " + std::to_string(line) + ": '" + short_url + "' remapped, last wins");
      it->second = full_url;
    }
  }
  return out;
}

inline Dataset load(const std::string& dataset_path, const std::optional<std::string>& url_map_path,
                    const Warn& warn = {}) {
  std::ifstream in(dataset_path);
  if (!in) throw Error(ErrorKind::Io, "cannot open dataset '" + dataset_path + "'");
  Dataset ds = read_dataset(in, warn);
  if (url_map_path) {
    std::ifstream map_in(*url_map_path);
    if (!map_in) throw Error(ErrorKind::Io, "cannot open URL map '" + *url_map_path + "'");
    ds.url_map = read_url_map(map_in, warn);
  }
  return ds;
}

/// Writes the dataset back as JSON Lines: accounts, then tweets, then follows.
inline void write_dataset(std::ostream& out, const Dataset& ds) {
  using detail::ordered_json;
  for (const auto& a : ds.accounts) {
    ordered_json j;
    j["type"] = "account";
    j["screen_name"] = a.id.value();
    j["display_name"] = a.display_name;
    j["description"] = a.description;
    j["followers"] = a.followers;
    j["following"] = a.following;
    j["total_tweets"] = a.total_tweets;
    j["created_at"] = format_timestamp(a.created_at);
    j["locked"] = a.locked;
    j["active"] = a.active;
    if (a.h_index_rt_daily) j["h_index_rt_daily"] = *a.h_index_rt_daily;
    if (a.h_index_fav_daily) j["h_index_fav_daily"] = *a.h_index_fav_daily;
    out << j.dump() << '\n';
  }
  for (const auto& t : ds.tweets) {
    ordered_json j;
    j["type"] = "tweet";
    j["id"] = t.tweet_id;
    j["author"] = t.author.value();
    j["created_at"] = format_timestamp(t.created_at);
    j["retweets"] = t.retweets;
    j["favorites"] = t.favorites;
    j["is_retweet"] = t.is_retweet;
    j["reply_to"] = t.reply_to ? ordered_json(t.reply_to->value()) : ordered_json(nullptr);
    j["hashtags"] = t.hashtags;
    auto mentions = ordered_json::array();
    for (const auto& m : t.mentions) mentions.push_back(m.value());
    j["mentions"] = mentions;
    j["urls"] = t.urls;
    j["images"] = t.images;
    out << j.dump() << '\n';
  }
  for (const auto& f : ds.follows) {
    ordered_json j;
    j["type"] = "follow";
    j["follower"] = f.follower.value();
    j["followee"] = f.followee.value();
    out << j.dump() << '\n';
  }
}

inline void write_url_map(std::ostream& out, const std::map<std::string, std::string>& url_map) {
  for (const auto& [s, f] : url_map) out << s << '\t' << f << '\n';
}

enum class ResolverMode { OfflineMapOnly, OfflineThenRemote };

struct ResolverPolicy {
  ResolverMode mode = ResolverMode::OfflineMapOnly;
  std::chrono::milliseconds timeout{5000};
  int retries = 1;
  std::size_t max_in_flight = 8;
  bool strip_www = true;
};

/// Remote resolution hook: returns the expanded URL or nullopt. May throw.
using UrlResolver = std::function<std::optional<std::string>(const std::string& short_url)>;

/// Distinct tweet URLs in first-seen order.
inline std::vector<std::string> distinct_urls(const Dataset& ds) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& t : ds.tweets) {
    for (const auto& u : t.urls) {
      if (seen.insert(u).second) out.push_back(u);
    }
  }
  return out;
}

/// Fills url_map for unmapped tweet URLs using `remote` (only in OfflineThenRemote
/// mode). Failures leave the URL unresolved and are reported through `warn`.
inline Dataset resolve_urls(Dataset ds, const ResolverPolicy& policy, const UrlResolver& remote = {},
                            const Warn& warn = {}) {
  if (policy.mode == ResolverMode::OfflineMapOnly || !remote) return ds;

  std::vector<std::string> pending;
  for (const auto& u : distinct_urls(ds)) {
    if (!ds.url_map.count(u)) pending.push_back(u);
  }

  auto attempt = [&](const std::string& url) -> std::pair<std::optional<std::string>, std::string> {
    std::string last_error = "resolver returned nothing";
    for (int i = 0; i <= std::max(0, policy.retries); ++i) {
      try {
        if (auto full = remote(url)) {
          if (is_absolute_url(*full)) return {full, {}};
          last_error = "resolver returned a non-absolute URL";
        }
      } catch (const std::exception& e) {
        last_error = e.what();
      }
    }
    return {std::nullopt, last_error};
  };

  const std::size_t width = std::max<std::size_t>(1, policy.max_in_flight);
  std::vector<std::pair<std::optional<std::string>, std::string>> results(pending.size());
  for (std::size_t start = 0; start < pending.size(); start += width) {
    const std::size_t end = std::min(pending.size(), start + width);
    std::vector<std::future<std::pair<std::optional<std::string>, std::string>>> batch;
    for (std::size_t i = start; i < end; ++i)
      batch.push_back(std::async(std::launch::async, attempt, std::cref(pending[i])));
    for (std::size_t i = start; i < end; ++i) results[i] = batch[i - start].get();
  }
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (results[i].first) {
      ds.url_map.emplace(pending[i], *results[i].first);
    } else if (warn) {
      warn("could not resolve '" + pending[i] + "': " + results[i].second);
    }
  }
  return ds;
}

/// UrlResource for every distinct tweet URL. Only mapped URLs get a domain.
inline std::map<std::string, UrlResource> url_resources(const Dataset& ds, bool strip_www = true,
                                                        const Warn& warn = {}) {
  std::map<std::string, UrlResource> out;
  for (const auto& u : distinct_urls(ds)) {
    UrlResource r{u, std::nullopt, std::nullopt};
    if (auto it = ds.url_map.find(u); it != ds.url_map.end()) {
      r.full_url = it->second;
      try {
        r.domain = extract_domain(it->second, strip_www);
      } catch (const Error& e) {
        if (warn) warn(e.what());
      }
    }
    out.emplace(u, std::move(r));
  }
  return out;
}

}  // namespace simnet
