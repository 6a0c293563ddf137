#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/ustring.h>
#include <unicode/utypes.h>

#include "simnet/error.hpp"

namespace simnet {

using Timestamp = std::chrono::sys_seconds;

namespace detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Full Unicode lowercase mapping (root locale), including the context-sensitive
// final sigma. Returns nullopt when the input is not valid UTF-8.
inline std::optional<std::string> unicode_lower(std::string_view utf8) {
  if (utf8.empty()) return std::string{};
  UErrorCode status = U_ZERO_ERROR;
  int32_t wide_len = 0;
  u_strFromUTF8(nullptr, 0, &wide_len, utf8.data(), static_cast<int32_t>(utf8.size()), &status);
  if (status != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(status)) return std::nullopt;
  std::u16string wide(static_cast<std::size_t>(wide_len), u'\0');
  status = U_ZERO_ERROR;
  u_strFromUTF8(reinterpret_cast<UChar*>(wide.data()), wide_len, nullptr, utf8.data(),
                static_cast<int32_t>(utf8.size()), &status);
  if (U_FAILURE(status)) return std::nullopt;

  std::u16string lowered(wide.size() + 8, u'\0');
  for (;;) {
    status = U_ZERO_ERROR;
    int32_t n = u_strToLower(reinterpret_cast<UChar*>(lowered.data()),
                             static_cast<int32_t>(lowered.size()),
                             reinterpret_cast<const UChar*>(wide.data()),
                             static_cast<int32_t>(wide.size()), "", &status);
    if (status == U_BUFFER_OVERFLOW_ERROR) {
      lowered.assign(static_cast<std::size_t>(n), u'\0');
      continue;
    }
    if (U_FAILURE(status)) return std::nullopt;
    lowered.resize(static_cast<std::size_t>(n));
    break;
  }

  status = U_ZERO_ERROR;
  int32_t out_len = 0;
  u_strToUTF8(nullptr, 0, &out_len, reinterpret_cast<const UChar*>(lowered.data()),
              static_cast<int32_t>(lowered.size()), &status);
  if (status != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(status)) return std::nullopt;
  std::string out(static_cast<std::size_t>(out_len), '\0');
  status = U_ZERO_ERROR;
  u_strToUTF8(out.data(), out_len, nullptr, reinterpret_cast<const UChar*>(lowered.data()),
              static_cast<int32_t>(lowered.size()), &status);
  if (U_FAILURE(status)) return std::nullopt;
  return out;
}

template <class Int>
bool parse_fixed_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

/// Parses ISO-8601 timestamps of the form YYYY-MM-DDTHH:MM:SS[.fraction](Z|+HH:MM|-HH:MM).
/// A space is accepted in place of 'T'. Fractional seconds are truncated.
inline std::optional<Timestamp> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  text = detail::trim(text);
  if (text.size() < 20) return std::nullopt;
  if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
      text[13] != ':' || text[16] != ':')
    return std::nullopt;
  int y = 0;
  unsigned mo = 0, d = 0;
  int hh = 0, mm = 0, ss = 0;
  if (!detail::parse_fixed_int(text.substr(0, 4), y) ||
      !detail::parse_fixed_int(text.substr(5, 2), mo) ||
      !detail::parse_fixed_int(text.substr(8, 2), d) ||
      !detail::parse_fixed_int(text.substr(11, 2), hh) ||
      !detail::parse_fixed_int(text.substr(14, 2), mm) ||
      !detail::parse_fixed_int(text.substr(17, 2), ss))
    return std::nullopt;
  year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) return std::nullopt;

  std::string_view rest = text.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t i = 1;
    while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
    if (i == 1) return std::nullopt;
    rest.remove_prefix(i);
  }
  int offset_minutes = 0;
  if (rest == "Z") {
    offset_minutes = 0;
  } else if (rest.size() == 6 && (rest[0] == '+' || rest[0] == '-') && rest[3] == ':') {
    int oh = 0, om = 0;
    if (!detail::parse_fixed_int(rest.substr(1, 2), oh) ||
        !detail::parse_fixed_int(rest.substr(4, 2), om) || oh > 23 || om > 59)
      return std::nullopt;
    offset_minutes = (oh * 60 + om) * (rest[0] == '-' ? -1 : 1);
  } else {
    return std::nullopt;
  }
  auto tp = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} - minutes{offset_minutes};
  return time_point_cast<seconds>(tp);
}

inline std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  auto day_point = floor<days>(ts);
  year_month_day ymd{day_point};
  hh_mm_ss hms{ts - day_point};
  char buf[80];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

/// Normalized screen name: lowercase, no leading '@', no whitespace.
class AccountId {
 public:
  AccountId() = default;

  const std::string& value() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const AccountId&, const AccountId&) = default;
  friend bool operator==(const AccountId&, const AccountId&) = default;

 private:
  friend AccountId normalize_account(std::string_view raw);
  explicit AccountId(std::string v) : value_(std::move(v)) {}
  std::string value_;
};

inline AccountId normalize_account(std::string_view raw) {
  std::string_view s = detail::trim(raw);
  while (!s.empty() && s.front() == '@') s.remove_prefix(1);
  s = detail::trim(s);
  if (s.empty()) throw Error(ErrorKind::InvalidIdentifier, "empty account name '" + std::string(raw) + "'");
  if (std::any_of(s.begin(), s.end(), detail::is_space))
    throw Error(ErrorKind::InvalidIdentifier, "whitespace in account name '" + std::string(raw) + "'");
  auto lowered = detail::unicode_lower(s);
  if (!lowered) throw Error(ErrorKind::InvalidIdentifier, "account name is not valid UTF-8");
  return AccountId(std::move(*lowered));
}

/// Hashtag text without '#', Unicode-lowercased.
inline std::string normalize_hashtag(std::string_view raw) {
  std::string_view s = detail::trim(raw);
  while (!s.empty() && s.front() == '#') s.remove_prefix(1);
  s = detail::trim(s);
  if (s.empty()) throw Error(ErrorKind::InvalidEntity, "empty hashtag '" + std::string(raw) + "'");
  auto lowered = detail::unicode_lower(s);
  if (!lowered) throw Error(ErrorKind::InvalidEntity, "hashtag is not valid UTF-8");
  return *lowered;
}

struct UrlParts {
  std::string scheme;
  std::string host;  // as written, may be empty
  std::string rest;  // port, path, query, fragment
};

inline std::optional<UrlParts> split_url(std::string_view url) {
  url = detail::trim(url);
  auto colon = url.find(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!is_alpha(url[0])) return std::nullopt;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = url[i];
    if (!(is_alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.')) return std::nullopt;
  }
  UrlParts parts;
  parts.scheme = detail::ascii_lower(url.substr(0, colon));
  std::string_view after = url.substr(colon + 1);
  if (after.substr(0, 2) != "//") {
    parts.rest = std::string(after);
    return parts;
  }
  after.remove_prefix(2);
  auto end = after.find_first_of("/?#");
  std::string_view authority = after.substr(0, end);
  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
  std::string_view host = authority;
  if (!host.empty() && host.front() == '[') {
    auto close = host.find(']');
    host = close == std::string_view::npos ? std::string_view{} : host.substr(0, close + 1);
  } else if (auto pc = host.find(':'); pc != std::string_view::npos) {
    host = host.substr(0, pc);
  }
  parts.host = std::string(host);
  parts.rest = end == std::string_view::npos ? std::string{} : std::string(after.substr(end));
  return parts;
}

/// True for URLs with a scheme and a non-empty host, e.g. "http://t.co/x".
inline bool is_absolute_url(std::string_view url) {
  if (std::any_of(url.begin(), url.end(), detail::is_space)) return false;
  auto parts = split_url(url);
  return parts && !parts->host.empty();
}

/// Host of an absolute URL, lowercased, without port and (optionally) without "www.".
inline std::string extract_domain(std::string_view url, bool strip_www = true) {
  auto parts = split_url(url);
  if (!parts || parts->host.empty())
    throw Error(ErrorKind::NoDomain, "no host component in '" + std::string(url) + "'");
  std::string host = detail::ascii_lower(parts->host);
  while (!host.empty() && host.back() == '.') host.pop_back();
  if (strip_www && host.size() > 4 && host.compare(0, 4, "www.") == 0) host.erase(0, 4);
  if (host.empty()) throw Error(ErrorKind::NoDomain, "no host component in '" + std::string(url) + "'");
  return host;
}

enum class EntityCategory : std::uint8_t { Hashtag = 0, Mention = 1, Url = 2, Domain = 3 };

inline constexpr std::array<EntityCategory, 4> kCategories = {
    EntityCategory::Hashtag, EntityCategory::Mention, EntityCategory::Url, EntityCategory::Domain};

inline constexpr std::size_t index_of(EntityCategory c) { return static_cast<std::size_t>(c); }

inline const char* to_string(EntityCategory c) {
  switch (c) {
    case EntityCategory::Hashtag: return "hashtag";
    case EntityCategory::Mention: return "mention";
    case EntityCategory::Url: return "url";
    case EntityCategory::Domain: return "domain";
  }
  return "?";
}

inline EntityCategory parse_category(std::string_view text) {
  std::string s = detail::ascii_lower(detail::trim(text));
  if (!s.empty() && s.back() == 's') s.pop_back();
  if (s == "hashtag") return EntityCategory::Hashtag;
  if (s == "mention") return EntityCategory::Mention;
  if (s == "url") return EntityCategory::Url;
  if (s == "domain") return EntityCategory::Domain;
  throw Error(ErrorKind::InvalidInput, "unknown entity category '" + std::string(text) + "'");
}

struct AccountProfile {
  AccountId id;
  std::string display_name;
  std::string description;
  std::uint64_t followers = 0;
  std::uint64_t following = 0;
  std::uint64_t total_tweets = 0;
  Timestamp created_at{};
  bool locked = false;
  bool active = true;
  // Pass-through values; no formula is known for them.
  std::optional<double> h_index_rt_daily;
  std::optional<double> h_index_fav_daily;

  friend bool operator==(const AccountProfile&, const AccountProfile&) = default;
};

struct TweetRecord {
  std::string tweet_id;
  AccountId author;
  Timestamp created_at{};
  std::uint64_t retweets = 0;
  std::uint64_t favorites = 0;
  bool is_retweet = false;
  std::optional<AccountId> reply_to;
  std::vector<std::string> hashtags;
  std::vector<AccountId> mentions;
  std::vector<std::string> urls;
  std::vector<std::string> images;

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

using EntitySet = std::set<std::string>;

/// Distinct entities per category for one account.
class EntityProfile {
 public:
  EntityProfile() = default;
  EntityProfile(AccountId account, std::array<EntitySet, 4> sets)
      : account_(std::move(account)), sets_(std::move(sets)) {}

  const AccountId& account() const noexcept { return account_; }
  const EntitySet& entities(EntityCategory c) const noexcept { return sets_[index_of(c)]; }
  std::size_t count(EntityCategory c) const noexcept { return sets_[index_of(c)].size(); }
  std::size_t total() const noexcept {
    std::size_t sum = 0;
    for (const auto& s : sets_) sum += s.size();
    return sum;
  }

  friend bool operator==(const EntityProfile&, const EntityProfile&) = default;

 private:
  AccountId account_;
  std::array<EntitySet, 4> sets_;
};

/// Builds the profile of `account` from its tweets. `domain_of` maps a tweet
/// URL to its resolved domain, or nullopt when the URL was never resolved.
inline EntityProfile make_entity_profile(
    const AccountId& account, const std::vector<TweetRecord>& tweets,
    const std::function<std::optional<std::string>(const std::string&)>& domain_of) {
  std::array<EntitySet, 4> sets;
  for (const auto& t : tweets) {
    if (t.author != account) continue;
    for (const auto& h : t.hashtags) sets[index_of(EntityCategory::Hashtag)].insert(h);
    for (const auto& m : t.mentions) sets[index_of(EntityCategory::Mention)].insert(m.value());
    for (const auto& u : t.urls) {
      sets[index_of(EntityCategory::Url)].insert(u);
      if (domain_of) {
        if (auto d = domain_of(u)) sets[index_of(EntityCategory::Domain)].insert(*d);
      }
    }
  }
  return EntityProfile(account, std::move(sets));
}

}  // namespace simnet

template <>
struct std::hash<simnet::AccountId> {
  std::size_t operator()(const simnet::AccountId& id) const noexcept {
    return std::hash<std::string>{}(id.value());
  }
};
