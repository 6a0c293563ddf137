#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "simnet/error.hpp"
#include "simnet/model.hpp"

namespace simnet {

inline constexpr std::size_t kMaxWindowTweets = 100;

/// The latest (at most 100) tweets of one account, most recent first, as seen at `as_of`.
class TweetWindow {
 public:
  TweetWindow(std::vector<TweetRecord> tweets, Timestamp as_of) : tweets_(std::move(tweets)), as_of_(as_of) {
    if (tweets_.empty()) throw Error(ErrorKind::InvalidInput, "tweet window is empty");
    if (tweets_.size() > kMaxWindowTweets)
      throw Error(ErrorKind::InvalidInput, "tweet window holds more than 100 tweets");
    for (std::size_t i = 1; i < tweets_.size(); ++i) {
      if (tweets_[i].created_at > tweets_[i - 1].created_at)
        throw Error(ErrorKind::InvalidInput, "tweet window is not ordered most-recent-first");
    }
    if (as_of_ < tweets_.front().created_at)
      throw Error(ErrorKind::InvalidClock, "as_of precedes the newest tweet");
  }

  /// Selects the latest tweets of `author` created no later than `as_of`.
  /// Returns nullopt when there are none.
  static std::optional<TweetWindow> latest(const AccountId& author, std::span<const TweetRecord> tweets,
                                           Timestamp as_of) {
    std::vector<TweetRecord> own;
    for (const auto& t : tweets) {
      if (t.author == author && t.created_at <= as_of) own.push_back(t);
    }
    if (own.empty()) return std::nullopt;
    std::stable_sort(own.begin(), own.end(), [](const TweetRecord& a, const TweetRecord& b) {
      if (a.created_at != b.created_at) return a.created_at > b.created_at;
      return a.tweet_id < b.tweet_id;
    });
    if (own.size() > kMaxWindowTweets) own.resize(kMaxWindowTweets);
    return TweetWindow(std::move(own), as_of);
  }

  const std::vector<TweetRecord>& tweets() const noexcept { return tweets_; }
  std::size_t size() const noexcept { return tweets_.size(); }
  Timestamp as_of() const noexcept { return as_of_; }
  Timestamp oldest() const noexcept { return tweets_.back().created_at; }

  std::vector<std::int64_t> retweet_counts() const {
    std::vector<std::int64_t> out;
    out.reserve(tweets_.size());
    for (const auto& t : tweets_) out.push_back(static_cast<std::int64_t>(t.retweets));
    return out;
  }

  std::vector<std::int64_t> favorite_counts() const {
    std::vector<std::int64_t> out;
    out.reserve(tweets_.size());
    for (const auto& t : tweets_) out.push_back(static_cast<std::int64_t>(t.favorites));
    return out;
  }

 private:
  std::vector<TweetRecord> tweets_;
  Timestamp as_of_;
};

struct QualityMetrics {
  std::int64_t h_index_rt = 0;
  std::int64_t h_index_fav = 0;
  std::optional<double> h_index_rt_daily;
  std::optional<double> h_index_fav_daily;
  double reply_ratio = 0.0;
  double influence = 0.0;
};

struct GeneralInfo {
  std::uint64_t total_tweets = 0;
  double tweets_per_day = 0.0;
  double retweet_ratio = 0.0;
  std::uint64_t followers = 0;
  std::uint64_t following = 0;
};

struct AccountMetrics {
  GeneralInfo general;
  QualityMetrics quality;
};

struct InfluenceOptions {
  // Lower bound on the elapsed hours of the window; 0 disables the floor.
  double min_hours = 1.0;
};

/// Largest h such that at least h of the counts are >= h.
inline std::int64_t h_index(std::span<const std::int64_t> counts) {
  const std::size_t n = counts.size();
  // bucket[c] = how many counts equal c, with everything >= n folded into bucket[n].
  std::vector<std::size_t> bucket(n + 1, 0);
  for (std::int64_t c : counts) {
    if (c < 0) throw Error(ErrorKind::InvalidInput, "negative count in h-index input");
    ++bucket[std::min<std::size_t>(static_cast<std::size_t>(c), n)];
  }
  std::size_t at_least = 0;
  for (std::size_t h = n; h > 0; --h) {
    at_least += bucket[h];
    if (at_least >= h) return static_cast<std::int64_t>(h);
  }
  return 0;
}

/// Compressed retweet impact: impact = a * 10^b with b = max(0, floor(log10 impact) - 1),
/// `a` truncated to an integer when it has two digits, mapped to a/10 + 10*b.
inline double adjusted_tweets(double impact) {
  if (!(impact >= 0.0) || !std::isfinite(impact))
    throw Error(ErrorKind::InvalidInput, "adjusted tweets requires a finite non-negative impact");
  if (impact == 0.0) return 0.0;

  int magnitude = static_cast<int>(std::floor(std::log10(impact)));
  // log10 may land one off near exact powers of ten.
  while (std::pow(10.0, magnitude + 1) <= impact) ++magnitude;
  while (std::pow(10.0, magnitude) > impact) --magnitude;

  const int b = std::max(0, magnitude - 1);
  double a = impact / std::pow(10.0, b);
  if (a >= 10.0) a = std::trunc(a);
  return a / 10.0 + 10.0 * b;
}

inline double hours_since_oldest(const TweetWindow& window, const InfluenceOptions& options = {}) {
  if (window.as_of() < window.oldest())
    throw Error(ErrorKind::InvalidClock, "as_of precedes the oldest tweet");
  const auto elapsed = std::chrono::duration<double, std::ratio<3600>>(window.as_of() - window.oldest());
  return std::max(elapsed.count(), options.min_hours);
}

/// Order of magnitude of the follower count; 0 for no followers.
inline std::int64_t oom(std::uint64_t followers) {
  std::int64_t digits = 0;
  while (followers >= 10) {
    followers /= 10;
    ++digits;
  }
  return digits;
}

inline double influence_metric(const AccountProfile& profile, const TweetWindow& window,
                               const InfluenceOptions& options = {}) {
  if (profile.followers == 0) return 0.0;
  const auto h_rt = static_cast<double>(h_index(window.retweet_counts()));
  const double hours = hours_since_oldest(window, options);
  if (hours <= 0.0) throw Error(ErrorKind::InvalidClock, "window spans zero hours and the floor is disabled");
  const double tweet_rate = (static_cast<double>(window.size()) + adjusted_tweets(h_rt * h_rt)) / hours;
  const double followees = static_cast<double>(std::max<std::uint64_t>(profile.following, 1));
  const double ftf = std::log10(static_cast<double>(profile.followers) / followees + 1.0);
  return tweet_rate * static_cast<double>(oom(profile.followers)) * ftf;
}

/// General information and quality metrics of an account over its window.
inline AccountMetrics compute_metrics(const AccountProfile& profile, const TweetWindow& window,
                                      const InfluenceOptions& options = {}) {
  using days = std::chrono::duration<double, std::ratio<86400>>;
  if (window.as_of() <= profile.created_at)
    throw Error(ErrorKind::InvalidClock, "as_of must be later than the account creation time");

  std::size_t replies = 0;
  std::size_t retweets = 0;
  for (const auto& t : window.tweets()) {
    if (t.reply_to) ++replies;
    if (t.is_retweet) ++retweets;
  }
  const auto nt = static_cast<double>(window.size());
  const double age_days = days(window.as_of() - profile.created_at).count();

  AccountMetrics m;
  m.general.total_tweets = profile.total_tweets;
  m.general.tweets_per_day = static_cast<double>(profile.total_tweets) / age_days;
  m.general.retweet_ratio = static_cast<double>(retweets) / nt;
  m.general.followers = profile.followers;
  m.general.following = profile.following;

  m.quality.h_index_rt = h_index(window.retweet_counts());
  m.quality.h_index_fav = h_index(window.favorite_counts());
  m.quality.h_index_rt_daily = profile.h_index_rt_daily;
  m.quality.h_index_fav_daily = profile.h_index_fav_daily;
  m.quality.reply_ratio = static_cast<double>(replies) / nt;
  m.quality.influence = influence_metric(profile, window, options);
  return m;
}

/// Metrics for an account that may have no visible tweets at `as_of`: the
/// window-derived values are zero in that case.
inline AccountMetrics compute_metrics(const AccountProfile& profile, std::span<const TweetRecord> tweets,
                                      Timestamp as_of, const InfluenceOptions& options = {}) {
  if (auto window = TweetWindow::latest(profile.id, tweets, as_of)) return compute_metrics(profile, *window, options);
  using days = std::chrono::duration<double, std::ratio<86400>>;
  AccountMetrics m;
  m.general.total_tweets = profile.total_tweets;
  m.general.followers = profile.followers;
  m.general.following = profile.following;
  if (as_of > profile.created_at)
    m.general.tweets_per_day = static_cast<double>(profile.total_tweets) / days(as_of - profile.created_at).count();
  m.quality.h_index_rt_daily = profile.h_index_rt_daily;
  m.quality.h_index_fav_daily = profile.h_index_fav_daily;
  return m;
}

}  // namespace simnet
