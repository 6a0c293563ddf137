#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "simnet/error.hpp"
#include "simnet/influence.hpp"
#include "simnet/ingest.hpp"
#include "simnet/model.hpp"
#include "simnet/ntriples.hpp"

namespace simnet {

namespace vocab {

inline constexpr std::string_view kIt = "http://www.influencetracker.com/ontology#";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view kResource = "http://www.influencetracker.com/resource/";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kTwitterHomepage = "http://twitter.com";

inline std::string it(std::string_view local) { return std::string(kIt) + std::string(local); }
inline std::string foaf(std::string_view local) { return std::string(kFoaf) + std::string(local); }
inline std::string xsd(std::string_view local) { return std::string(kXsd) + std::string(local); }

// Classes.
inline const std::string User = it("User");
inline const std::string TwitterAccount = it("TwitterAccount");
inline const std::string GeneralInfo = it("GeneralInfo");
inline const std::string QualityMetrics = it("QualityMetrics");
inline const std::string Hashtag = it("Hashtag");
inline const std::string Url = it("URL");
inline const std::string Agent = foaf("Agent");
inline const std::string OnlineAccount = foaf("OnlineAccount");
inline const std::string Document = foaf("Document");
inline const std::string Image = foaf("Image");

// Object properties.
inline const std::string account = foaf("account");
inline const std::string accountServiceHomepage = foaf("accountServiceHomepage");
inline const std::string hasGeneralInfo = it("hasGeneralInfo");
inline const std::string hasQualityMetrics = it("hasQualityMetrics");
inline const std::string hasMentioned = it("hasMentioned");
inline const std::string hasRepliedTo = it("hasRepliedTo");
inline const std::string includedHashtag = it("includedHashtag");
inline const std::string includedImage = it("includedImage");
inline const std::string includedUrl = it("includedUrl");
inline const std::string isFollowing = it("isFollowing");
inline const std::string hasFollower = it("hasFollower");

// Datatype properties.
inline const std::string accountName = foaf("accountName");
inline const std::string description = it("description");
inline const std::string displayName = it("displayName");
inline const std::string followers = it("followers");
inline const std::string following = it("following");
inline const std::string hIndexFav = it("hIndexFav");
inline const std::string hIndexFavDaily = it("hIndexFavDaily");
inline const std::string hIndexRt = it("hIndexRt");
inline const std::string hIndexRtDaily = it("hIndexRtDaily");
inline const std::string imageUrl = it("imageUrl");
inline const std::string influenceMetric = it("influenceMetric");
inline const std::string profileLocked = it("profileLocked");
inline const std::string activeAccount = it("activeAccount");
inline const std::string replyRatio = it("replyRatio");
inline const std::string retrievedOn = it("retrievedOn");
inline const std::string rtPercent = it("rtPercent");
inline const std::string tweets = it("tweets");
inline const std::string tweetsPerDay = it("tweetsPerDay");
inline const std::string url = it("url");
inline const std::string fullUrl = it("fullUrl");
inline const std::string domain = it("domain");

inline const std::set<std::string>& predicates() {
  static const std::set<std::string> all = {
      std::string(kRdfType), account, accountServiceHomepage, hasGeneralInfo, hasQualityMetrics, hasMentioned,
      hasRepliedTo, includedHashtag, includedImage, includedUrl, isFollowing, hasFollower, accountName,
      description, displayName, followers, following, hIndexFav, hIndexFavDaily, hIndexRt, hIndexRtDaily,
      imageUrl, influenceMetric, profileLocked, activeAccount, replyRatio, retrievedOn, rtPercent, tweets,
      tweetsPerDay, url, fullUrl, domain};
  return all;
}

inline const std::set<std::string>& classes() {
  static const std::set<std::string> all = {User,  TwitterAccount, GeneralInfo,   QualityMetrics, Hashtag,
                                            Url,   Agent,          OnlineAccount, Document,       Image};
  return all;
}

/// Direct superclass, if any.
inline std::optional<std::string> superclass_of(const std::string& cls) {
  if (cls == User) return Agent;
  if (cls == TwitterAccount) return OnlineAccount;
  if (cls == Image) return Document;
  return std::nullopt;
}

}  // namespace vocab

/// Slash-format resource IRI: {base}{Class}/{percent-encoded key}.
inline std::string resource_iri(std::string_view cls, std::string_view key) {
  return std::string(vocab::kResource) + std::string(cls) + "/" + percent_encode(key);
}

inline std::string user_iri(const AccountId& id) { return resource_iri("User", id.value()); }

/// Splits a resource IRI into (Class, decoded key).
inline std::optional<std::pair<std::string, std::string>> parse_resource_iri(std::string_view iri) {
  if (iri.substr(0, vocab::kResource.size()) != vocab::kResource) return std::nullopt;
  iri.remove_prefix(vocab::kResource.size());
  auto slash = iri.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 == iri.size()) return std::nullopt;
  auto key = percent_decode(iri.substr(slash + 1));
  if (!key) return std::nullopt;
  return std::pair{std::string(iri.substr(0, slash)), *key};
}

/// In-memory triple set with account/entity indexes. Immutable once constructed.
class GraphStore {
 public:
  GraphStore() = default;

  explicit GraphStore(std::set<Triple> triples) : triples_(std::move(triples)) {
    close_inverses();
    reindex();
  }

  const std::set<Triple>& triples() const noexcept { return triples_; }
  std::size_t size() const noexcept { return triples_.size(); }

  bool has_account(const AccountId& id) const { return profiles_.count(id) != 0; }

  std::vector<AccountId> accounts() const {
    std::vector<AccountId> out;
    out.reserve(profiles_.size());
    for (const auto& [id, _] : profiles_) out.push_back(id);
    return out;
  }

  const EntityProfile& profile(const AccountId& id) const {
    auto it = profiles_.find(id);
    if (it == profiles_.end()) throw Error(ErrorKind::NotFound, "unknown account '" + id.value() + "'");
    return it->second;
  }

  const EntitySet& entities_of(const AccountId& id, EntityCategory c) const { return profile(id).entities(c); }

  const std::set<AccountId>& accounts_including(const std::string& entity, EntityCategory c) const {
    static const std::set<AccountId> none;
    const auto& index = inverted_[index_of(c)];
    auto it = index.find(entity);
    return it == index.end() ? none : it->second;
  }

  /// |entities(a) ∩ entities(b)| in one category (the shared hashtag / domain counters).
  std::size_t common_entity_count(const AccountId& a, const AccountId& b, EntityCategory c) const {
    const auto& x = entities_of(a, c);
    const auto& y = entities_of(b, c);
    const auto& small = x.size() <= y.size() ? x : y;
    const auto& large = x.size() <= y.size() ? y : x;
    std::size_t n = 0;
    for (const auto& e : small) n += large.count(e);
    return n;
  }

  /// Every triple whose subject is the account's User resource.
  std::vector<Triple> describe(const AccountId& id) const {
    if (!has_account(id)) throw Error(ErrorKind::NotFound, "unknown account '" + id.value() + "'");
    const std::string subject = iri_token(user_iri(id));
    std::vector<Triple> out;
    for (auto it = triples_.lower_bound(Triple{subject, {}, {}}); it != triples_.end() && it->subject == subject; ++it)
      out.push_back(*it);
    return out;
  }

  /// Direct types plus their superclasses.
  std::set<std::string> types_of(const std::string& resource_iri_value) const {
    std::set<std::string> out;
    auto it = types_.find(iri_token(resource_iri_value));
    if (it == types_.end()) return out;
    for (const auto& cls : it->second) {
      for (std::optional<std::string> c = cls; c; c = vocab::superclass_of(*c)) out.insert(*c);
    }
    return out;
  }

  bool is_instance(const std::string& resource_iri_value, const std::string& cls) const {
    return types_of(resource_iri_value).count(cls) != 0;
  }

  /// IRIs (not tokens) of all instances of `cls`, including subclass members.
  std::set<std::string> instances_of(const std::string& cls) const {
    std::set<std::string> out;
    for (const auto& [subject, direct] : types_) {
      for (const auto& d : direct) {
        bool hit = false;
        for (std::optional<std::string> c = d; c; c = vocab::superclass_of(*c)) hit |= (*c == cls);
        if (hit) {
          if (auto v = iri_value(subject)) out.insert(*v);
          break;
        }
      }
    }
    return out;
  }

  /// First literal value of (subject, predicate), decoded.
  std::optional<std::string> literal(const std::string& subject_iri, const std::string& predicate) const {
    const std::string s = iri_token(subject_iri);
    const std::string p = iri_token(predicate);
    for (auto it = triples_.lower_bound(Triple{s, p, {}}); it != triples_.end() && it->subject == s && it->predicate == p;
         ++it) {
      if (auto lit = parse_literal(it->object)) return lit->value;
    }
    return std::nullopt;
  }

  friend bool operator==(const GraphStore& a, const GraphStore& b) { return a.triples_ == b.triples_; }

 private:
  void close_inverses() {
    const std::string following = iri_token(vocab::isFollowing);
    const std::string follower = iri_token(vocab::hasFollower);
    std::vector<Triple> extra;
    for (const auto& t : triples_) {
      if (t.predicate == following) extra.push_back({t.object, follower, t.subject});
      if (t.predicate == follower) extra.push_back({t.object, following, t.subject});
    }
    triples_.insert(extra.begin(), extra.end());
  }

  void reindex() {
    const std::string type = iri_token(vocab::kRdfType);
    const std::string hashtag = iri_token(vocab::includedHashtag);
    const std::string mentioned = iri_token(vocab::hasMentioned);
    const std::string included_url = iri_token(vocab::includedUrl);
    const std::string domain = iri_token(vocab::domain);

    std::unordered_map<std::string, std::string> url_domain;  // URL token -> domain
    std::map<AccountId, std::array<EntitySet, 4>> sets;
    std::vector<std::pair<AccountId, std::string>> account_urls;

    auto as_account = [&](const std::string& token) -> std::optional<AccountId> {
      auto v = iri_value(token);
      if (!v) return std::nullopt;
      auto r = parse_resource_iri(*v);
      if (!r || r->first != "User") return std::nullopt;
      auto id = normalize_account(r->second);
      sets.try_emplace(id);
      return id;
    };
    auto key_of = [](const std::string& token) -> std::optional<std::string> {
      auto v = iri_value(token);
      if (!v) return std::nullopt;
      auto r = parse_resource_iri(*v);
      if (!r) return std::nullopt;
      return r->second;
    };

    for (const auto& t : triples_) {
      if (t.predicate == type) {
        if (auto cls = iri_value(t.object)) types_[t.subject].insert(*cls);
      }
      auto subject = as_account(t.subject);
      as_account(t.object);
      if (t.predicate == domain) {
        if (auto lit = parse_literal(t.object)) url_domain[t.subject] = lit->value;
        continue;
      }
      if (!subject) continue;
      if (t.predicate == hashtag) {
        if (auto k = key_of(t.object)) sets[*subject][index_of(EntityCategory::Hashtag)].insert(*k);
      } else if (t.predicate == mentioned) {
        if (auto k = key_of(t.object)) sets[*subject][index_of(EntityCategory::Mention)].insert(normalize_account(*k).value());
      } else if (t.predicate == included_url) {
        if (auto k = key_of(t.object)) {
          sets[*subject][index_of(EntityCategory::Url)].insert(*k);
          account_urls.emplace_back(*subject, t.object);
        }
      }
    }
    for (const auto& [id, url_token] : account_urls) {
      if (auto it = url_domain.find(url_token); it != url_domain.end())
        sets[id][index_of(EntityCategory::Domain)].insert(it->second);
    }
    for (auto& [id, s] : sets) {
      for (auto c : kCategories) {
        for (const auto& e : s[index_of(c)]) inverted_[index_of(c)][e].insert(id);
      }
      profiles_.emplace(id, EntityProfile(id, std::move(s)));
    }
  }

  std::set<Triple> triples_;
  std::map<std::string, std::set<std::string>> types_;  // subject token -> direct class IRIs
  std::map<AccountId, EntityProfile> profiles_;
  std::array<std::map<std::string, std::set<AccountId>>, 4> inverted_;
};

struct BuildOptions {
  Timestamp as_of{};
  bool strip_www = true;
  std::string service_homepage = std::string(vocab::kTwitterHomepage);
  InfluenceOptions influence;
  Warn warn;
};

/// Maps a normalized dataset onto the ontology.
inline GraphStore build(const Dataset& ds, const BuildOptions& options) {
  using namespace vocab;
  std::set<Triple> out;
  auto add = [&](const std::string& s, const std::string& p, std::string o) {
    out.insert(Triple{iri_token(s), iri_token(p), std::move(o)});
  };
  auto link = [&](const std::string& s, const std::string& p, const std::string& o) { add(s, p, iri_token(o)); };
  const std::string type(kRdfType);

  std::map<AccountId, const AccountProfile*> declared;
  for (const auto& a : ds.accounts) declared[a.id] = &a;

  for (const auto& f : ds.follows) {
    for (const auto* end : {&f.follower, &f.followee}) {
      if (!declared.count(*end))
        throw Error(ErrorKind::DanglingReference, "follow edge references undeclared account '" + end->value() + "'");
    }
  }

  std::map<AccountId, std::vector<TweetRecord>> by_author;
  for (const auto& t : ds.tweets) {
    if (!declared.count(t.author))
      throw Error(ErrorKind::DanglingReference, "tweet '" + t.tweet_id + "' has undeclared author '" + t.author.value() + "'");
    by_author[t.author].push_back(t);
  }

  for (const auto& [id, a] : declared) {
    const std::string user = user_iri(id);
    const std::string acct = resource_iri("TwitterAccount", id.value());
    const std::string general = resource_iri("GeneralInfo", id.value());
    const std::string quality = resource_iri("QualityMetrics", id.value());

    if (options.as_of <= a->created_at)
      throw Error(ErrorKind::InvalidClock, "account '" + id.value() + "' was created after the evaluation time");
    const auto& own = by_author[id];
    const AccountMetrics m = compute_metrics(*a, std::span<const TweetRecord>(own), options.as_of, options.influence);

    link(user, type, User);
    link(user, account, acct);
    link(user, hasGeneralInfo, general);
    link(user, hasQualityMetrics, quality);

    link(acct, type, TwitterAccount);
    link(acct, accountServiceHomepage, options.service_homepage);
    add(acct, accountName, string_literal(id.value()));
    add(acct, displayName, string_literal(a->display_name));
    add(acct, description, string_literal(a->description));
    add(acct, profileLocked, bool_literal(a->locked));
    add(acct, activeAccount, bool_literal(a->active));

    link(general, type, vocab::GeneralInfo);
    add(general, tweets, integer_literal(m.general.total_tweets));
    add(general, tweetsPerDay, decimal_literal(m.general.tweets_per_day));
    add(general, rtPercent, decimal_literal(m.general.retweet_ratio));
    add(general, vocab::followers, integer_literal(m.general.followers));
    add(general, vocab::following, integer_literal(m.general.following));
    add(general, retrievedOn, datetime_literal(options.as_of));

    link(quality, type, vocab::QualityMetrics);
    add(quality, hIndexRt, integer_literal(m.quality.h_index_rt));
    add(quality, hIndexFav, integer_literal(m.quality.h_index_fav));
    if (m.quality.h_index_rt_daily) add(quality, hIndexRtDaily, decimal_literal(*m.quality.h_index_rt_daily));
    if (m.quality.h_index_fav_daily) add(quality, hIndexFavDaily, decimal_literal(*m.quality.h_index_fav_daily));
    add(quality, replyRatio, decimal_literal(m.quality.reply_ratio));
    add(quality, influenceMetric, decimal_literal(m.quality.influence));
  }

  const auto urls = url_resources(ds, options.strip_www, options.warn);
  for (const auto& t : ds.tweets) {
    const std::string user = user_iri(t.author);
    for (const auto& h : t.hashtags) {
      const std::string tag = resource_iri("Hashtag", h);
      link(tag, type, Hashtag);
      link(user, includedHashtag, tag);
    }
    auto stub = [&](const AccountId& other) {
      const std::string o = user_iri(other);
      link(o, type, User);
      return o;
    };
    for (const auto& m : t.mentions) link(user, hasMentioned, stub(m));
    if (t.reply_to) link(user, hasRepliedTo, stub(*t.reply_to));
    for (const auto& u : t.urls) {
      const std::string res = resource_iri("URL", u);
      const UrlResource& r = urls.at(u);
      link(res, type, Url);
      add(res, vocab::url, string_literal(r.short_url));
      if (r.full_url) add(res, fullUrl, string_literal(*r.full_url));
      if (r.domain) add(res, vocab::domain, string_literal(*r.domain));
      link(user, includedUrl, res);
    }
    for (const auto& img : t.images) {
      const std::string res = resource_iri("Image", img);
      link(res, type, Image);
      add(res, imageUrl, string_literal(img));
      link(user, includedImage, res);
    }
  }

  for (const auto& f : ds.follows) {
    const std::string a = resource_iri("TwitterAccount", f.follower.value());
    const std::string b = resource_iri("TwitterAccount", f.followee.value());
    link(a, isFollowing, b);
    link(b, hasFollower, a);
  }
  return GraphStore(std::move(out));
}

/// Canonical N-Triples: one triple per line in (subject, predicate, object) order.
inline void export_ntriples(const GraphStore& store, std::ostream& out) {
  for (const auto& t : store.triples()) out << t.subject << ' ' << t.predicate << ' ' << t.object << " .\n";
}

struct ImportOptions {
  bool strict = true;
  Warn warn;
};

inline GraphStore import_ntriples(std::istream& in, const ImportOptions& options = {}) {
  std::set<Triple> triples;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    auto parsed = parse_ntriples_line(text, line);
    if (!parsed) continue;
    auto predicate = iri_value(parsed->predicate);
    if (!predicate || !vocab::predicates().count(*predicate)) {
      const std::string msg = "unknown predicate " + parsed->predicate;
      if (options.strict) throw ParseError(line, msg, ErrorKind::Vocabulary);
      if (options.warn) options.warn("line " + std::to_string(line) + ": " + msg + " skipped");
      continue;
    }
    triples.insert(std::move(*parsed));
  }
  return GraphStore(std::move(triples));
}

}  // namespace simnet
