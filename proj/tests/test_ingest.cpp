#include <gtest/gtest.h>

#include <atomic>
#include <sstream>

#include "simnet/ingest.hpp"
#include "simnet/synth.hpp"
#include "support.hpp"

using namespace simnet;
using namespace simnet::testing;

namespace {

const char* kAccountLine =
    R"({"type":"account","screen_name":"@Alice","display_name":"Alice","description":"d","followers":10,"following":2,"total_tweets":5,"created_at":"2012-01-01T00:00:00Z","locked":false,"active":true})";
const char* kTweetLine =
    R"({"type":"tweet","id":"1","author":"alice","created_at":"2014-10-01T10:00:00Z","retweets":3,"favorites":1,"is_retweet":false,"reply_to":null,"hashtags":["#Greece"],"mentions":["@Bob"],"urls":["http://t.co/x"],"images":[]})";

Dataset parse(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return read_dataset(in, [&](const std::string& w) {
    if (warnings) warnings->push_back(w);
  });
}

std::string dump(const Dataset& ds) {
  std::ostringstream out;
  write_dataset(out, ds);
  return out.str();
}

}  // namespace

TEST(ReadDataset, EmptyInput) {
  auto ds = parse("");
  EXPECT_TRUE(ds.accounts.empty());
  EXPECT_TRUE(ds.tweets.empty());
  EXPECT_TRUE(ds.follows.empty());
}

TEST(ReadDataset, AccountAndTweetAreNormalized) {
  auto ds = parse(std::string(kAccountLine) + "\n\n" + kTweetLine + "\n");
  ASSERT_EQ(ds.accounts.size(), 1u);
  ASSERT_EQ(ds.tweets.size(), 1u);
  EXPECT_EQ(ds.accounts[0].id.value(), "alice");
  EXPECT_EQ(ds.tweets[0].hashtags, std::vector<std::string>{"greece"});
  EXPECT_EQ(ds.tweets[0].mentions.at(0).value(), "bob");
  EXPECT_FALSE(ds.tweets[0].reply_to);
}

TEST(ReadDataset, MalformedLineIsReportedByNumber) {
  std::string text;
  for (int i = 0; i < 6; ++i) text += std::string(kAccountLine) + "\n";
  text += "{not json\n";
  try {
    parse(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
    EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos);
  }
}

TEST(ReadDataset, FieldErrors) {
  EXPECT_THROW(parse(R"({"type":"account","screen_name":"a"})"), ParseError);
  EXPECT_THROW(parse(R"({"type":"mystery"})"), ParseError);
  EXPECT_THROW(parse(R"([1,2])"), ParseError);
  std::string bad_url = std::string(kAccountLine) + "\n" + kTweetLine;
  bad_url.replace(bad_url.find("http://t.co/x"), 13, "relative/x");
  EXPECT_THROW(parse(bad_url), ParseError);
}

TEST(ReadDataset, DuplicateAccountLastWinsWithWarning) {
  std::string second = kAccountLine;
  second.replace(second.find("\"followers\":10"), 14, "\"followers\":99");
  std::vector<std::string> warnings;
  auto ds = parse(std::string(kAccountLine) + "\n" + second + "\n", &warnings);
  ASSERT_EQ(ds.accounts.size(), 1u);
  EXPECT_EQ(ds.accounts[0].followers, 99u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(ReadDataset, DuplicateTweetIsIntegrityError) {
  try {
    parse(std::string(kAccountLine) + "\n" + kTweetLine + "\n" + kTweetLine + "\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Integrity);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ReadDataset, UnknownAuthorIsIntegrityError) {
  try {
    parse(kTweetLine);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Integrity);
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ReadDataset, WriteReadRoundTrip) {
  auto ds = synth(5, SynthParams{});
  auto again = parse(dump(ds));
  EXPECT_EQ(dump(again), dump(ds));
  EXPECT_EQ(again.accounts, ds.accounts);
  EXPECT_EQ(again.tweets, ds.tweets);
}

TEST(UrlMap, ParsesAndValidates) {
  std::istringstream good("http://t.co/a\thttp://www.example.com/x\n\nhttp://t.co/b\thttps://b.org/\n");
  auto m = read_url_map(good);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at("http://t.co/a"), "http://www.example.com/x");
  std::istringstream bad("http://t.co/a http://x.org\n");
  EXPECT_THROW(read_url_map(bad), ParseError);
  std::istringstream relative("http://t.co/a\tx.org\n");
  EXPECT_THROW(read_url_map(relative), ParseError);
}

TEST(Load, MissingFileIsIoError) {
  try {
    load("/definitely/not/here.jsonl", std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}

TEST(Load, EmptyFiles) {
  TempDir dir;
  write_file(dir.file("d.jsonl"), "");
  write_file(dir.file("m.tsv"), "");
  auto ds = load(dir.file("d.jsonl"), dir.file("m.tsv"));
  EXPECT_TRUE(ds.accounts.empty());
  EXPECT_TRUE(ds.url_map.empty());
}

TEST(UrlResources, MappedUrlsGetDomains) {
  Dataset ds;
  ds.accounts.push_back(account("a"));
  ds.tweets.push_back(tweet("1", "a", at("2014-01-01T00:00:00Z"), {}, {},
                            {"http://s/1", "http://s/2", "http://s/3"}));
  ds.url_map["http://s/1"] = "http://www.example.com/x";
  ds.url_map["http://s/2"] = "http://www.example.com/x";
  auto res = url_resources(ds);
  ASSERT_EQ(res.size(), 3u);
  EXPECT_EQ(res.at("http://s/1").domain, "example.com");
  EXPECT_EQ(res.at("http://s/2").domain, "example.com");
  EXPECT_FALSE(res.at("http://s/3").domain);
  EXPECT_FALSE(res.at("http://s/3").full_url);

  std::set<std::string> domains;
  for (const auto& [_, r] : res)
    if (r.domain) domains.insert(*r.domain);
  EXPECT_EQ(domains.size(), 1u);
}

TEST(ResolveUrls, OfflineModeNeverCallsRemote) {
  Dataset ds;
  ds.accounts.push_back(account("a"));
  ds.tweets.push_back(tweet("1", "a", at("2014-01-01T00:00:00Z"), {}, {}, {"http://s/1"}));
  bool called = false;
  auto out = resolve_urls(ds, ResolverPolicy{}, [&](const std::string&) -> std::optional<std::string> {
    called = true;
    return "http://x.org";
  });
  EXPECT_FALSE(called);
  EXPECT_TRUE(out.url_map.empty());
}

TEST(ResolveUrls, RemoteFillsGapsRetriesAndWarns) {
  Dataset ds;
  ds.accounts.push_back(account("a"));
  std::vector<std::string> urls;
  for (int i = 0; i < 20; ++i) urls.push_back("http://s/" + std::to_string(i));
  ds.tweets.push_back(tweet("1", "a", at("2014-01-01T00:00:00Z"), {}, {}, urls));
  ds.url_map["http://s/0"] = "http://mapped.org/0";

  ResolverPolicy policy;
  policy.mode = ResolverMode::OfflineThenRemote;
  policy.retries = 2;
  policy.max_in_flight = 4;
  std::atomic<int> calls{0};
  std::atomic<int> flaky{0};
  auto remote = [&](const std::string& u) -> std::optional<std::string> {
    ++calls;
    if (u == "http://s/0") throw std::runtime_error("mapped URL must not be fetched");
    if (u == "http://s/1") throw std::runtime_error("connection refused");
    if (u == "http://s/2") return std::nullopt;
    if (u == "http://s/3" && flaky++ == 0) throw std::runtime_error("timeout");
    return "http://www.remote.org/" + u.substr(9);
  };
  std::vector<std::string> warnings;
  auto out = resolve_urls(ds, policy, remote, [&](const std::string& w) { warnings.push_back(w); });
  EXPECT_EQ(out.url_map.at("http://s/0"), "http://mapped.org/0");
  EXPECT_EQ(out.url_map.at("http://s/3"), "http://www.remote.org/3");
  EXPECT_FALSE(out.url_map.count("http://s/1"));
  EXPECT_FALSE(out.url_map.count("http://s/2"));
  EXPECT_EQ(out.url_map.size(), 18u);
  EXPECT_EQ(warnings.size(), 2u);
  // 17 good URLs once, s/3 twice, s/1 and s/2 three times each.
  EXPECT_EQ(calls.load(), 16 + 2 + 3 + 3);
}

TEST(Synth, Deterministic) {
  EXPECT_EQ(dump(synth(42, SynthParams{})), dump(synth(42, SynthParams{})));
  EXPECT_NE(dump(synth(42, SynthParams{})), dump(synth(43, SynthParams{})));
  EXPECT_EQ(dump(synth_table3(1)), dump(synth_table3(1)));
}

TEST(Synth, RejectsBadParameters) {
  SynthParams p;
  p.accounts = 0;
  EXPECT_THROW(synth(1, p), Error);
  p = SynthParams{};
  p.resolve_rate = 1.5;
  EXPECT_THROW(synth(1, p), Error);

  OverlapSpec spec;
  spec.examined = "x";
  spec.examined_totals = {1, 1, 1, 1};
  spec.rows.push_back({"y", {1, 1, 1, 1}, {2, 0, 0, 0}});
  EXPECT_THROW(synth_overlap(spec), Error);
}

TEST(Synth, Table3CountsMatchConstruction) {
  auto ds = synth_table3(3);
  auto store = build_store(ds);
  const auto spec = table3_spec();
  const auto examined = id(spec.examined);
  for (auto c : kCategories)
    EXPECT_EQ(store.entities_of(examined, c).size(), spec.examined_totals[index_of(c)]) << to_string(c);
  for (const auto& row : spec.rows) {
    for (auto c : kCategories) {
      EXPECT_EQ(store.entities_of(id(row.name), c).size(), row.totals[index_of(c)]) << row.name << ' ' << to_string(c);
      EXPECT_EQ(store.common_entity_count(examined, id(row.name), c), row.common[index_of(c)])
          << row.name << ' ' << to_string(c);
    }
  }
}

TEST(Synth, Table3WeightsNearDerived) {
  auto store = build_store(synth_table3());
  auto w = entity_weights(store.profile(id("adonisgeorgiadi")));
  const double expected[4] = {0.064, 0.354, 0.499, 0.083};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(w[static_cast<std::size_t>(i)], expected[i], 0.002) << i;
}

TEST(Synth, RandomOverlapSpecsAreRealizedExactly) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 50; ++round) {
    OverlapSpec spec;
    spec.examined = "root";
    const std::size_t d = 1 + rng() % 5;
    spec.examined_totals = {rng() % 8, rng() % 8, 0, d};
    std::size_t max_shared = 0;
    for (int r = 0; r < 4; ++r) {
      OverlapRow row;
      row.name = "row" + std::to_string(r);
      row.common = {rng() % (spec.examined_totals[0] + 1), rng() % (spec.examined_totals[1] + 1), rng() % 3,
                    1 + rng() % d};
      row.totals = {row.common[0] + rng() % 4, row.common[1] + rng() % 4, 0, row.common[3] + rng() % 3};
      row.totals[2] = row.common[2] + row.totals[3] + rng() % 3;
      max_shared = std::max(max_shared, row.common[2]);
      spec.rows.push_back(row);
    }
    spec.examined_totals[2] = max_shared + d + rng() % 3;
    auto store = build_store(synth_overlap(spec, rng()));
    for (const auto& row : spec.rows) {
      for (auto c : kCategories) {
        ASSERT_EQ(store.entities_of(id(row.name), c).size(), row.totals[index_of(c)]);
        ASSERT_EQ(store.common_entity_count(id("root"), id(row.name), c), row.common[index_of(c)]);
      }
    }
    for (auto c : kCategories) ASSERT_EQ(store.entities_of(id("root"), c).size(), spec.examined_totals[index_of(c)]);
  }
}
