#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simnet/cycles.hpp"
#include "simnet/error.hpp"
#include "simnet/influence.hpp"
#include "simnet/ingest.hpp"
#include "simnet/network.hpp"
#include "simnet/network_io.hpp"
#include "simnet/similarity.hpp"
#include "simnet/store.hpp"
#include "simnet/synth.hpp"

namespace simnet::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDomain = 3;

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound:
    case ErrorKind::NoEntities:
      return kExitDomain;
    default:
      return kExitInput;
  }
}

inline constexpr const char* kGraphFile = "graph.nt";
inline constexpr const char* kDatasetFile = "dataset.jsonl";
inline constexpr const char* kUrlMapFile = "urlmap.tsv";
inline constexpr const char* kManifestFile = "manifest.json";

// Builds the remote URL resolver for a given per-request timeout.
using RemoteFactory = std::function<UrlResolver(std::chrono::milliseconds)>;

struct RunConfig {
  std::string store_dir;
  std::optional<std::string> at;
  std::size_t k = 15;
  bool k_given = false;
  std::size_t depth = 1;
  std::size_t max_cycle_len = 0;  // 0: network size
  std::size_t max_cycles = kDefaultMaxCycles;
  std::string format = "table";
  std::string resolver = "offline";
  int timeout_ms = 5000;
  int retries = 1;
  double min_hours = 1.0;
  bool lenient = false;
  bool keep_www = false;
  std::optional<std::string> output;
  RemoteFactory remote;  // used by --resolver remote
};

namespace detail {

inline Timestamp resolve_clock(const RunConfig& cfg) {
  if (cfg.at) {
    auto ts = parse_timestamp(*cfg.at);
    if (!ts) throw Error(ErrorKind::InvalidInput, "--at is not an ISO-8601 timestamp: " + *cfg.at);
    return *ts;
  }
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

inline fs::path store_path(const RunConfig& cfg) {
  if (cfg.store_dir.empty()) throw Error(ErrorKind::InvalidInput, "no store directory (use --store or SIMNET_STORE)");
  return fs::path(cfg.store_dir);
}

inline GraphStore open_store(const RunConfig& cfg, std::ostream& err) {
  const fs::path path = store_path(cfg) / kGraphFile;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open store graph '" + path.string() + "'");
  ImportOptions opts;
  opts.strict = !cfg.lenient;
  opts.warn = [&](const std::string& w) { err << "warning: " << w << '\n'; };
  return import_ntriples(in, opts);
}

inline std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Writes to --output when given, otherwise to `out`.
template <class Fn>
void emit(const RunConfig& cfg, std::ostream& out, Fn&& fn) {
  if (!cfg.output) {
    fn(out);
    return;
  }
  std::ofstream file(*cfg.output, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot write '" + *cfg.output + "'");
  fn(file);
  if (!file) throw Error(ErrorKind::Io, "failed writing '" + *cfg.output + "'");
}

inline void print_ranking_table(const std::vector<SimilarityScore>& ranked, std::ostream& out) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-4s %-20s %8s %8s %8s %8s %8s %8s %8s %8s %8s %10s %8s\n", "rank", "account",
                "ht_tot", "ht_com", "men_tot", "men_com", "url_tot", "url_com", "dom_tot", "dom_com", "CWC",
                "categories", "SM");
  out << buf;
  std::size_t rank = 0;
  for (const auto& s : ranked) {
    const auto& h = s.stats(EntityCategory::Hashtag);
    const auto& m = s.stats(EntityCategory::Mention);
    const auto& u = s.stats(EntityCategory::Url);
    const auto& d = s.stats(EntityCategory::Domain);
    std::snprintf(buf, sizeof buf, "%-4zu %-20s %8zu %8zu %8zu %8zu %8zu %8zu %8zu %8zu %8s %10d %8s\n", ++rank,
                  ("@" + s.other.value()).c_str(), h.e_n_other, h.e_cn, m.e_n_other, m.e_cn, u.e_n_other, u.e_cn,
                  d.e_n_other, d.e_cn, fixed(s.cwc_sum).c_str(), s.label, fixed(s.sm).c_str());
    out << buf;
  }
}

inline void print_ranking_csv(const std::vector<SimilarityScore>& ranked, std::ostream& out) {
  out << "rank,account";
  for (auto c : kCategories) {
    const std::string n = to_string(c);
    out << ',' << n << "_total," << n << "_common," << n << "_cf," << n << "_w," << n << "_wc," << n << "_cc," << n
        << "_cwc";
  }
  out << ",cwc,label,sm\n";
  std::size_t rank = 0;
  for (const auto& s : ranked) {
    out << ++rank << ',' << s.other.value();
    for (const auto& st : s.categories) {
      out << ',' << st.e_n_other << ',' << st.e_cn << ',' << decimal_text(st.e_cf) << ',' << decimal_text(st.e_w)
          << ',' << decimal_text(st.e_wc) << ',' << decimal_text(st.e_cc) << ',' << decimal_text(st.e_cwc);
    }
    out << ',' << decimal_text(s.cwc_sum) << ',' << s.label << ',' << decimal_text(s.sm) << '\n';
  }
}

inline nlohmann::ordered_json ranking_json(const AccountId& examined, const std::vector<SimilarityScore>& ranked) {
  nlohmann::ordered_json j;
  j["examined"] = examined.value();
  auto rows = nlohmann::ordered_json::array();
  std::size_t rank = 0;
  for (const auto& s : ranked) {
    nlohmann::ordered_json row;
    row["rank"] = ++rank;
    row["account"] = s.other.value();
    for (const auto& st : s.categories) {
      row[to_string(st.category)] = {{"examined_total", st.e_n_examined}, {"total", st.e_n_other}, {"common", st.e_cn},
                                     {"cf", st.e_cf},  {"w", st.e_w},  {"wc", st.e_wc},
                                     {"cc", st.e_cc},  {"cwc", st.e_cwc}};
    }
    row["cwc"] = s.cwc_sum;
    row["label"] = s.label;
    row["sm"] = s.sm;
    rows.push_back(row);
  }
  j["results"] = rows;
  return j;
}

inline SimilarityNetwork read_network_file(const std::string& path, std::size_t k) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open network file '" + path + "'");
  int first = in.peek();
  while (first == ' ' || first == '\n' || first == '\r' || first == '\t') {
    in.get();
    first = in.peek();
  }
  if (first == '{') return read_network_json(in);
  return read_network_csv(in, k);
}

}  // namespace detail

inline void cmd_ingest(const RunConfig& cfg, const std::string& data, const std::optional<std::string>& url_map,
                       std::ostream& out, std::ostream& err) {
  const Warn warn = [&](const std::string& w) { err << "warning: " << w << '\n'; };
  const Timestamp as_of = detail::resolve_clock(cfg);
  Dataset ds = load(data, url_map, warn);

  ResolverPolicy policy;
  policy.mode = cfg.resolver == "remote" ? ResolverMode::OfflineThenRemote : ResolverMode::OfflineMapOnly;
  policy.timeout = std::chrono::milliseconds(cfg.timeout_ms);
  policy.retries = cfg.retries;
  policy.strip_www = !cfg.keep_www;
  if (policy.mode == ResolverMode::OfflineThenRemote && !cfg.remote)
    throw Error(ErrorKind::InvalidInput, "remote resolution is not available in this build");
  ds = resolve_urls(std::move(ds), policy, cfg.remote ? cfg.remote(policy.timeout) : UrlResolver{}, warn);

  BuildOptions opts;
  opts.as_of = as_of;
  opts.strip_www = policy.strip_www;
  opts.influence.min_hours = cfg.min_hours;
  opts.warn = warn;
  const GraphStore store = build(ds, opts);

  const fs::path dir = detail::store_path(cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create store directory '" + dir.string() + "': " + ec.message());
  auto write = [&](const char* name, auto&& fn) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + (dir / name).string() + "'");
    fn(f);
  };
  write(kGraphFile, [&](std::ostream& f) { export_ntriples(store, f); });
  write(kDatasetFile, [&](std::ostream& f) { write_dataset(f, ds); });
  write(kUrlMapFile, [&](std::ostream& f) { write_url_map(f, ds.url_map); });

  std::size_t resolved = 0;
  const auto urls = url_resources(ds, policy.strip_www);
  for (const auto& [_, r] : urls) resolved += r.domain.has_value();
  nlohmann::ordered_json manifest;
  manifest["accounts"] = ds.accounts.size();
  manifest["tweets"] = ds.tweets.size();
  manifest["follows"] = ds.follows.size();
  manifest["urls"] = urls.size();
  manifest["resolved_urls"] = resolved;
  manifest["triples"] = store.size();
  manifest["ingested_at"] = format_timestamp(as_of);
  write(kManifestFile, [&](std::ostream& f) { f << manifest.dump(2) << '\n'; });

  out << "ingested " << ds.accounts.size() << " accounts, " << ds.tweets.size() << " tweets, " << store.size()
      << " triples into " << dir.string() << '\n';
}

inline void cmd_influence(const RunConfig& cfg, const std::string& account, std::ostream& out) {
  const AccountId id = normalize_account(account);
  const fs::path path = detail::store_path(cfg) / kDatasetFile;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  const Dataset ds = read_dataset(in);
  auto it = std::find_if(ds.accounts.begin(), ds.accounts.end(), [&](const AccountProfile& a) { return a.id == id; });
  if (it == ds.accounts.end()) throw Error(ErrorKind::NotFound, "unknown account '" + id.value() + "'");

  const Timestamp as_of = detail::resolve_clock(cfg);
  InfluenceOptions opts;
  opts.min_hours = cfg.min_hours;
  const AccountMetrics m = compute_metrics(*it, std::span<const TweetRecord>(ds.tweets), as_of, opts);
  const auto window = TweetWindow::latest(id, ds.tweets, as_of);

  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["account"] = id.value();
    j["as_of"] = format_timestamp(as_of);
    j["window"] = {{"tweets", window ? window->size() : 0},
                   {"hours", window ? hours_since_oldest(*window, opts) : 0.0}};
    j["general"] = {{"total_tweets", m.general.total_tweets},
                    {"tweets_per_day", m.general.tweets_per_day},
                    {"retweet_ratio", m.general.retweet_ratio},
                    {"followers", m.general.followers},
                    {"following", m.general.following}};
    nlohmann::ordered_json q;
    q["h_index_rt"] = m.quality.h_index_rt;
    q["h_index_fav"] = m.quality.h_index_fav;
    q["h_index_rt_daily"] = m.quality.h_index_rt_daily ? nlohmann::ordered_json(*m.quality.h_index_rt_daily) : nullptr;
    q["h_index_fav_daily"] = m.quality.h_index_fav_daily ? nlohmann::ordered_json(*m.quality.h_index_fav_daily) : nullptr;
    q["reply_ratio"] = m.quality.reply_ratio;
    q["influence"] = m.quality.influence;
    j["quality"] = q;
    out << j.dump(2) << '\n';
    return;
  }
  out << "account          @" << id.value() << '\n'
      << "as of            " << format_timestamp(as_of) << '\n'
      << "General Information\n"
      << "  tweets         " << m.general.total_tweets << '\n'
      << "  tweets/day     " << detail::fixed(m.general.tweets_per_day) << '\n'
      << "  retweet ratio  " << detail::fixed(m.general.retweet_ratio) << '\n'
      << "  followers      " << m.general.followers << '\n'
      << "  following      " << m.general.following << '\n'
      << "Quality Metrics\n"
      << "  RT h-index     " << m.quality.h_index_rt << '\n'
      << "  fav h-index    " << m.quality.h_index_fav << '\n'
      << "  reply ratio    " << detail::fixed(m.quality.reply_ratio) << '\n'
      << "  influence      " << detail::fixed(m.quality.influence, 4) << '\n';
}

inline void cmd_similar(const RunConfig& cfg, const std::string& account, std::ostream& out, std::ostream& err) {
  if (cfg.k == 0) throw Error(ErrorKind::InvalidInput, "--k must be at least 1");
  if (cfg.depth == 0) throw Error(ErrorKind::InvalidInput, "--depth must be at least 1");
  const GraphStore store = detail::open_store(cfg, err);
  const AccountId id = normalize_account(account);
  const bool network_format = cfg.format == "gexf" || cfg.format == "dot";

  if (cfg.depth == 1 && !network_format) {
    const auto ranked = top_k_similar(store, id, cfg.k);
    detail::emit(cfg, out, [&](std::ostream& o) {
      if (cfg.format == "csv") {
        detail::print_ranking_csv(ranked, o);
      } else if (cfg.format == "json") {
        o << detail::ranking_json(id, ranked).dump(2) << '\n';
      } else {
        detail::print_ranking_table(ranked, o);
      }
    });
    return;
  }

  const SimilarityNetwork net = expand(store, id, cfg.k, cfg.depth);
  if (cfg.format == "table") {
    detail::emit(cfg, out, [&](std::ostream& o) {
      o << "root @" << net.root.value() << ", k=" << net.k << ", depth=" << net.depth << '\n'
        << "nodes " << net.nodes.size() << ", edges " << net.edges.size() << ", expanded " << net.expanded.size()
        << '\n'
        << "depth  theoretical  new  total\n";
      for (const auto& g : growth(net))
        o << std::setw(5) << g.depth << std::setw(13) << g.theoretical << std::setw(5) << g.new_nodes << std::setw(7)
          << g.total_nodes << '\n';
    });
    return;
  }
  const GraphFormat format = parse_graph_format(cfg.format);
  detail::emit(cfg, out, [&](std::ostream& o) { write_network(net, format, o); });
}

inline void cmd_stats(const RunConfig& cfg, const std::string& network_path, const std::string& kind,
                      std::ostream& out) {
  const SimilarityNetwork net = detail::read_network_file(network_path, cfg.k_given ? cfg.k : 0);
  const bool json = cfg.format == "json";

  if (kind == "cycles") {
    const std::size_t cap = cfg.max_cycle_len ? cfg.max_cycle_len : std::max<std::size_t>(net.nodes.size(), 2);
    const CycleReport r = enumerate_cycles(net, cap, cfg.max_cycles);
    if (json) {
      nlohmann::ordered_json j;
      j["max_len"] = cap;
      j["count"] = r.cycles.size();
      j["weighted_average_size"] = r.weighted_average_size;
      nlohmann::ordered_json dist = nlohmann::ordered_json::object();
      for (const auto& [size, n] : r.size_distribution) dist[std::to_string(size)] = n;
      j["size_distribution"] = dist;
      auto cycles = nlohmann::ordered_json::array();
      for (const auto& c : r.cycles) {
        auto row = nlohmann::ordered_json::array();
        for (const auto& id : c) row.push_back(id.value());
        cycles.push_back(row);
      }
      j["cycles"] = cycles;
      out << j.dump(2) << '\n';
      return;
    }
    out << r.cycles.size() << " cycles (max length " << cap << ")\n"
        << "weighted average size " << detail::fixed(r.weighted_average_size) << '\n';
    for (const auto& [size, n] : r.size_distribution) out << "  size " << size << ": " << n << '\n';
    for (const auto& c : r.cycles) {
      for (const auto& id : c) out << id.value() << " -> ";
      out << c.front().value() << '\n';
    }
    return;
  }

  if (kind == "indegree") {
    const InDegreeReport r = in_degree_topk(net);
    std::vector<std::pair<AccountId, std::size_t>> rows(r.in_degree.begin(), r.in_degree.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (json) {
      nlohmann::ordered_json j;
      j["mean_over_expanded"] = r.mean_over_expanded;
      auto arr = nlohmann::ordered_json::array();
      for (const auto& [id, d] : rows)
        arr.push_back({{"account", id.value()},
                       {"in_degree", d},
                       {"expanded", net.expanded.count(id) != 0},
                       {"inverse_similarity", inverse_similarity(net, id)}});
      j["nodes"] = arr;
      out << j.dump(2) << '\n';
      return;
    }
    out << "mean in-degree over expanded nodes " << detail::fixed(r.mean_over_expanded) << '\n';
    for (const auto& [id, d] : rows)
      out << std::left << std::setw(24) << id.value() << std::right << std::setw(6) << d << std::setw(10)
          << detail::fixed(inverse_similarity(net, id)) << '\n';
    return;
  }

  if (kind == "growth") {
    const auto rows = growth(net);
    if (json) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& g : rows)
        arr.push_back({{"depth", g.depth}, {"theoretical", g.theoretical}, {"new_nodes", g.new_nodes},
                       {"total_nodes", g.total_nodes}});
      out << arr.dump(2) << '\n';
      return;
    }
    out << "depth  theoretical  new  total\n";
    for (const auto& g : rows)
      out << std::setw(5) << g.depth << std::setw(13) << g.theoretical << std::setw(5) << g.new_nodes << std::setw(7)
          << g.total_nodes << '\n';
    return;
  }
  throw Error(ErrorKind::InvalidInput, "unknown stats kind '" + kind + "' (cycles, indegree, growth)");
}

inline void cmd_query_common(const RunConfig& cfg, const std::string& a, const std::string& b,
                             const std::string& category, std::ostream& out, std::ostream& err) {
  const EntityCategory cat = parse_category(category);
  const GraphStore store = detail::open_store(cfg, err);
  const AccountId x = normalize_account(a);
  const AccountId y = normalize_account(b);
  const auto& ex = store.entities_of(x, cat);
  const auto& ey = store.entities_of(y, cat);
  std::vector<std::string> shared;
  std::set_intersection(ex.begin(), ex.end(), ey.begin(), ey.end(), std::back_inserter(shared));
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["a"] = x.value();
    j["b"] = y.value();
    j["category"] = to_string(cat);
    j["count"] = shared.size();
    j["entities"] = shared;
    out << j.dump(2) << '\n';
    return;
  }
  out << shared.size() << '\n';
  for (const auto& e : shared) out << "  " << e << '\n';
}

inline void cmd_synth(const std::string& kind, std::uint64_t seed, const SynthParams& params,
                      const std::string& out_path, const std::optional<std::string>& url_map_path, std::ostream& out) {
  Dataset ds;
  if (kind == "table3") {
    ds = synth_table3(seed);
  } else if (kind == "random") {
    ds = synth(seed, params);
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown synth kind '" + kind + "' (table3, random)");
  }
  {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + out_path + "'");
    write_dataset(f, ds);
  }
  if (url_map_path) {
    std::ofstream f(*url_map_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + *url_map_path + "'");
    write_url_map(f, ds.url_map);
  }
  out << "wrote " << ds.accounts.size() << " accounts, " << ds.tweets.size() << " tweets to " << out_path << '\n';
}

/// Entry point shared by the binary and the tests. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   RemoteFactory remote = {}) {
  RunConfig cfg;
  cfg.remote = std::move(remote);

  CLI::App app{"Influence metrics and similarity networks over Twitter account data", "simnet"};
  app.require_subcommand(1);
  app.add_option("--store", cfg.store_dir, "store directory")->envname("SIMNET_STORE");
  app.add_option("--at", cfg.at, "reference time, ISO-8601 (default: now)");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"table", "text", "csv", "json", "gexf", "dot"}));

  std::string data;
  std::optional<std::string> url_map;
  auto* ingest = app.add_subcommand("ingest", "load a dataset into a store");
  ingest->add_option("--data", data, "account/tweet JSONL file")->required();
  ingest->add_option("--url-map", url_map, "short URL -> full URL TSV");
  ingest->add_option("--resolver", cfg.resolver, "offline or remote")->check(CLI::IsMember({"offline", "remote"}));
  ingest->add_option("--timeout-ms", cfg.timeout_ms, "remote lookup timeout")->check(CLI::PositiveNumber);
  ingest->add_option("--retries", cfg.retries, "remote lookup retries")->check(CLI::NonNegativeNumber);
  ingest->add_flag("--keep-www", cfg.keep_www, "do not strip a leading www. from domains");
  ingest->add_option("--min-hours", cfg.min_hours, "lower bound on the tweet window length")
      ->check(CLI::PositiveNumber);

  std::string account;
  auto* influence = app.add_subcommand("influence", "general information and quality metrics of an account");
  influence->add_option("account", account)->required();
  influence->add_option("--min-hours", cfg.min_hours)->check(CLI::PositiveNumber);

  auto* similar = app.add_subcommand("similar", "top-k similar accounts or a similarity network");
  similar->add_option("account", account)->required();
  similar->add_option("--k", cfg.k, "accounts kept per expansion");
  similar->add_option("--depth", cfg.depth, "expansion depth");
  similar->add_option("--out,--output", cfg.output, "write the result to a file");
  similar->add_flag("--lenient", cfg.lenient, "skip unknown predicates in the store");

  std::string network;
  std::string kind;
  auto* stats = app.add_subcommand("stats", "cycles, in-degree or growth of a saved network");
  stats->add_option("kind", kind, "cycles, indegree or growth")->required();
  stats->add_option("--network", network, "network file (JSON or CSV edge list)")->required();
  stats->add_option("--max-len", cfg.max_cycle_len, "longest cycle to enumerate");
  stats->add_option("--max-cycles", cfg.max_cycles, "give up after this many cycles")->check(CLI::PositiveNumber);
  auto* k_opt = stats->add_option("--k", cfg.k, "k for CSV networks (default: largest rank)");

  std::string query_kind;
  std::string other;
  std::string category = "hashtag";
  auto* query = app.add_subcommand("query", "store queries");
  query->add_option("what", query_kind, "query name (common)")->required()->check(CLI::IsMember({"common"}));
  query->add_option("a", account)->required();
  query->add_option("b", other)->required();
  query->add_option("--category", category, "hashtag, mention, url or domain");
  query->add_flag("--lenient", cfg.lenient);

  std::string synth_kind = "table3";
  std::uint64_t seed = 1;
  std::string synth_out;
  std::optional<std::string> synth_map;
  SynthParams params;
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic dataset");
  synth_cmd->add_option("kind", synth_kind, "table3 or random");
  synth_cmd->add_option("--seed", seed);
  synth_cmd->add_option("--out", synth_out, "dataset JSONL path")->required();
  synth_cmd->add_option("--url-map-out", synth_map, "URL map TSV path");
  synth_cmd->add_option("--accounts", params.accounts);
  synth_cmd->add_option("--tweets", params.tweets_per_account);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  cfg.k_given = k_opt->count() > 0;

  try {
    if (*ingest) {
      cmd_ingest(cfg, data, url_map, out, err);
    } else if (*influence) {
      cmd_influence(cfg, account, out);
    } else if (*similar) {
      cmd_similar(cfg, account, out, err);
    } else if (*stats) {
      cmd_stats(cfg, network, kind, out);
    } else if (*query) {
      cmd_query_common(cfg, account, other, category, out, err);
    } else if (*synth_cmd) {
      cmd_synth(synth_kind, seed, params, synth_out, synth_map, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace simnet::cli
