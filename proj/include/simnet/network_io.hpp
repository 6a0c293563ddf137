#pragma once

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "simnet/error.hpp"
#include "simnet/network.hpp"
#include "simnet/ntriples.hpp"

namespace simnet {

enum class GraphFormat { Gexf, Dot, Csv, Json };

inline GraphFormat parse_graph_format(std::string_view name) {
  if (name == "gexf") return GraphFormat::Gexf;
  if (name == "dot") return GraphFormat::Dot;
  if (name == "csv") return GraphFormat::Csv;
  if (name == "json") return GraphFormat::Json;
  throw Error(ErrorKind::InvalidInput, "unknown graph format '" + std::string(name) + "'");
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

inline std::vector<std::string> split_csv_row(std::string_view row, std::size_t line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    char c = row[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < row.size() && row[i + 1] == '"') {
          fields.back().push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  if (quoted) throw ParseError(line, "unterminated quoted field");
  return fields;
}

}  // namespace detail

/// GEXF 1.2, directed, edge weight = SM, edge attribute "rank", node attribute "depth".
inline void write_gexf(const SimilarityNetwork& net, std::ostream& out) {
  using detail::xml_escape;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
      << "  <meta>\n"
      << "    <creator>simnet</creator>\n"
      << "    <description>top-" << net.k << " similarity network of " << xml_escape(net.root.value())
      << ", depth " << net.depth << "</description>\n"
      << "  </meta>\n"
      << "  <graph mode=\"static\" defaultedgetype=\"directed\">\n"
      << "    <attributes class=\"node\">\n"
      << "      <attribute id=\"depth\" title=\"depth\" type=\"integer\"/>\n"
      << "    </attributes>\n"
      << "    <attributes class=\"edge\">\n"
      << "      <attribute id=\"rank\" title=\"rank\" type=\"integer\"/>\n"
      << "    </attributes>\n"
      << "    <nodes>\n";
  for (const auto& [id, level] : net.nodes) {
    out << "      <node id=\"" << xml_escape(id.value()) << "\" label=\"" << xml_escape(id.value()) << "\">\n"
        << "        <attvalues><attvalue for=\"depth\" value=\"" << level << "\"/></attvalues>\n"
        << "      </node>\n";
  }
  out << "    </nodes>\n"
      << "    <edges>\n";
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const auto& e = net.edges[i];
    out << "      <edge id=\"" << i << "\" source=\"" << xml_escape(e.source.value()) << "\" target=\""
        << xml_escape(e.target.value()) << "\" weight=\"" << decimal_text(e.weight) << "\">\n"
        << "        <attvalues><attvalue for=\"rank\" value=\"" << e.rank << "\"/></attvalues>\n"
        << "      </edge>\n";
  }
  out << "    </edges>\n"
      << "  </graph>\n"
      << "</gexf>\n";
}

/// Graphviz digraph; penwidth grows with SM so more similar pairs draw thicker.
inline void write_dot(const SimilarityNetwork& net, std::ostream& out) {
  using detail::dot_quote;
  double max_weight = 0.0;
  for (const auto& e : net.edges) max_weight = std::max(max_weight, e.weight);
  out << "digraph similarity {\n";
  out << "  graph [root=" << dot_quote(net.root.value()) << "];\n";
  for (const auto& [id, level] : net.nodes)
    out << "  " << dot_quote(id.value()) << " [depth=" << level << "];\n";
  for (const auto& e : net.edges) {
    const double pen = max_weight > 0.0 ? 1.0 + 4.0 * e.weight / max_weight : 1.0;
    out << "  " << dot_quote(e.source.value()) << " -> " << dot_quote(e.target.value())
        << " [weight=" << decimal_text(e.weight) << ", penwidth=" << decimal_text(pen) << ", label=\"" << e.rank
        << "\"];\n";
  }
  out << "}\n";
}

inline void write_csv(const SimilarityNetwork& net, std::ostream& out) {
  out << "source,target,weight,rank\n";
  for (const auto& e : net.edges) {
    out << detail::csv_field(e.source.value()) << ',' << detail::csv_field(e.target.value()) << ','
        << decimal_text(e.weight) << ',' << e.rank << '\n';
  }
}

/// Lossless network document, readable by read_network_json.
inline void write_network_json(const SimilarityNetwork& net, std::ostream& out) {
  nlohmann::ordered_json j;
  j["root"] = net.root.value();
  j["k"] = net.k;
  j["depth"] = net.depth;
  auto nodes = nlohmann::ordered_json::array();
  for (const auto& [id, level] : net.nodes) nodes.push_back({{"id", id.value()}, {"depth", level}});
  j["nodes"] = nodes;
  auto expanded = nlohmann::ordered_json::array();
  for (const auto& id : net.expanded) expanded.push_back(id.value());
  j["expanded"] = expanded;
  auto leaves = nlohmann::ordered_json::array();
  for (const auto& id : net.leaves) leaves.push_back(id.value());
  j["leaves"] = leaves;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : net.edges)
    edges.push_back({{"source", e.source.value()}, {"target", e.target.value()}, {"weight", e.weight}, {"rank", e.rank}});
  j["edges"] = edges;
  auto levels = nlohmann::ordered_json::array();
  for (const auto& l : net.levels)
    levels.push_back({{"depth", l.depth}, {"new_nodes", l.new_nodes}, {"total_nodes", l.total_nodes}});
  j["levels"] = levels;
  out << j.dump(2) << '\n';
}

inline void write_network(const SimilarityNetwork& net, GraphFormat format, std::ostream& out) {
  switch (format) {
    case GraphFormat::Gexf: write_gexf(net, out); break;
    case GraphFormat::Dot: write_dot(net, out); break;
    case GraphFormat::Csv: write_csv(net, out); break;
    case GraphFormat::Json: write_network_json(net, out); break;
  }
}

inline SimilarityNetwork read_network_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    SimilarityNetwork net;
    net.root = normalize_account(j.at("root").get<std::string>());
    net.k = j.at("k").get<std::size_t>();
    net.depth = j.at("depth").get<std::size_t>();
    for (const auto& n : j.at("nodes")) net.nodes[normalize_account(n.at("id").get<std::string>())] = n.at("depth").get<std::size_t>();
    for (const auto& id : j.at("expanded")) net.expanded.insert(normalize_account(id.get<std::string>()));
    if (j.contains("leaves"))
      for (const auto& id : j.at("leaves")) net.leaves.insert(normalize_account(id.get<std::string>()));
    for (const auto& e : j.at("edges")) {
      net.edges.push_back({normalize_account(e.at("source").get<std::string>()),
                           normalize_account(e.at("target").get<std::string>()), e.at("weight").get<double>(),
                           e.at("rank").get<std::size_t>()});
    }
    for (const auto& l : j.at("levels"))
      net.levels.push_back({l.at("depth").get<std::size_t>(), l.at("new_nodes").get<std::size_t>(),
                            l.at("total_nodes").get<std::size_t>()});
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("network document: ") + e.what());
  }
}

/// Rebuilds a network from a CSV edge list. The first row's source is the root;
/// discovery depths are breadth-first distances from it. `k` defaults to the
/// largest rank present.
inline SimilarityNetwork read_network_csv(std::istream& in, std::size_t k = 0) {
  SimilarityNetwork net;
  std::string text;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (detail::trim(text).empty()) continue;
    auto fields = detail::split_csv_row(text, line);
    if (!header_seen) {
      header_seen = true;
      if (fields != std::vector<std::string>{"source", "target", "weight", "rank"})
        throw ParseError(line, "expected header source,target,weight,rank");
      continue;
    }
    if (fields.size() != 4) throw ParseError(line, "expected 4 fields");
    NetworkEdge e;
    try {
      e.source = normalize_account(fields[0]);
      e.target = normalize_account(fields[1]);
      std::size_t used = 0;
      e.weight = std::stod(fields[2], &used);
      if (used != fields[2].size() || e.weight < 0) throw ParseError(line, "bad weight");
      e.rank = std::stoul(fields[3], &used);
      if (used != fields[3].size() || e.rank == 0) throw ParseError(line, "bad rank");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(line, ex.what());
    }
    net.edges.push_back(std::move(e));
  }
  if (!header_seen) throw Error(ErrorKind::Parse, "empty CSV network");
  if (net.edges.empty()) throw Error(ErrorKind::Parse, "CSV network has no edges, root unknown");

  net.root = net.edges.front().source;
  std::map<AccountId, std::vector<AccountId>> adj;
  std::size_t max_rank = 0;
  for (const auto& e : net.edges) {
    adj[e.source].push_back(e.target);
    net.expanded.insert(e.source);
    max_rank = std::max(max_rank, e.rank);
  }
  net.k = k ? k : max_rank;
  net.nodes.emplace(net.root, 0);
  std::deque<AccountId> queue{net.root};
  while (!queue.empty()) {
    AccountId u = queue.front();
    queue.pop_front();
    for (const auto& v : adj[u]) {
      if (net.nodes.emplace(v, net.nodes[u] + 1).second) queue.push_back(v);
    }
  }
  for (const auto& e : net.edges) {
    for (const auto* id : {&e.source, &e.target}) {
      if (!net.nodes.count(*id)) throw Error(ErrorKind::Parse, "edge endpoint '" + id->value() + "' unreachable from root");
    }
  }
  std::size_t max_depth = 0;
  for (const auto& [_, d] : net.nodes) max_depth = std::max(max_depth, d);
  net.depth = std::max<std::size_t>(max_depth, 1);
  std::size_t total = 0;
  for (std::size_t d = 0; d <= net.depth; ++d) {
    std::size_t fresh = 0;
    for (const auto& [_, level] : net.nodes) fresh += (level == d);
    total += fresh;
    net.levels.push_back({d, fresh, total});
  }
  return net;
}

}  // namespace simnet
