#pragma once

#include <chrono>
#include <optional>
#include <string>

#include <httplib.h>

#include "simnet/error.hpp"
#include "simnet/ingest.hpp"
#include "simnet/model.hpp"

namespace simnet {

/// Follows HTTP redirects with HEAD requests until a non-redirect answer.
/// Plain http only; a redirect to another scheme ends the walk and that
/// location is taken as the full URL.
inline UrlResolver make_http_resolver(std::chrono::milliseconds timeout, int max_hops = 5) {
  return [timeout, max_hops](const std::string& short_url) -> std::optional<std::string> {
    std::string current = short_url;
    for (int hop = 0; hop <= max_hops; ++hop) {
      auto parts = split_url(current);
      if (!parts || parts->host.empty()) throw Error(ErrorKind::InvalidInput, "not an absolute URL: " + current);
      if (detail::ascii_lower(parts->scheme) != "http") return hop == 0 ? std::nullopt : std::optional(current);

      // split_url drops the port, so take the authority as written.
      const auto after = current.substr(current.find("//") + 2);
      const auto cut = after.find_first_of("/?#");
      std::string authority = after.substr(0, cut);
      if (auto at = authority.rfind('@'); at != std::string::npos) authority.erase(0, at + 1);
      std::string path = cut == std::string::npos ? std::string{} : after.substr(cut);
      if (auto hash = path.find('#'); hash != std::string::npos) path.erase(hash);
      if (path.empty() || path.front() != '/') path.insert(path.begin(), '/');

      httplib::Client client("http://" + authority);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
      const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
      client.set_connection_timeout(secs.count(), usecs.count());
      client.set_read_timeout(secs.count(), usecs.count());
      client.set_follow_location(false);
      auto res = client.Head(path);
      if (!res) throw Error(ErrorKind::Io, "request to " + current + " failed: " + httplib::to_string(res.error()));
      if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
        std::string next = res->get_header_value("Location");
        if (!next.empty() && next.front() == '/') next = "http://" + authority + next;
        current = next;
        continue;
      }
      if (res->status >= 200 && res->status < 300) return hop == 0 ? std::nullopt : std::optional(current);
      throw Error(ErrorKind::Io, "HTTP " + std::to_string(res->status) + " from " + current);
    }
    throw Error(ErrorKind::Io, "too many redirects from " + short_url);
  };
}

}  // namespace simnet
