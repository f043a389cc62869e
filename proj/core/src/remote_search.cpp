#include "pasearch/remote_search.hpp"

#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "pasearch/errors.hpp"

namespace pasearch {

using nlohmann::json;

RemoteSearchClient::RemoteSearchClient(RemoteConfig config) : config_(std::move(config)) {
  const std::string& url = config_.endpoint;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ConfigError("endpoint must be an http URL: '" + url + "'");
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    base_url_ = url;
    path_ = "/";
  } else {
    base_url_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
}

RemoteSearchClient::Response RemoteSearchClient::search(const DocumentRecord& query,
                                                        int k) const {
  json req{{"query_id", query.key()}, {"k", k}};
  if (!query.abstract.empty()) req["abstract"] = query.abstract;
  if (!query.description.empty()) req["description"] = query.description;
  if (!query.claims.empty()) req["claims"] = query.claims;
  const std::string body = req.dump();

  std::string last_error = "no attempts made";
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    httplib::Client client(base_url_);
    client.set_connection_timeout(config_.timeout_sec, 0);
    client.set_read_timeout(config_.timeout_sec, 0);

    auto res = client.Post(path_, body, "application/json");
    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "http status " + std::to_string(res->status);
      continue;
    }

    json j = json::parse(res->body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("results") ||
        !j["results"].is_array())
      return {std::nullopt, "malformed response"};
    if (j.value("query_id", std::string()) != query.key())
      return {std::nullopt, "protocol error: query_id mismatch"};

    RankedResult out;
    out.query = query.key();
    std::unordered_set<std::string> uniq;
    for (const auto& jr : j["results"]) {
      if (!jr.is_object() || !jr.contains("doc_id"))
        return {std::nullopt, "malformed response: result entry without doc_id"};
      std::string doc = jr["doc_id"].get<std::string>();
      if (!uniq.insert(doc).second)
        return {std::nullopt, "malformed response: duplicate doc_id '" + doc + "'"};
      out.ranking.push_back(std::move(doc));
    }
    return {std::move(out), {}};
  }
  return {std::nullopt, last_error + " after " + std::to_string(config_.retries + 1) +
                            " attempt(s)"};
}

}  // namespace pasearch
