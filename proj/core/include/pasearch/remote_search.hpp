#pragma once

#include <optional>
#include <string>

#include "pasearch/metrics.hpp"
#include "pasearch/record.hpp"

namespace pasearch {

/// Wire contract for an external search system. One POST per query:
///   request  {"query_id": id, "abstract"?, "description"?, "claims"?, "k": K}
///   response {"query_id": id, "results": [{"doc_id": id, "score"?}, ...]}
/// Transport failures and malformed responses are per-query skips, not fatal
/// errors; the evaluator records the reason.
struct RemoteConfig {
  std::string endpoint;  // e.g. http://localhost:8080/search
  int timeout_sec = 30;
  int retries = 2;  // additional attempts after the first
};

class RemoteSearchClient {
 public:
  explicit RemoteSearchClient(RemoteConfig config);

  struct Response {
    std::optional<RankedResult> result;
    std::string error;  // skip reason when result is empty
  };

  Response search(const DocumentRecord& query, int k) const;

 private:
  RemoteConfig config_;
  std::string base_url_;
  std::string path_;
};

}  // namespace pasearch
