#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "pasearch/metrics.hpp"

namespace pasearch {

/// Replayable ranked results of a system under test: line-delimited JSON
/// objects {"query": id, "results": [{"doc_id": id, "score"?: number}, ...]}.
/// Scores, when present, must be non-increasing; they are validated and then
/// discarded (list order is authoritative).
class RunFile {
 public:
  const RankedResult* find(const DocKey& query) const;
  const std::vector<RankedResult>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend RunFile load_run(std::istream&);

 private:
  std::vector<RankedResult> entries_;  // file order
  std::unordered_map<DocKey, std::size_t> index_;
};

/// Throws ParseError (with line number) on a malformed line, DataError on a
/// duplicate query id, non-monotone scores, or duplicate ids in a ranking.
RunFile load_run(std::istream& in);
RunFile load_run_file(const std::string& path);

/// Writes rankings in the run-file format (no scores).
/// load_run(save_run(x)) reproduces x.
void save_run(std::ostream& out, const std::vector<RankedResult>& entries);
void save_run_file(const std::string& path, const std::vector<RankedResult>& entries);

}  // namespace pasearch
