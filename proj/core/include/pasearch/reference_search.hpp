#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pasearch/corpus.hpp"
#include "pasearch/metrics.hpp"

namespace pasearch {

/// Deterministic lexical searcher used for end-to-end desk-scale runs: tf-idf
/// cosine over the concatenated abstract and claims, ASCII-lowercased tokens
/// split on non-alphanumeric bytes (multi-byte UTF-8 sequences pass through
/// untouched), no stemming. Ties break by ascending canonical id, so
/// identical corpus and query always yield the identical ranking. The index
/// is immutable after construction; concurrent queries are safe.
class ReferenceSearcher {
 public:
  explicit ReferenceSearcher(const Corpus& corpus);
  ~ReferenceSearcher();
  ReferenceSearcher(ReferenceSearcher&&) noexcept;
  ReferenceSearcher& operator=(ReferenceSearcher&&) noexcept;

  /// Ranks every corpus document (nothing is excluded; base-family handling
  /// is the evaluator's job) and returns the top min(k, corpus size).
  /// Throws DataError when the query document has no text.
  RankedResult search(const DocumentRecord& query, int k) const;

  std::size_t indexed_documents() const;

 private:
  struct Index;
  std::unique_ptr<Index> index_;
};

/// Tokenizer shared with tests: lowercased alphanumeric runs.
std::vector<std::string> lexical_tokens(std::string_view text);

}  // namespace pasearch
