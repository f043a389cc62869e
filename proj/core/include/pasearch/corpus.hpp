#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "pasearch/record.hpp"

namespace pasearch {

/// In-memory corpus: records indexed by canonical id plus a secondary
/// (office, number) index used for citation resolution.
class Corpus {
 public:
  /// Inserts or replaces; returns true when an existing id was replaced.
  bool upsert(DocumentRecord rec);

  const DocumentRecord* find(const DocKey& key) const;
  bool contains(const DocKey& key) const { return find(key) != nullptr; }
  std::size_t size() const { return records_.size(); }

  /// All keys in ascending canonical order.
  std::vector<DocKey> sorted_keys() const;

  /// Keys sharing (office, number), ascending; nullptr when none.
  const std::vector<DocKey>* find_by_office_number(std::string_view office,
                                                   std::string_view number) const;

  /// Order-independent content fingerprint over serialized records.
  std::uint64_t content_hash() const;

  const std::unordered_map<DocKey, DocumentRecord>& records() const { return records_; }

 private:
  std::unordered_map<DocKey, DocumentRecord> records_;
  std::unordered_map<std::string, std::vector<DocKey>> by_office_number_;
};

struct IngestStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t duplicates = 0;
  /// (line number, reason) for every rejected input record.
  std::vector<std::pair<std::size_t, std::string>> rejections;
};

enum class IngestMode { skip_and_count, fail_fast };

/// Reads the canonical line-delimited format into the corpus. Blank lines are
/// ignored. In skip_and_count mode malformed lines are recorded in the stats;
/// in fail_fast mode the first malformed line throws ParseError with its line
/// number. Duplicate ids follow last-write-wins and are counted.
IngestStats ingest_corpus(std::istream& source, Corpus& corpus,
                          IngestMode mode = IngestMode::skip_and_count);

IngestStats ingest_corpus_file(const std::string& path, Corpus& corpus,
                               IngestMode mode = IngestMode::skip_and_count);

/// Writes the corpus back out in canonical form, one record per line,
/// ascending canonical id.
void write_corpus_file(const std::string& path, const Corpus& corpus);

}  // namespace pasearch
