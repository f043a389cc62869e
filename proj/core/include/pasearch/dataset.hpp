#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pasearch/cluster_store.hpp"
#include "pasearch/corpus.hpp"

namespace pasearch {

/// Which text fields ride along in an exported dataset.
struct TextFields {
  bool abstract = false;
  bool description = false;
  bool claims = false;

  bool any() const { return abstract || description || claims; }
};

/// Selection and shape of one dataset export. Validated by export_dataset.
struct ExportConfig {
  std::optional<Date> date_from;  // on base pub_date, inclusive
  std::optional<Date> date_to;
  std::vector<std::string> base_kinds;  // empty = all
  std::vector<DocKey> id_list;          // explicit bases; empty = no restriction
  TextFields include_texts;
  bool examiner_only = false;  // must match the store's build options
  std::optional<std::uint64_t> max_clusters;
  std::string output_path;
};

struct ExportSummary {
  std::uint64_t clusters_written = 0;
  std::uint64_t documents_referenced = 0;  // distinct ids across all clusters
};

/// Writes selected clusters as line-delimited JSON, ascending base id, after
/// a single version header line. Output is byte-deterministic for fixed
/// inputs. An empty selection writes just the header (not an error).
/// Throws ConfigError on an invalid config (bad date range, non-canonical
/// ids, examiner_only mismatch with the store build).
ExportSummary export_dataset(const ClusterStore& store, const Corpus& corpus,
                             const ExportConfig& cfg);

/// Test-query selection: granted-kind, date-filtered bases, ordered by
/// canonical id, thinned to every interval-th entry (positions 1, m+1,
/// 2m+1, ...), keeping only documents whose cluster has at least one
/// relevant family and whose record has text.
struct SelectionCriteria {
  Date date_from;
  Date date_to;
  std::vector<std::string> kinds;
  int interval = 1;
};

struct Selection {
  std::vector<DocKey> ids;
  std::uint64_t eligible = 0;  // before interval thinning
};

Selection select_test_documents(const ClusterStore& store, const Corpus& corpus,
                                const SelectionCriteria& criteria);

/// Loads an ExportConfig from its JSON file form. Recognized keys:
/// date_from/date_to (ISO dates), base_kinds[], id_list[] or id_list_file,
/// include_texts (bool, or object with abstract/description/claims flags),
/// examiner_only, max_clusters, output_path. Throws ConfigError.
ExportConfig load_export_config(const std::string& path);

/// Id-list file: first line "# count=<n>", then one canonical id per line.
void write_id_list(std::ostream& out, const std::vector<DocKey>& ids);
void write_id_list_file(const std::string& path, const std::vector<DocKey>& ids);
std::vector<DocKey> read_id_list(std::istream& in);
std::vector<DocKey> read_id_list_file(const std::string& path);

}  // namespace pasearch
