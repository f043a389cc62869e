#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pasearch/cluster.hpp"

namespace pasearch {

/// On-disk cluster store: a directory holding
///   clusters.jsonl — one record per base document, ascending canonical id
///   meta.json      — corpus fingerprint, build-options fingerprint, count
/// Content is deterministic: identical inputs produce byte-identical files.
/// An interrupted build leaves clusters.jsonl.partial behind and resumes
/// from the last completed record.
class ClusterStore {
 public:
  struct Meta {
    std::uint64_t corpus_hash = 0;
    std::string build_options;
    std::uint64_t cluster_count = 0;
  };

  /// Opens an existing store (throws IoError / DataError when absent or
  /// inconsistent).
  static ClusterStore open(const std::string& dir);

  std::optional<SemanticCluster> get(const DocKey& base) const;
  bool contains(const DocKey& base) const { return offsets_.count(base) != 0; }
  std::size_t size() const { return offsets_.size(); }
  const Meta& meta() const { return meta_; }
  const std::string& dir() const { return dir_; }

  /// Sequential scan in file order (ascending base id).
  void for_each(const std::function<void(const SemanticCluster&)>& fn) const;

  /// Debug dump: one line per record, the four categories separated by '|'.
  void dump(std::ostream& out) const;

 private:
  ClusterStore() = default;
  std::string dir_;
  Meta meta_;
  std::unordered_map<DocKey, std::streamoff> offsets_;
  std::vector<DocKey> ordered_bases_;
};

/// Serialized record line (used by the store and by tests).
std::string cluster_to_json_line(const SemanticCluster& cluster);
SemanticCluster cluster_from_json_line(std::string_view line);

/// Builds one record per corpus document whose kind is in opts.base_kinds
/// (all kinds when empty) and persists them under store_dir. Restartable:
/// a leftover partial file from the same corpus and options is continued,
/// anything else is discarded. Returns the opened store.
ClusterStore build_all_clusters(const Corpus& corpus, const FamilyIndex& families,
                                const ClusterBuildOptions& opts,
                                const std::string& store_dir);

/// Reconstructs the full cluster for a stored base document.
/// Throws NotFoundError when no record exists.
SemanticCluster get_cluster(const ClusterStore& store, const DocKey& base);

}  // namespace pasearch
