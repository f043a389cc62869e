#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pasearch/cluster_store.hpp"

namespace pasearch {

/// Which kind codes count as applications vs granted patents when grouping
/// indicator rows. Clusters whose base kind is in neither set still count in
/// the Total column.
struct KindGroups {
  std::vector<std::string> applications = {"A", "A1"};
  std::vector<std::string> patents = {"B2", "C1", "C2"};
};

struct GroupIndicators {
  std::uint64_t cluster_count = 0;
  std::uint64_t nonunique_doc_count = 0;  // sum of cluster sizes
  std::uint64_t unique_doc_count = 0;     // |union of all cluster members|
  std::uint64_t base_only_cluster_count = 0;
  std::uint64_t citations_same_office = 0;
  std::uint64_t citations_other_office = 0;
  std::uint64_t clusters_with_same_office = 0;
  std::uint64_t clusters_with_only_same_office = 0;
  std::uint64_t clusters_with_other_office = 0;
  std::uint64_t clusters_with_only_other_office = 0;
  std::uint64_t clusters_with_both = 0;
  std::uint64_t clusters_family_only_no_citations = 0;
  std::uint64_t base_family_size_sum = 0;
  double avg_citations_all = 0.0;
  double avg_citations_same = 0.0;
  double avg_citations_other = 0.0;
  double avg_base_family_size = 0.0;
};

/// Indicator block per base-kind group, mirroring the collection
/// characteristics tables. Citation counts are distinct resolved cited
/// documents per cluster (base-family self-citations excluded); this
/// counting rule travels with the machine-readable export.
struct IndicatorReport {
  GroupIndicators applications;
  GroupIndicators patents;
  GroupIndicators total;
  std::string citation_counting =
      "distinct resolved cited documents per cluster; "
      "citations resolving into the base family excluded";
};

/// Cluster-size distribution: member-union size -> cluster count per group.
struct SizeHistogram {
  std::map<std::uint64_t, std::uint64_t> applications;
  std::map<std::uint64_t, std::uint64_t> patents;
  std::map<std::uint64_t, std::uint64_t> total;
};

/// The exact average used by the indicator rows: sum / count, 0 when the
/// count is 0.
double indicator_average(std::uint64_t sum, std::uint64_t count);

/// Two-decimal display rounding used in the plain-text table.
std::string format_indicator_average(double value);

/// Scans the store once and fills every indicator. The per-group identities
/// (only+both = with, unique <= nonunique, average definitions) are verified
/// after computation; a violation throws DataError.
IndicatorReport compute_indicators(const ClusterStore& store,
                                   const KindGroups& groups = {});

SizeHistogram size_histogram(const ClusterStore& store, const KindGroups& groups = {});

/// Plain-text table, one row per indicator, columns Applications / Patents /
/// Total.
void write_indicator_table(std::ostream& out, const IndicatorReport& report);

/// Machine-readable JSON export with full-precision averages.
void write_indicator_json(std::ostream& out, const IndicatorReport& report);

/// "size,count_applications,count_patents" CSV, ascending size.
void write_histogram_csv(std::ostream& out, const SizeHistogram& hist);

}  // namespace pasearch
