#include "pasearch/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "pasearch/errors.hpp"

namespace pasearch {

using nlohmann::json;

namespace {

json cluster_to_export_json(const SemanticCluster& c, const Corpus& corpus,
                            const TextFields& texts) {
  json j;
  j["base"] = c.base;
  j["base_family"] = c.base_family;
  json same = json::array(), other = json::array();
  for (const auto& f : c.same_office)
    same.push_back({{"family_id", f.family_id}, {"members", f.members}});
  for (const auto& f : c.other_office)
    other.push_back({{"family_id", f.family_id}, {"members", f.members}});
  j["cited_same_office"] = std::move(same);
  j["cited_other_office"] = std::move(other);
  if (texts.any()) {
    json tmap = json::object();
    for (const auto& doc : c.member_union()) {
      const DocumentRecord* rec = corpus.find(doc);
      if (!rec) continue;  // family members outside the corpus carry no text
      json fields = json::object();
      if (texts.abstract && !rec->abstract.empty()) fields["abstract"] = rec->abstract;
      if (texts.description && !rec->description.empty())
        fields["description"] = rec->description;
      if (texts.claims && !rec->claims.empty()) fields["claims"] = rec->claims;
      if (!fields.empty()) tmap[doc] = std::move(fields);
    }
    j["texts"] = std::move(tmap);
  }
  return j;
}

void validate(const ExportConfig& cfg, const ClusterStore& store) {
  if (cfg.date_from && cfg.date_to && *cfg.date_to < *cfg.date_from)
    throw ConfigError("date_from must not exceed date_to");
  for (const auto& id : cfg.id_list)
    if (!try_parse_doc_id(id)) throw ConfigError("id_list entry is not canonical: '" + id + "'");
  if (cfg.output_path.empty()) throw ConfigError("output_path is required");
  // The store is built with a fixed citation-source filter; an export cannot
  // re-filter what was never stored.
  std::string want = "examiner_only=";
  want += cfg.examiner_only ? '1' : '0';
  if (store.meta().build_options.find(want) == std::string::npos)
    throw ConfigError(
        "examiner_only mismatch: store was built with different citation-source "
        "filtering (rebuild the store)");
}

}  // namespace

ExportSummary export_dataset(const ClusterStore& store, const Corpus& corpus,
                             const ExportConfig& cfg) {
  validate(cfg, store);

  std::ofstream out(cfg.output_path, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot write dataset to '" + cfg.output_path + "'");
  out << json{{"format", "semantic-clusters"}, {"version", 1}}.dump() << '\n';

  std::vector<DocKey> id_filter = cfg.id_list;
  std::sort(id_filter.begin(), id_filter.end());

  ExportSummary summary;
  std::unordered_set<DocKey> referenced;
  store.for_each([&](const SemanticCluster& c) {
    if (cfg.max_clusters && summary.clusters_written >= *cfg.max_clusters) return;
    DocId base = parse_doc_id(c.base);
    if (cfg.date_from && base.pub_date < *cfg.date_from) return;
    if (cfg.date_to && *cfg.date_to < base.pub_date) return;
    if (!cfg.base_kinds.empty() &&
        std::find(cfg.base_kinds.begin(), cfg.base_kinds.end(), base.kind) ==
            cfg.base_kinds.end())
      return;
    if (!id_filter.empty() &&
        !std::binary_search(id_filter.begin(), id_filter.end(), c.base))
      return;
    out << cluster_to_export_json(c, corpus, cfg.include_texts).dump() << '\n';
    ++summary.clusters_written;
    for (auto& doc : c.member_union()) referenced.insert(std::move(doc));
  });
  if (!out) throw IoError("write failed for '" + cfg.output_path + "'");
  summary.documents_referenced = referenced.size();
  return summary;
}

Selection select_test_documents(const ClusterStore& store, const Corpus& corpus,
                                const SelectionCriteria& criteria) {
  if (criteria.interval < 1) throw ConfigError("sampling interval must be >= 1");
  if (criteria.kinds.empty()) throw ConfigError("at least one granted kind code is required");
  if (criteria.date_to < criteria.date_from)
    throw ConfigError("date_from must not exceed date_to");

  std::vector<DocKey> eligible;
  store.for_each([&](const SemanticCluster& c) {
    DocId base = parse_doc_id(c.base);
    if (base.pub_date < criteria.date_from || criteria.date_to < base.pub_date) return;
    if (std::find(criteria.kinds.begin(), criteria.kinds.end(), base.kind) ==
        criteria.kinds.end())
      return;
    if (c.same_office.empty() && c.other_office.empty()) return;  // no relevant families
    const DocumentRecord* rec = corpus.find(c.base);
    if (!rec || !rec->has_text()) return;
    eligible.push_back(c.base);
  });
  // store scan order is ascending base id already; keep the guarantee explicit
  std::sort(eligible.begin(), eligible.end());

  Selection sel;
  sel.eligible = eligible.size();
  for (std::size_t i = 0; i < eligible.size(); i += static_cast<std::size_t>(criteria.interval))
    sel.ids.push_back(std::move(eligible[i]));
  return sel;
}

void write_id_list(std::ostream& out, const std::vector<DocKey>& ids) {
  out << "# count=" << ids.size() << '\n';
  for (const auto& id : ids) out << id << '\n';
}

void write_id_list_file(const std::string& path, const std::vector<DocKey>& ids) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write id list '" + path + "'");
  write_id_list(out, ids);
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<DocKey> read_id_list(std::istream& in) {
  std::vector<DocKey> ids;
  std::optional<std::size_t> declared;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find("count=");
      if (eq != std::string::npos) declared = std::stoull(line.substr(eq + 6));
      continue;
    }
    if (!try_parse_doc_id(line)) throw ParseError(lineno, "malformed doc id '" + line + "'");
    ids.push_back(line);
  }
  if (declared && *declared != ids.size())
    throw DataError("id list declares count=" + std::to_string(*declared) + " but has " +
                    std::to_string(ids.size()) + " ids");
  return ids;
}

std::vector<DocKey> read_id_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open id list '" + path + "'");
  return read_id_list(in);
}

}  // namespace pasearch
