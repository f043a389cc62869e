#include "pasearch/cluster.hpp"

#include <algorithm>
#include <map>

#include "pasearch/errors.hpp"

namespace pasearch {

namespace {

std::string office_number_key(std::string_view office, std::string_view number) {
  std::string k;
  k.reserve(office.size() + number.size() + 1);
  k.append(office);
  k.push_back('|');
  k.append(number);
  return k;
}

void merge_sorted_into(std::vector<DocKey>& acc, std::span<const DocKey> more) {
  std::size_t mid = acc.size();
  acc.insert(acc.end(), more.begin(), more.end());
  std::inplace_merge(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(mid), acc.end());
}

}  // namespace

std::vector<DocKey> SemanticCluster::cited_docs() const {
  std::vector<DocKey> out;
  for (const auto& f : same_office) out.insert(out.end(), f.cited.begin(), f.cited.end());
  for (const auto& f : other_office) out.insert(out.end(), f.cited.begin(), f.cited.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DocKey> SemanticCluster::member_union() const {
  std::vector<DocKey> out = base_family;
  for (const auto& f : same_office) merge_sorted_into(out, f.members);
  for (const auto& f : other_office) merge_sorted_into(out, f.members);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t SemanticCluster::citation_count(bool same_office_side) const {
  std::string_view base_office = std::string_view(base).substr(0, 2);
  std::size_t n = 0;
  for (const auto* cat : {&same_office, &other_office})
    for (const auto& f : *cat)
      for (const auto& doc : f.cited)
        if ((std::string_view(doc).substr(0, 2) == base_office) == same_office_side) ++n;
  return n;
}

std::string ClusterBuildOptions::fingerprint() const {
  std::string s = "examiner_only=";
  s += examiner_only ? '1' : '0';
  s += ";kinds=";
  std::vector<std::string> kinds = base_kinds;
  std::sort(kinds.begin(), kinds.end());
  for (const auto& k : kinds) {
    s += k;
    s += ',';
  }
  return s;
}

CitationResolver::CitationResolver(const Corpus& corpus, const FamilyIndex& families)
    : corpus_(corpus) {
  // Table-only documents are resolvable through their family even though the
  // corpus has no record for them.
  for (const auto& [fam, members] : families.families()) {
    for (const auto& key : members) {
      if (corpus.contains(key)) continue;
      DocId id = parse_doc_id(key);
      auto& bucket = table_only_by_office_number_[office_number_key(id.office, id.number)];
      bucket.insert(std::lower_bound(bucket.begin(), bucket.end(), key), key);
    }
  }
}

CitationResolver::Result CitationResolver::resolve(const CitationRef& ref) const {
  auto candidate_match = [&](const DocKey& key) {
    DocId id = parse_doc_id(key);
    if (!ref.kind.empty() && id.kind != ref.kind) return false;
    if (ref.date && id.pub_date != *ref.date) return false;
    return true;
  };

  const DocKey* best = nullptr;
  auto consider = [&](const std::vector<DocKey>* bucket) {
    if (!bucket) return;
    for (const auto& key : *bucket) {
      if (!candidate_match(key)) continue;
      if (!best || key < *best) best = &key;
    }
  };
  consider(corpus_.find_by_office_number(ref.office, ref.number));
  auto it = table_only_by_office_number_.find(office_number_key(ref.office, ref.number));
  consider(it == table_only_by_office_number_.end() ? nullptr : &it->second);
  if (best) return {Status::resolved, *best};

  if (!ref.kind.empty() && ref.date)
    return {Status::unresolved_pseudo,
            DocId{ref.office, ref.number, ref.kind, *ref.date}.canonical()};
  return {Status::dropped, {}};
}

SemanticCluster build_cluster(const DocKey& base, const Corpus& corpus,
                              const FamilyIndex& families, const ClusterBuildOptions& opts) {
  CitationResolver resolver(corpus, families);
  return build_cluster(base, corpus, families, resolver, opts);
}

SemanticCluster build_cluster(const DocKey& base, const Corpus& corpus,
                              const FamilyIndex& families, const CitationResolver& resolver,
                              const ClusterBuildOptions& opts) {
  const DocumentRecord* rec = corpus.find(base);
  if (!rec) throw NotFoundError("unknown base document '" + base + "'");

  SemanticCluster cluster;
  cluster.base = base;
  auto [base_fam, base_members] = families.family_of(base);
  cluster.base_family_id = base_fam;
  cluster.base_family.assign(base_members.begin(), base_members.end());

  // Resolve, dedupe and group citations by family.
  struct Group {
    std::vector<DocKey> cited;
    std::vector<DocKey> members;
    bool any_same_office = false;
  };
  std::map<FamilyId, Group> groups;
  std::vector<DocKey> seen;
  std::string_view base_office = std::string_view(base).substr(0, 2);

  for (const auto& ref : rec->citations) {
    if (opts.examiner_only && ref.source != CitationSource::examiner) continue;
    auto res = resolver.resolve(ref);
    if (res.status == CitationResolver::Status::dropped) {
      ++cluster.dropped_citations;
      continue;
    }
    if (std::find(seen.begin(), seen.end(), res.key) != seen.end()) continue;
    seen.push_back(res.key);

    FamilyId fam;
    std::span<const DocKey> members;
    if (res.status == CitationResolver::Status::resolved) {
      auto [f, m] = families.family_of(res.key);
      if (f == cluster.base_family_id) continue;  // self-citation, already C_x
      fam = f;
      members = m;
    } else {
      fam = res.key;  // singleton pseudo-family keyed by the doc itself
      members = std::span<const DocKey>(&seen.back(), 1);
    }
    Group& g = groups[fam];
    if (g.members.empty()) g.members.assign(members.begin(), members.end());
    g.cited.insert(std::lower_bound(g.cited.begin(), g.cited.end(), res.key), res.key);
    if (std::string_view(res.key).substr(0, 2) == base_office) g.any_same_office = true;
  }

  for (auto& [fam, g] : groups) {
    CitedFamily cf{fam, std::move(g.cited), std::move(g.members)};
    (g.any_same_office ? cluster.same_office : cluster.other_office).push_back(std::move(cf));
  }
  return cluster;
}

}  // namespace pasearch
