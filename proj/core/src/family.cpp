#include "pasearch/family.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include "pasearch/errors.hpp"

namespace pasearch {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::vector<std::size_t> size;

  explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::pair<FamilyId, std::span<const DocKey>> FamilyIndex::family_of(const DocKey& id) const {
  auto it = doc_to_family_.find(id);
  if (it == doc_to_family_.end()) throw NotFoundError("unknown document id '" + id + "'");
  return {it->second, members(it->second)};
}

const FamilyId* FamilyIndex::find_family(const DocKey& id) const {
  auto it = doc_to_family_.find(id);
  return it == doc_to_family_.end() ? nullptr : &it->second;
}

std::span<const DocKey> FamilyIndex::members(const FamilyId& family) const {
  auto it = family_members_.find(family);
  if (it == family_members_.end()) return {};
  return it->second;
}

std::vector<FamilyPair> parse_family_table(std::istream& source) {
  std::vector<FamilyPair> pairs;
  std::unordered_map<DocKey, FamilyId> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(source, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto comma = t.find(',');
    if (comma == std::string::npos) throw ParseError(lineno, "expected 'family_id,doc_id'");
    FamilyId fam = trim(t.substr(0, comma));
    std::string doc = trim(t.substr(comma + 1));
    if (fam.empty()) throw ParseError(lineno, "empty family id");
    if (!try_parse_doc_id(doc)) throw ParseError(lineno, "malformed doc id '" + doc + "'");
    auto [it, inserted] = seen.emplace(doc, fam);
    if (!inserted) {
      if (it->second != fam)
        throw DataError("contradictory family table: '" + doc + "' mapped to both '" +
                        it->second + "' and '" + fam + "'");
      continue;  // duplicate pair
    }
    pairs.push_back({std::move(fam), std::move(doc)});
  }
  return pairs;
}

std::vector<FamilyPair> parse_family_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open family table '" + path + "'");
  return parse_family_table(in);
}

FamilyIndex resolve_families(const Corpus& corpus, const std::vector<FamilyPair>& table) {
  // Node set: corpus documents plus every table doc, in ascending key order
  // so that the result cannot depend on input order.
  std::vector<DocKey> nodes = corpus.sorted_keys();
  {
    std::vector<DocKey> extra;
    for (const auto& p : table)
      if (!corpus.contains(p.doc)) extra.push_back(p.doc);
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    nodes.insert(nodes.end(), extra.begin(), extra.end());
    std::inplace_merge(nodes.begin(), nodes.end() - extra.size(), nodes.end());
  }
  std::unordered_map<DocKey, std::size_t> node_index;
  node_index.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) node_index.emplace(nodes[i], i);

  UnionFind uf(nodes.size());

  // (a) explicit table co-membership, and the record-supplied family keys
  // which are treated exactly like table entries
  std::unordered_map<FamilyId, std::size_t> table_anchor;
  auto link_explicit = [&](const FamilyId& fam, std::size_t idx) {
    auto [it, inserted] = table_anchor.emplace(fam, idx);
    if (!inserted) uf.unite(it->second, idx);
  };
  for (const auto& p : table) link_explicit(p.family, node_index.at(p.doc));

  // (b) shared priority triples and (c) shared application references
  std::unordered_map<std::string, std::size_t> prio_anchor;
  std::unordered_map<std::string, std::size_t> app_anchor;
  for (const auto& key : nodes) {
    const DocumentRecord* rec = corpus.find(key);
    if (!rec) continue;  // table-only doc, no record data
    std::size_t idx = node_index.at(key);
    if (!rec->family_id.empty()) link_explicit(rec->family_id, idx);
    for (const auto& prio : rec->priorities) {
      std::string k = prio.office + '|' + prio.number + '|' + prio.date.compact();
      auto [it, inserted] = prio_anchor.emplace(std::move(k), idx);
      if (!inserted) uf.unite(it->second, idx);
    }
    if (rec->application) {
      std::string k = rec->application->office + '|' + rec->application->number;
      auto [it, inserted] = app_anchor.emplace(std::move(k), idx);
      if (!inserted) uf.unite(it->second, idx);
    }
  }

  // Components, keyed by smallest member (nodes are sorted, so the first
  // member seen per root is the smallest).
  std::unordered_map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < nodes.size(); ++i) components[uf.find(i)].push_back(i);

  struct Component {
    std::vector<std::size_t> member_idx;  // ascending
    std::set<FamilyId> explicit_ids;
  };
  std::vector<Component> comps;
  comps.reserve(components.size());
  for (auto& [root, idxs] : components) {
    Component c;
    c.member_idx = std::move(idxs);
    std::sort(c.member_idx.begin(), c.member_idx.end());
    comps.push_back(std::move(c));
  }
  std::sort(comps.begin(), comps.end(), [&](const Component& a, const Component& b) {
    return nodes[a.member_idx.front()] < nodes[b.member_idx.front()];
  });

  // Attach explicit ids to their components.
  std::unordered_map<std::size_t, std::size_t> root_to_comp;
  for (std::size_t c = 0; c < comps.size(); ++c)
    root_to_comp.emplace(uf.find(comps[c].member_idx.front()), c);
  auto note_explicit = [&](const FamilyId& fam, std::size_t idx) {
    comps[root_to_comp.at(uf.find(idx))].explicit_ids.insert(fam);
  };
  for (const auto& p : table) note_explicit(p.family, node_index.at(p.doc));
  for (const auto& key : nodes) {
    const DocumentRecord* rec = corpus.find(key);
    if (rec && !rec->family_id.empty()) note_explicit(rec->family_id, node_index.at(key));
  }

  std::set<FamilyId> taken;
  for (const auto& c : comps)
    if (!c.explicit_ids.empty()) taken.insert(*c.explicit_ids.begin());

  FamilyIndex index;
  std::size_t next_synth = 1;
  for (const auto& c : comps) {
    FamilyId fam;
    if (!c.explicit_ids.empty()) {
      fam = *c.explicit_ids.begin();
    } else {
      do {
        fam = "FAM" + std::to_string(next_synth++);
      } while (taken.count(fam));
    }
    std::vector<DocKey> members;
    members.reserve(c.member_idx.size());
    for (std::size_t i : c.member_idx) members.push_back(nodes[i]);
    for (const auto& m : members) index.doc_to_family_.emplace(m, fam);
    index.family_members_.emplace(std::move(fam), std::move(members));
  }
  return index;
}

void write_family_table(std::ostream& out, const FamilyIndex& index) {
  for (const auto& [fam, members] : index.families())
    for (const auto& m : members) out << fam << ',' << m << '\n';
}

void write_family_table_file(const std::string& path, const FamilyIndex& index) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write family table '" + path + "'");
  write_family_table(out, index);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace pasearch
