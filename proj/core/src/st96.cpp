#include "pasearch/st96.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "pasearch/errors.hpp"

namespace pasearch {

namespace {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

std::string_view local_name(std::string_view tag) {
  auto pos = tag.rfind(':');
  return pos == std::string_view::npos ? tag : tag.substr(pos + 1);
}

bool is_meta(std::string_view tag) {
  return tag == "<xmlattr>" || tag == "<xmlcomment>" || tag == "<xmltext>";
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Depth-first search for the first element with the given local name.
const pt::ptree* find_first(const pt::ptree& node, std::string_view name) {
  for (const auto& [tag, child] : node) {
    if (is_meta(tag)) continue;
    if (local_name(tag) == name) return &child;
    if (const pt::ptree* hit = find_first(child, name)) return hit;
  }
  return nullptr;
}

void find_all(const pt::ptree& node, std::string_view name,
              std::vector<const pt::ptree*>& out) {
  for (const auto& [tag, child] : node) {
    if (is_meta(tag)) continue;
    if (local_name(tag) == name) {
      out.push_back(&child);
      continue;  // no nested elements of the same name inside one
    }
    find_all(child, name, out);
  }
}

/// Text of an element: own text plus descendant paragraphs joined by newlines.
std::string gather_text(const pt::ptree& node) {
  std::string out = trim(node.data());
  for (const auto& [tag, child] : node) {
    if (is_meta(tag)) continue;
    std::string t = gather_text(child);
    if (t.empty()) continue;
    if (!out.empty()) out += '\n';
    out += t;
  }
  return out;
}

/// First matching child text among a list of accepted local names, searched
/// recursively below `node`.
std::string field_text(const pt::ptree& node, std::initializer_list<std::string_view> names) {
  for (auto name : names) {
    if (const pt::ptree* hit = find_first(node, name)) return trim(hit->data());
  }
  return {};
}

std::string attr(const pt::ptree& node, const char* name) {
  if (auto a = node.get_child_optional("<xmlattr>")) {
    if (auto v = a->get_optional<std::string>(name)) return *v;
  }
  return {};
}

CitationSource classify_citation(const pt::ptree& node) {
  std::string cat = field_text(node, {"CitationCategory", "CitedPhase", "Category"});
  if (cat.empty()) cat = attr(node, "category");
  std::transform(cat.begin(), cat.end(), cat.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (cat.find("examin") != std::string::npos) return CitationSource::examiner;
  if (cat.find("applicant") != std::string::npos) return CitationSource::applicant;
  return CitationSource::unknown;
}

}  // namespace

DocumentRecord parse_st96_subset(const std::string& xml_text) {
  pt::ptree doc;
  try {
    std::istringstream in(xml_text);
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("XML: ") + e.what());
  }

  const pt::ptree* pubref = find_first(doc, "PublicationReference");
  if (!pubref) throw ParseError("missing publication reference");

  std::string office = field_text(*pubref, {"IPOfficeCode", "OfficeCode", "Office"});
  std::string number = field_text(*pubref, {"DocNumber", "DocumentNumber", "Number"});
  std::string kind = field_text(*pubref, {"KindCode", "Kind"});
  std::string date_raw = field_text(*pubref, {"PublicationDate", "Date"});
  auto date = Date::parse(date_raw);
  if (!date) throw ParseError("publication reference: malformed date '" + date_raw + "'");

  DocumentRecord rec;
  rec.id = make_doc_id(office, number, kind, *date);

  if (const pt::ptree* appref = find_first(doc, "ApplicationReference")) {
    ApplicationRef a;
    a.office = normalize_office(field_text(*appref, {"IPOfficeCode", "OfficeCode", "Office"}));
    a.number = normalize_number(
        field_text(*appref, {"ApplicationNumber", "DocNumber", "DocumentNumber", "Number"}));
    if (valid_office(a.office) && !a.number.empty()) rec.application = std::move(a);
  }

  std::vector<const pt::ptree*> prio_nodes;
  find_all(doc, "PriorityClaim", prio_nodes);
  for (const pt::ptree* pc : prio_nodes) {
    PriorityClaim p;
    p.office = normalize_office(field_text(*pc, {"IPOfficeCode", "OfficeCode", "Office"}));
    p.number = normalize_number(
        field_text(*pc, {"ApplicationNumber", "DocNumber", "DocumentNumber", "Number"}));
    auto d = Date::parse(field_text(*pc, {"PriorityDate", "Date"}));
    if (!d || !valid_office(p.office) || p.number.empty())
      throw ParseError("malformed priority claim");
    p.date = *d;
    rec.priorities.push_back(std::move(p));
  }

  std::vector<const pt::ptree*> cits;
  find_all(doc, "ReferenceCitation", cits);
  find_all(doc, "Citation", cits);
  for (const pt::ptree* jc : cits) {
    CitationRef c;
    c.office = normalize_office(field_text(*jc, {"IPOfficeCode", "OfficeCode", "Office"}));
    c.number = normalize_number(
        field_text(*jc, {"DocNumber", "DocumentNumber", "Number"}));
    if (!valid_office(c.office) || !valid_number(c.number))
      throw ParseError("malformed citation reference");
    std::string kindc = normalize_kind(field_text(*jc, {"KindCode", "Kind"}));
    if (!kindc.empty()) {
      if (!valid_kind(kindc)) throw ParseError("citation: invalid kind '" + kindc + "'");
      c.kind = kindc;
    }
    std::string cd = field_text(*jc, {"PublicationDate", "Date"});
    if (!cd.empty()) {
      auto d = Date::parse(cd);
      if (!d) throw ParseError("citation: malformed date '" + cd + "'");
      c.date = *d;
    }
    c.source = classify_citation(*jc);
    rec.citations.push_back(std::move(c));
  }
  dedup_citations(rec.citations);

  if (const pt::ptree* fam = find_first(doc, "FamilyIdentifier"))
    rec.family_id = trim(fam->data());

  if (const pt::ptree* n = find_first(doc, "Abstract")) rec.abstract = gather_text(*n);
  if (const pt::ptree* n = find_first(doc, "Description")) rec.description = gather_text(*n);
  if (const pt::ptree* n = find_first(doc, "Claims")) rec.claims = gather_text(*n);
  if (const pt::ptree* n = find_first(doc, "InventionTitle")) rec.title = gather_text(*n);

  return rec;
}

IngestStats ingest_st96_path(const std::string& path, Corpus& corpus, IngestMode mode) {
  std::vector<fs::path> files;
  fs::path p(path);
  if (fs::is_directory(p)) {
    for (const auto& entry : fs::directory_iterator(p))
      if (entry.is_regular_file() && entry.path().extension() == ".xml")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(p)) {
    files.push_back(p);
  } else {
    throw IoError("no such file or directory: '" + path + "'");
  }

  IngestStats stats;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open '" + file.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      DocumentRecord rec = parse_st96_subset(buf.str());
      ++stats.accepted;
      if (corpus.upsert(std::move(rec))) ++stats.duplicates;
    } catch (const ParseError& e) {
      if (mode == IngestMode::fail_fast)
        throw ParseError(file.string() + ": " + e.what());
      ++stats.rejected;
      stats.rejections.emplace_back(0, file.string() + ": " + e.what());
    }
  }
  return stats;
}

}  // namespace pasearch
