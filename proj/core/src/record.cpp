#include "pasearch/record.hpp"

#include <set>
#include <tuple>

#include <json.hpp>

#include "pasearch/errors.hpp"

namespace pasearch {

using nlohmann::json;

std::string to_string(CitationSource s) {
  switch (s) {
    case CitationSource::examiner: return "examiner";
    case CitationSource::applicant: return "applicant";
    default: return "unknown";
  }
}

CitationSource citation_source_from_string(std::string_view s) {
  if (s == "examiner") return CitationSource::examiner;
  if (s == "applicant") return CitationSource::applicant;
  return CitationSource::unknown;
}

void dedup_citations(std::vector<CitationRef>& refs) {
  std::vector<CitationRef> kept;
  kept.reserve(refs.size());
  auto ident = [](const CitationRef& c) {
    return std::make_tuple(c.office, c.number, c.kind,
                           c.date ? c.date->compact() : std::string());
  };
  for (auto& c : refs) {
    bool merged = false;
    for (auto& k : kept) {
      if (ident(k) == ident(c)) {
        // examiner beats applicant beats unknown
        if (static_cast<int>(c.source) < static_cast<int>(k.source)) k.source = c.source;
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(std::move(c));
  }
  refs = std::move(kept);
}

namespace {

std::string get_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

Date get_date(const json& j, const char* key, const char* context) {
  std::string raw = get_string(j, key);
  if (raw.empty()) throw ParseError(std::string(context) + ": missing date");
  auto d = Date::parse(raw);
  if (!d) throw ParseError(std::string(context) + ": malformed date '" + raw + "'");
  return *d;
}

CitationRef parse_citation(const json& j) {
  if (!j.is_object()) throw ParseError("citation entries must be objects");
  CitationRef c;
  c.office = normalize_office(get_string(j, "office"));
  c.number = normalize_number(get_string(j, "number"));
  if (!valid_office(c.office)) throw ParseError("citation: invalid office '" + c.office + "'");
  if (!valid_number(c.number)) throw ParseError("citation: invalid number '" + c.number + "'");
  std::string kind = normalize_kind(get_string(j, "kind"));
  if (!kind.empty()) {
    if (!valid_kind(kind)) throw ParseError("citation: invalid kind '" + kind + "'");
    c.kind = kind;
  }
  std::string date = get_string(j, "date");
  if (!date.empty()) {
    auto d = Date::parse(date);
    if (!d) throw ParseError("citation: malformed date '" + date + "'");
    c.date = *d;
  }
  c.source = citation_source_from_string(get_string(j, "source"));
  return c;
}

}  // namespace

DocumentRecord parse_document_record(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("record is not a JSON object");

  auto idit = j.find("id");
  if (idit == j.end() || !idit->is_object()) throw ParseError("missing id object");
  const json& jid = *idit;

  DocumentRecord rec;
  rec.id = make_doc_id(get_string(jid, "office"), get_string(jid, "number"),
                       get_string(jid, "kind"), get_date(jid, "pub_date", "id"));
  rec.title = get_string(j, "title");
  rec.abstract = get_string(j, "abstract");
  rec.description = get_string(j, "description");
  rec.claims = get_string(j, "claims");
  rec.family_id = get_string(j, "family_id");

  if (auto it = j.find("citations"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError("citations must be an array");
    for (const auto& jc : *it) rec.citations.push_back(parse_citation(jc));
    dedup_citations(rec.citations);
  }
  if (auto it = j.find("priorities"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError("priorities must be an array");
    for (const auto& jp : *it) {
      PriorityClaim p;
      p.office = normalize_office(get_string(jp, "office"));
      p.number = normalize_number(get_string(jp, "number"));
      if (!valid_office(p.office)) throw ParseError("priority: invalid office");
      if (p.number.empty()) throw ParseError("priority: empty number");
      p.date = get_date(jp, "date", "priority");
      rec.priorities.push_back(std::move(p));
    }
  }
  if (auto it = j.find("application"); it != j.end() && !it->is_null()) {
    ApplicationRef a;
    a.office = normalize_office(get_string(*it, "office"));
    a.number = normalize_number(get_string(*it, "number"));
    if (!valid_office(a.office)) throw ParseError("application: invalid office");
    if (a.number.empty()) throw ParseError("application: empty number");
    rec.application = std::move(a);
  }
  return rec;
}

std::string serialize_document_record(const DocumentRecord& rec) {
  json j;
  j["id"] = {{"office", rec.id.office},
             {"number", rec.id.number},
             {"kind", rec.id.kind},
             {"pub_date", rec.id.pub_date.iso()}};
  if (!rec.title.empty()) j["title"] = rec.title;
  if (!rec.abstract.empty()) j["abstract"] = rec.abstract;
  if (!rec.description.empty()) j["description"] = rec.description;
  if (!rec.claims.empty()) j["claims"] = rec.claims;
  if (!rec.family_id.empty()) j["family_id"] = rec.family_id;
  if (!rec.citations.empty()) {
    json arr = json::array();
    for (const auto& c : rec.citations) {
      json jc = {{"office", c.office}, {"number", c.number}};
      if (!c.kind.empty()) jc["kind"] = c.kind;
      if (c.date) jc["date"] = c.date->iso();
      if (c.source != CitationSource::unknown) jc["source"] = to_string(c.source);
      arr.push_back(std::move(jc));
    }
    j["citations"] = std::move(arr);
  }
  if (!rec.priorities.empty()) {
    json arr = json::array();
    for (const auto& p : rec.priorities)
      arr.push_back({{"office", p.office}, {"number", p.number}, {"date", p.date.iso()}});
    j["priorities"] = std::move(arr);
  }
  if (rec.application)
    j["application"] = {{"office", rec.application->office},
                        {"number", rec.application->number}};
  return j.dump();
}

}  // namespace pasearch
