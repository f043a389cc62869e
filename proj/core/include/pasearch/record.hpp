#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pasearch/doc_id.hpp"

namespace pasearch {

/// Canonical-string document key; all indexes are keyed by this form.
using DocKey = std::string;

enum class CitationSource { examiner, applicant, unknown };

std::string to_string(CitationSource s);
CitationSource citation_source_from_string(std::string_view s);

/// A prior-art reference as printed on a publication. kind/date are often
/// missing; resolution against the corpus happens at cluster-build time.
struct CitationRef {
  std::string office;
  std::string number;
  std::string kind;  // empty when unknown
  std::optional<Date> date;
  CitationSource source = CitationSource::unknown;

  bool operator==(const CitationRef&) const = default;
};

/// Priority data triple; equal triples denote the same priority.
struct PriorityClaim {
  std::string office;
  std::string number;
  Date date;

  bool operator==(const PriorityClaim&) const = default;
};

struct ApplicationRef {
  std::string office;
  std::string number;

  bool operator==(const ApplicationRef&) const = default;
};

/// Parsed bibliographic + text record. Text fields use "" for absent.
struct DocumentRecord {
  DocId id;
  std::string title;
  std::string abstract;
  std::string description;
  std::string claims;
  std::vector<CitationRef> citations;
  std::vector<PriorityClaim> priorities;
  std::optional<ApplicationRef> application;
  std::string family_id;  // externally supplied family key, "" for none

  DocKey key() const { return id.canonical(); }
  /// True iff at least one of abstract/description/claims is non-empty.
  bool has_text() const {
    return !abstract.empty() || !description.empty() || !claims.empty();
  }

  bool operator==(const DocumentRecord&) const = default;
};

/// Parses one line of the canonical corpus format. All identifier fields are
/// normalized, citations are deduplicated, unknown keys are ignored.
/// Throws ParseError on malformed input.
DocumentRecord parse_document_record(std::string_view line);

/// Serializes a record back to one canonical line (no trailing newline).
/// parse_document_record(serialize_document_record(r)) == r.
std::string serialize_document_record(const DocumentRecord& rec);

/// Dedup rule shared by the parsers: citations with equal normalized
/// (office, number, kind, date) collapse to one entry; an examiner-sourced
/// duplicate upgrades the kept entry's source.
void dedup_citations(std::vector<CitationRef>& refs);

}  // namespace pasearch
