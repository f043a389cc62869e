#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pasearch {

/// Calendar date. Validated against the proleptic Gregorian calendar,
/// years 1 through 9999 (canonical ids carry a fixed-width YYYYMMDD).
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  bool ok() const;
  /// "YYYY-MM-DD"
  std::string iso() const;
  /// "YYYYMMDD"
  std::string compact() const;

  static std::optional<Date> parse_iso(std::string_view s);
  static std::optional<Date> parse_compact(std::string_view s);
  /// Accepts either form.
  static std::optional<Date> parse(std::string_view s);

  auto operator<=>(const Date&) const = default;
};

/// Canonical patent-document identifier: office + number + kind + pub date.
/// The canonical string form is "<office><number><kind>_<YYYYMMDD>".
/// Throughout the library documents are keyed by that string; DocId is the
/// parse/format boundary type.
struct DocId {
  std::string office;  // two uppercase letters
  std::string number;  // digit-bearing, leading zeros preserved
  std::string kind;    // uppercase letter plus optional digit
  Date pub_date;

  std::string canonical() const;

  bool operator==(const DocId&) const = default;
};

/// Blanks, commas and slashes are separators in raw document numbers and get
/// stripped; leading zeros are kept so that e.g. "0099999" stays distinct.
std::string normalize_number(std::string_view raw);
std::string normalize_office(std::string_view raw);
std::string normalize_kind(std::string_view raw);

bool valid_office(std::string_view s);
bool valid_number(std::string_view s);
bool valid_kind(std::string_view s);

/// Normalizes and validates the four fields, throws ParseError on violation.
DocId make_doc_id(std::string_view office, std::string_view number,
                  std::string_view kind, const Date& pub_date);

/// Formats the canonical string form; same validation as make_doc_id.
std::string canonical_doc_id(std::string_view office, std::string_view number,
                             std::string_view kind, const Date& pub_date);

/// Inverse of DocId::canonical(). Throws ParseError on malformed input.
DocId parse_doc_id(std::string_view canonical);

/// Non-throwing probe used by loaders that report line numbers themselves.
std::optional<DocId> try_parse_doc_id(std::string_view canonical);

/// Stable 64-bit content hash (FNV-1a) used for store/corpus fingerprints.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace pasearch
