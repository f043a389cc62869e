#include "pasearch/doc_id.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "pasearch/errors.hpp"

namespace pasearch {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

char to_upper(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

bool parse_int(std::string_view s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

bool Date::ok() const {
  if (year < 1 || year > 9999) return false;
  std::chrono::year_month_day ymd{std::chrono::year{year},
                                  std::chrono::month{static_cast<unsigned>(month)},
                                  std::chrono::day{static_cast<unsigned>(day)}};
  return ymd.ok();
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::string Date::compact() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d%02d%02d", year, month, day);
  return buf;
}

std::optional<Date> Date::parse_iso(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  Date d;
  if (!parse_int(s.substr(0, 4), d.year) || !parse_int(s.substr(5, 2), d.month) ||
      !parse_int(s.substr(8, 2), d.day))
    return std::nullopt;
  if (!d.ok()) return std::nullopt;
  return d;
}

std::optional<Date> Date::parse_compact(std::string_view s) {
  if (s.size() != 8) return std::nullopt;
  Date d;
  if (!parse_int(s.substr(0, 4), d.year) || !parse_int(s.substr(4, 2), d.month) ||
      !parse_int(s.substr(6, 2), d.day))
    return std::nullopt;
  if (!d.ok()) return std::nullopt;
  return d;
}

std::optional<Date> Date::parse(std::string_view s) {
  if (s.size() == 10) return parse_iso(s);
  return parse_compact(s);
}

std::string normalize_number(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c == ' ' || c == ',' || c == '/' || c == '\t') continue;
    out.push_back(to_upper(c));
  }
  return out;
}

std::string normalize_office(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    if (c == ' ') continue;
    out.push_back(to_upper(c));
  }
  return out;
}

std::string normalize_kind(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    if (c == ' ') continue;
    out.push_back(to_upper(c));
  }
  return out;
}

bool valid_office(std::string_view s) {
  return s.size() == 2 && is_upper(s[0]) && is_upper(s[1]);
}

bool valid_number(std::string_view s) {
  if (s.empty()) return false;
  bool has_digit = false;
  for (char c : s) {
    if (is_digit(c)) has_digit = true;
    else if (!is_upper(c)) return false;
  }
  return has_digit;
}

bool valid_kind(std::string_view s) {
  if (s.empty() || s.size() > 2) return false;
  if (!is_upper(s[0])) return false;
  return s.size() == 1 || is_digit(s[1]);
}

std::string DocId::canonical() const {
  std::string out;
  out.reserve(office.size() + number.size() + kind.size() + 9);
  out += office;
  out += number;
  out += kind;
  out += '_';
  out += pub_date.compact();
  return out;
}

DocId make_doc_id(std::string_view office, std::string_view number,
                  std::string_view kind, const Date& pub_date) {
  DocId id;
  id.office = normalize_office(office);
  id.number = normalize_number(number);
  id.kind = normalize_kind(kind);
  id.pub_date = pub_date;
  if (!valid_office(id.office))
    throw ParseError("invalid office code '" + std::string(office) + "'");
  if (!valid_number(id.number))
    throw ParseError("invalid document number '" + std::string(number) + "'");
  if (!valid_kind(id.kind))
    throw ParseError("invalid kind code '" + std::string(kind) + "'");
  if (!pub_date.ok())
    throw ParseError("invalid publication date " + pub_date.iso());
  return id;
}

std::string canonical_doc_id(std::string_view office, std::string_view number,
                             std::string_view kind, const Date& pub_date) {
  return make_doc_id(office, number, kind, pub_date).canonical();
}

std::optional<DocId> try_parse_doc_id(std::string_view s) {
  // <office:2><number><kind>_<YYYYMMDD>; the kind is the shortest suffix of
  // the pre-underscore segment matching [A-Z][0-9]?, which is unambiguous
  // because a kind never starts with a digit.
  auto us = s.rfind('_');
  if (us == std::string_view::npos || s.size() - us - 1 != 8) return std::nullopt;
  auto date = Date::parse_compact(s.substr(us + 1));
  if (!date) return std::nullopt;

  std::string_view head = s.substr(0, us);
  if (head.size() < 4) return std::nullopt;  // office + >=1 number char + kind
  std::string_view office = head.substr(0, 2);
  if (!valid_office(office)) return std::nullopt;

  std::size_t kind_len;
  char last = head.back();
  if (is_upper(last)) {
    kind_len = 1;
  } else if (is_digit(last) && head.size() >= 2 && is_upper(head[head.size() - 2])) {
    kind_len = 2;
  } else {
    return std::nullopt;
  }
  std::string_view number = head.substr(2, head.size() - 2 - kind_len);
  std::string_view kind = head.substr(head.size() - kind_len);
  if (!valid_number(number) || !valid_kind(kind)) return std::nullopt;

  DocId id;
  id.office = std::string(office);
  id.number = std::string(number);
  id.kind = std::string(kind);
  id.pub_date = *date;
  return id;
}

DocId parse_doc_id(std::string_view canonical) {
  auto id = try_parse_doc_id(canonical);
  if (!id) throw ParseError("malformed document id '" + std::string(canonical) + "'");
  return *id;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace pasearch
