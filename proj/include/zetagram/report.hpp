#pragma once

// Report documents: an ordered list of (key, value) fields plus an optional
// row table, serialized to CSV or JSON with identical content. Values are
// printed with %.17g so re-reading a report reproduces the binary64 values
// bit for bit. Documents carry no timestamps or host details; two runs with
// the same inputs and engine version produce identical bytes.

#include <string>
#include <variant>
#include <vector>

namespace zetagram {

enum class ReportFormat { csv, json };

using FieldValue = std::variant<std::string, double, long long, bool>;

struct Field {
  std::string key;
  FieldValue value;
};

struct Document {
  std::string kind;                   // e.g. "census-theorem1"
  std::vector<Field> fields;          // ordered scalar header
  std::vector<std::string> columns;   // optional row table
  std::vector<std::vector<FieldValue>> rows;

  void add(const std::string& key, FieldValue value);
  const FieldValue* find(const std::string& key) const;
};

std::string to_csv(const Document& doc);
std::string to_json(const Document& doc);
std::string render(const Document& doc, ReportFormat format);
void write_file(const Document& doc, const std::string& path,
                ReportFormat format);

Document read_file(const std::string& path);  // format sniffed from content

// Additive merge of reports of the same kind over disjoint adjacent windows:
// counting fields add, window extents extend, ratios are recomputed from the
// merged counts. Good-segment reports are rejected (their greedy sweeps do
// not compose across a boundary). Throws validation_error on kind mismatch,
// overlapping windows, or non-mergeable kinds.
Document merge_reports(const Document& a, const Document& b);

// %.17g rendering used everywhere a double is printed.
std::string format_double(double x);

}  // namespace zetagram
