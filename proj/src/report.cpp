#include "zetagram/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "zetagram/errors.hpp"

namespace zetagram {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void Document::add(const std::string& key, FieldValue value) {
  fields.push_back(Field{key, std::move(value)});
}

const FieldValue* Document::find(const std::string& key) const {
  for (const Field& f : fields)
    if (f.key == key) return &f.value;
  return nullptr;
}

namespace {

// Doubles keep a mantissa marker so integral values re-read as doubles, not
// as integers; "inf"/"nan" parse through strtod and need no marker.
std::string csv_number(double x) {
  std::string s = format_double(x);
  if (s.find_first_of(".eE") == std::string::npos && std::isfinite(x)) s += ".0";
  return s;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_cell(const FieldValue& v) {
  if (std::holds_alternative<std::string>(v)) return csv_quote(std::get<std::string>(v));
  if (std::holds_alternative<double>(v)) return csv_number(std::get<double>(v));
  if (std::holds_alternative<long long>(v)) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%lld", std::get<long long>(v));
    return buf;
  }
  return std::get<bool>(v) ? "true" : "false";
}

struct Cell {
  std::string text;
  bool quoted = false;
};

std::vector<Cell> split_csv_line(const std::string& line) {
  std::vector<Cell> out;
  size_t i = 0;
  while (true) {
    Cell c;
    if (i < line.size() && line[i] == '"') {
      c.quoted = true;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            c.text += '"';
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          c.text += line[i++];
        }
      }
      if (!closed) throw validation_error("report CSV: unterminated quote");
    } else {
      while (i < line.size() && line[i] != ',') c.text += line[i++];
    }
    out.push_back(std::move(c));
    if (i >= line.size()) break;
    if (line[i] != ',') throw validation_error("report CSV: malformed quoting");
    ++i;
  }
  return out;
}

FieldValue parse_cell(const Cell& c) {
  if (c.quoted) return c.text;
  if (c.text == "true") return true;
  if (c.text == "false") return false;
  if (c.text.empty()) throw validation_error("report CSV: empty unquoted cell");
  const char* s = c.text.c_str();
  char* end = nullptr;
  const long long ll = std::strtoll(s, &end, 10);
  if (end && *end == '\0' && c.text.find_first_of(".eE") == std::string::npos &&
      c.text.find_first_not_of("+-0123456789") == std::string::npos)
    return ll;
  end = nullptr;
  const double d = std::strtod(s, &end);
  if (end && *end == '\0') return d;
  throw validation_error("report CSV: unparseable cell '" + c.text + "'");
}

// JSON has no literal for non-finite doubles; encode them as strings and
// decode those exact strings back to doubles.
nlohmann::ordered_json json_value(const FieldValue& v) {
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  if (std::holds_alternative<double>(v)) {
    const double x = std::get<double>(v);
    if (!std::isfinite(x)) return format_double(x);
    return x;
  }
  if (std::holds_alternative<long long>(v)) return std::get<long long>(v);
  return std::get<bool>(v);
}

FieldValue from_json_value(const nlohmann::ordered_json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "-inf" || s == "nan")
      return std::strtod(s.c_str(), nullptr);
    return s;
  }
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer() || j.is_number_unsigned())
    return static_cast<long long>(j.get<long long>());
  if (j.is_number_float()) return j.get<double>();
  throw validation_error("report JSON: unsupported value type");
}

Document parse_csv(const std::string& text) {
  Document doc;
  bool have_kind = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<Cell> cells = split_csv_line(line);
    const std::string& tag = cells[0].text;
    if (tag == "kind") {
      if (cells.size() != 2) throw validation_error("report CSV: malformed kind line");
      doc.kind = cells[1].text;
      have_kind = true;
    } else if (tag == "field") {
      if (cells.size() != 3) throw validation_error("report CSV: malformed field line");
      doc.add(cells[1].text, parse_cell(cells[2]));
    } else if (tag == "columns") {
      for (size_t i = 1; i < cells.size(); ++i) doc.columns.push_back(cells[i].text);
    } else if (tag == "row") {
      std::vector<FieldValue> row;
      for (size_t i = 1; i < cells.size(); ++i) row.push_back(parse_cell(cells[i]));
      if (row.size() != doc.columns.size())
        throw validation_error("report CSV: row width does not match columns");
      doc.rows.push_back(std::move(row));
    } else {
      throw validation_error("report CSV: unknown line tag '" + tag + "'");
    }
  }
  if (!have_kind) throw validation_error("report CSV: missing kind line");
  return doc;
}

Document parse_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw validation_error(std::string("report JSON: ") + e.what());
  }
  Document doc;
  if (!j.contains("kind") || !j["kind"].is_string())
    throw validation_error("report JSON: missing kind");
  doc.kind = j["kind"].get<std::string>();
  if (j.contains("fields")) {
    for (const auto& item : j["fields"].items())
      doc.add(item.key(), from_json_value(item.value()));
  }
  if (j.contains("columns")) {
    for (const auto& c : j["columns"]) doc.columns.push_back(c.get<std::string>());
    for (const auto& row : j["rows"]) {
      std::vector<FieldValue> r;
      for (const auto& v : row) r.push_back(from_json_value(v));
      if (r.size() != doc.columns.size())
        throw validation_error("report JSON: row width does not match columns");
      doc.rows.push_back(std::move(r));
    }
  }
  return doc;
}

}  // namespace

std::string to_csv(const Document& doc) {
  std::string out = "kind," + csv_quote(doc.kind) + "\n";
  for (const Field& f : doc.fields)
    out += "field," + csv_quote(f.key) + "," + csv_cell(f.value) + "\n";
  if (!doc.columns.empty()) {
    out += "columns";
    for (const std::string& c : doc.columns) out += "," + csv_quote(c);
    out += "\n";
    for (const auto& row : doc.rows) {
      out += "row";
      for (const FieldValue& v : row) out += "," + csv_cell(v);
      out += "\n";
    }
  }
  return out;
}

std::string to_json(const Document& doc) {
  nlohmann::ordered_json j;
  j["kind"] = doc.kind;
  nlohmann::ordered_json fields = nlohmann::ordered_json::object();
  for (const Field& f : doc.fields) fields[f.key] = json_value(f.value);
  j["fields"] = fields;
  if (!doc.columns.empty()) {
    j["columns"] = doc.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : doc.rows) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const FieldValue& v : row) r.push_back(json_value(v));
      rows.push_back(std::move(r));
    }
    j["rows"] = rows;
  }
  return j.dump(2) + "\n";
}

std::string render(const Document& doc, ReportFormat format) {
  return format == ReportFormat::csv ? to_csv(doc) : to_json(doc);
}

void write_file(const Document& doc, const std::string& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("write_file: cannot open '" + path + "'");
  const std::string body = render(doc, format);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw validation_error("write_file: write failed for '" + path + "'");
}

Document read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("read_file: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw validation_error("read_file: empty report '" + path + "'");
  return text[first] == '{' ? parse_json(text) : parse_csv(text);
}

namespace {

double field_double(const Document& d, const std::string& key) {
  const FieldValue* v = d.find(key);
  if (!v) throw validation_error("merge_reports: missing field '" + key + "'");
  if (std::holds_alternative<double>(*v)) return std::get<double>(*v);
  if (std::holds_alternative<long long>(*v))
    return static_cast<double>(std::get<long long>(*v));
  throw validation_error("merge_reports: field '" + key + "' is not numeric");
}

long long field_ll(const Document& d, const std::string& key) {
  const FieldValue* v = d.find(key);
  if (!v) throw validation_error("merge_reports: missing field '" + key + "'");
  if (std::holds_alternative<long long>(*v)) return std::get<long long>(*v);
  throw validation_error("merge_reports: field '" + key + "' is not an integer");
}

bool is_one_of(const std::string& kind, std::initializer_list<const char*> kinds) {
  for (const char* k : kinds)
    if (kind == k) return true;
  return false;
}

}  // namespace

Document merge_reports(const Document& a, const Document& b) {
  if (a.kind != b.kind)
    throw validation_error("merge_reports: kind mismatch ('" + a.kind + "' vs '" +
                           b.kind + "')");
  if (a.kind.rfind("good-segments", 0) == 0)
    throw validation_error(
        "merge_reports: good-segment sweeps do not compose across a window boundary");
  if (!is_one_of(a.kind, {"census-theorem1", "census-selberg-c", "sign-preserving-r", "n0"}))
    throw validation_error("merge_reports: kind '" + a.kind + "' is not additive");
  if (!a.rows.empty() || !b.rows.empty())
    throw validation_error("merge_reports: row tables are not mergeable");

  const Document& first = field_double(a, "T") <= field_double(b, "T") ? a : b;
  const Document& second = &first == &a ? b : a;
  const double t1 = field_double(first, "T");
  const double u1 = field_double(first, "U");
  const double t2 = field_double(second, "T");
  if (!(std::fabs(t1 + u1 - t2) <= 1e-9 * std::fmax(1.0, std::fabs(t2))))
    throw validation_error("merge_reports: windows must be disjoint and adjacent");
  if (field_double(first, "tau") != field_double(second, "tau"))
    throw validation_error("merge_reports: tau mismatch");
  if (first.find("paper_mode") && second.find("paper_mode") &&
      !(*first.find("paper_mode") == *second.find("paper_mode")))
    throw validation_error("merge_reports: paper-mode mismatch");

  const long long total = field_ll(first, "total") + field_ll(second, "total");
  const long long hits = field_ll(first, "hits") + field_ll(second, "hits");
  const long long uncertain = field_ll(first, "uncertain") + field_ll(second, "uncertain");
  const double predicted =
      field_double(first, "predicted_main_term") + field_double(second, "predicted_main_term");
  const double predicted_alt =
      field_double(first, "predicted_alt") + field_double(second, "predicted_alt");
  const double fraction =
      total > 0 ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
  const bool measure_style = a.kind == "census-selberg-c";

  Document m;
  m.kind = a.kind;
  for (const Field& f : first.fields) {
    const std::string& k = f.key;
    if (k == "T") {
      m.add(k, t1);  // merged window anchors at the lower half
    } else if (k == "U") {
      m.add(k, u1 + field_double(second, "U"));
    } else if (k == "total") {
      m.add(k, total);
    } else if (k == "hits") {
      m.add(k, hits);
    } else if (k == "uncertain") {
      m.add(k, uncertain);
    } else if (k == "predicted_main_term") {
      m.add(k, predicted);
    } else if (k == "predicted_alt") {
      m.add(k, predicted_alt);
    } else if (k == "fraction") {
      m.add(k, fraction);
    } else if (k == "ratio") {
      m.add(k, measure_style
                   ? fraction
                   : (predicted != 0.0 ? static_cast<double>(hits) / predicted
                                       : std::numeric_limits<double>::infinity()));
    } else if (k == "ratio_alt") {
      m.add(k, measure_style
                   ? fraction
                   : (predicted_alt != 0.0 ? static_cast<double>(hits) / predicted_alt
                                           : std::numeric_limits<double>::infinity()));
    } else if (k == "overrides") {
      std::string ov;
      if (const FieldValue* v = first.find(k); v && std::holds_alternative<std::string>(*v))
        ov = std::get<std::string>(*v);
      if (const FieldValue* v = second.find(k); v && std::holds_alternative<std::string>(*v)) {
        const std::string& o2 = std::get<std::string>(*v);
        if (!o2.empty() && o2 != ov) {
          if (!ov.empty()) ov += ";";
          ov += o2;
        }
      }
      m.add(k, ov);
    } else if (k == "samples" || k == "measure_estimate") {
      // Per-window work tallies add even when the halves happen to agree.
      if (second.find(k)) m.add(k, field_double(first, k) + field_double(second, k));
    } else if (const FieldValue* o = second.find(k); o && *o == f.value) {
      // Window-independent field: keep only when both halves agree.
      m.add(k, f.value);
    }
    // Otherwise the field is window-specific and disagrees: drop it.
  }
  return m;
}

}  // namespace zetagram
