#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"
#include "zetagram/errors.hpp"
#include "zetagram/report.hpp"

using namespace zetagram;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

// A plausible zero-count report with every value type exercised.
Document sample_doc() {
  Document d;
  d.kind = "n0";
  d.add("engine", std::string("zetagram 0.1.0"));
  d.add("T", 1000.0);
  d.add("U", 40.0);
  d.add("tau", 0.0);
  d.add("total", 30LL);
  d.add("hits", 28LL);
  d.add("uncertain", 2LL);
  d.add("fraction", 28.0 / 30.0);
  d.add("predicted_main_term", 43.97);
  d.add("predicted_alt", 32.27);
  d.add("ratio", 28.0 / 43.97);
  d.add("ratio_alt", 28.0 / 32.27);
  d.add("paper_mode", false);
  d.add("anchor", std::string("(1/2pi) U ln T"));
  d.add("overrides", std::string(""));
  d.add("samples", 260.0);
  d.add("scan_step", 0.15491460158741867);
  return d;
}

Document n0_half(double T, double U, long long total, long long hits,
                 long long uncertain, double samples, double scan_step) {
  Document d;
  d.kind = "n0";
  d.add("engine", std::string("zetagram 0.1.0"));
  d.add("T", T);
  d.add("U", U);
  d.add("tau", 0.0);
  d.add("total", total);
  d.add("hits", hits);
  d.add("uncertain", uncertain);
  d.add("fraction", static_cast<double>(hits) / static_cast<double>(total));
  d.add("predicted_main_term", U * std::log(T) / 6.283185307179586);
  d.add("predicted_alt", U * std::log(T / 6.283185307179586) / 6.283185307179586);
  d.add("ratio", 0.0);
  d.add("ratio_alt", 0.0);
  d.add("paper_mode", false);
  d.add("anchor", std::string("(1/2pi) U ln T"));
  d.add("overrides", std::string(""));
  d.add("samples", samples);
  d.add("scan_step", scan_step);
  return d;
}

bool same_value(const FieldValue& a, const FieldValue& b) { return a == b; }

}  // namespace

TEST_CASE("format_double round-trips binary64 exactly") {
  const double cases[] = {0.0,
                          1.0 / 3.0,
                          6.62607015e-34,
                          1e308,
                          3.141592653589793,
                          0.1,
                          123456789.123456789,
                          4.9406564584124654e-324,
                          -2.2250738585072014e-308};
  for (const double x : cases) {
    const std::string s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  const std::string neg_zero = format_double(-0.0);
  CHECK(std::signbit(std::strtod(neg_zero.c_str(), nullptr)));
}

TEST_CASE("CSV keeps doubles as doubles and escapes quoted text") {
  Document d;
  d.kind = "zeval";
  d.add("U", 60.0);
  d.add("n", 60LL);
  d.add("flag", true);
  d.add("msg", std::string("he said \"hi\", twice"));
  const std::string text = to_csv(d);
  CHECK(text.find("field,\"U\",60.0\n") != std::string::npos);
  CHECK(text.find("field,\"n\",60\n") != std::string::npos);
  CHECK(text.find("field,\"flag\",true\n") != std::string::npos);
  CHECK(text.find("field,\"msg\",\"he said \"\"hi\"\", twice\"\n") != std::string::npos);
}

TEST_CASE("reports round-trip through both formats byte for byte") {
  Document d = sample_doc();
  d.add("infty", kInf);
  d.columns = {"p", "err", "label"};
  d.rows.push_back({1LL, 0.5, std::string("a,b")});
  d.rows.push_back({2LL, kInf, std::string("q\"uote")});

  for (const ReportFormat fmt : {ReportFormat::csv, ReportFormat::json}) {
    const std::string path = fmt == ReportFormat::csv ? "report_rt.csv" : "report_rt.json";
    write_file(d, path, fmt);
    const Document back = read_file(path);
    CHECK(back.kind == d.kind);
    REQUIRE(back.fields.size() == d.fields.size());
    for (size_t i = 0; i < d.fields.size(); ++i) {
      CHECK(back.fields[i].key == d.fields[i].key);
      CHECK(same_value(back.fields[i].value, d.fields[i].value));
    }
    REQUIRE(back.columns == d.columns);
    REQUIRE(back.rows.size() == d.rows.size());
    for (size_t i = 0; i < d.rows.size(); ++i)
      for (size_t j = 0; j < d.rows[i].size(); ++j)
        CHECK(same_value(back.rows[i][j], d.rows[i][j]));
    // Idempotent: render(read(render(x))) == render(x).
    CHECK(render(back, fmt) == render(d, fmt));
    std::remove(path.c_str());
  }
}

TEST_CASE("NaN survives serialization in both formats") {
  Document d;
  d.kind = "zeval";
  d.add("v", std::numeric_limits<double>::quiet_NaN());
  for (const ReportFormat fmt : {ReportFormat::csv, ReportFormat::json}) {
    const std::string path = "report_nan_rt";
    write_file(d, path, fmt);
    const Document back = read_file(path);
    const FieldValue* v = back.find("v");
    REQUIRE(v != nullptr);
    REQUIRE(std::holds_alternative<double>(*v));
    CHECK(std::isnan(std::get<double>(*v)));
    std::remove(path.c_str());
  }
}

TEST_CASE("merge_reports adds counts, extends the window, and rebuilds ratios") {
  const Document a = n0_half(1000.0, 40.0, 30, 28, 2, 260.0, 0.154);
  const Document b = n0_half(1040.0, 40.0, 31, 30, 1, 260.0, 0.153);
  const Document m = merge_reports(a, b);
  CHECK(m.kind == "n0");
  const auto dbl = [&](const char* k) { return std::get<double>(*m.find(k)); };
  const auto ll = [&](const char* k) { return std::get<long long>(*m.find(k)); };
  CHECK(dbl("T") == 1000.0);
  CHECK(dbl("U") == 80.0);
  CHECK(ll("total") == 61);
  CHECK(ll("hits") == 58);
  CHECK(ll("uncertain") == 3);
  CHECK(dbl("fraction") == 58.0 / 61.0);
  const double pred = std::get<double>(*a.find("predicted_main_term")) +
                      std::get<double>(*b.find("predicted_main_term"));
  CHECK(dbl("predicted_main_term") == pred);
  CHECK(dbl("ratio") == 58.0 / pred);
  // Equal per-window tallies still add; unequal window-specific params drop.
  CHECK(dbl("samples") == 520.0);
  CHECK(m.find("scan_step") == nullptr);
  CHECK(std::get<std::string>(*m.find("anchor")) == "(1/2pi) U ln T");
  CHECK(std::get<std::string>(*m.find("engine")) == "zetagram 0.1.0");
  // Symmetric in its arguments.
  CHECK(to_csv(merge_reports(b, a)) == to_csv(m));
}

TEST_CASE("merge_reports joins override annotations") {
  Document a = n0_half(1000.0, 40.0, 30, 28, 2, 260.0, 0.154);
  Document b = n0_half(1040.0, 40.0, 31, 30, 1, 260.0, 0.153);
  for (Field& f : a.fields)
    if (f.key == "overrides") f.value = std::string("U_override=40");
  for (Field& f : b.fields)
    if (f.key == "overrides") f.value = std::string("U_override=41");
  const Document m = merge_reports(a, b);
  CHECK(std::get<std::string>(*m.find("overrides")) == "U_override=40;U_override=41");
}

TEST_CASE("merge_reports rejects incompatible documents") {
  const Document a = n0_half(1000.0, 40.0, 30, 28, 2, 260.0, 0.154);
  // Kind mismatch.
  Document other = n0_half(1040.0, 40.0, 31, 30, 1, 260.0, 0.153);
  other.kind = "census-theorem1";
  CHECK_THROWS_AS(merge_reports(a, other), validation_error);
  // Good-segment sweeps never compose.
  Document g1 = n0_half(1000.0, 40.0, 30, 28, 2, 260.0, 0.154);
  Document g2 = n0_half(1040.0, 40.0, 31, 30, 1, 260.0, 0.153);
  g1.kind = g2.kind = "good-segments-g1";
  CHECK_THROWS_AS(merge_reports(g1, g2), validation_error);
  // Non-additive kinds are rejected even when shapes match.
  Document z1 = n0_half(1000.0, 40.0, 30, 28, 2, 260.0, 0.154);
  Document z2 = n0_half(1040.0, 40.0, 31, 30, 1, 260.0, 0.153);
  z1.kind = z2.kind = "gram";
  CHECK_THROWS_AS(merge_reports(z1, z2), validation_error);
  // Row tables are not mergeable.
  Document rows_a = n0_half(1000.0, 40.0, 30, 28, 2, 260.0, 0.154);
  rows_a.columns = {"x"};
  rows_a.rows.push_back({1LL});
  const Document rows_b = n0_half(1040.0, 40.0, 31, 30, 1, 260.0, 0.153);
  CHECK_THROWS_AS(merge_reports(rows_a, rows_b), validation_error);
  // Non-adjacent windows.
  const Document far = n0_half(1100.0, 40.0, 31, 30, 1, 260.0, 0.153);
  CHECK_THROWS_AS(merge_reports(a, far), validation_error);
  // Tau mismatch.
  Document shifted = n0_half(1040.0, 40.0, 31, 30, 1, 260.0, 0.153);
  for (Field& f : shifted.fields)
    if (f.key == "tau") f.value = 0.5;
  CHECK_THROWS_AS(merge_reports(a, shifted), validation_error);
}

TEST_CASE("read_file rejects malformed inputs") {
  write_text("report_bad1", "hello world\n");
  CHECK_THROWS_AS(read_file("report_bad1"), validation_error);
  write_text("report_bad2", "   \n  \n");
  CHECK_THROWS_AS(read_file("report_bad2"), validation_error);
  write_text("report_bad3", "kind,\"n0\"\ncolumns,\"a\",\"b\"\nrow,1\n");
  CHECK_THROWS_AS(read_file("report_bad3"), validation_error);
  write_text("report_bad4", "field,\"a\",\"unterminated\nkind,\"n0\"\n");
  CHECK_THROWS_AS(read_file("report_bad4"), validation_error);
  write_text("report_bad5", "{not json");
  CHECK_THROWS_AS(read_file("report_bad5"), validation_error);
  write_text("report_bad6", "{\"fields\": {}}");
  CHECK_THROWS_AS(read_file("report_bad6"), validation_error);
  write_text("report_bad7", "field,\"a\",1\n");  // no kind line
  CHECK_THROWS_AS(read_file("report_bad7"), validation_error);
  CHECK_THROWS_AS(read_file("report_missing_file"), validation_error);
  for (const char* p : {"report_bad1", "report_bad2", "report_bad3", "report_bad4",
                        "report_bad5", "report_bad6", "report_bad7"})
    std::remove(p);
}
