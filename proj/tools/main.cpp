// Command-line front end: one subcommand per census/report object, flat
// key=value config files, CSV/JSON report emission, exit codes 0/2/3.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zetagram/asymptotics.hpp"
#include "zetagram/census.hpp"
#include "zetagram/errors.hpp"
#include "zetagram/gram.hpp"
#include "zetagram/hardy_z.hpp"
#include "zetagram/parallel.hpp"
#include "zetagram/psi.hpp"
#include "zetagram/report.hpp"
#include "zetagram/theta.hpp"

namespace {

using namespace zetagram;

struct Common {
  std::string out;
  std::string format = "csv";
  int workers = default_workers();
  bool paper_mode = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "report file path (stdout when omitted)");
  sub->add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--workers", c.workers, "worker threads")
      ->check(CLI::Range(1, 1024));
  sub->add_flag("--paper-mode", c.paper_mode,
                "enforce admissibility; violations become errors");
}

// Flat key=value configuration files. CLI11 reads config files only through
// the root application, so the root owns --config (subcommand fallthrough
// lets the flag appear after the subcommand name) and this formatter assigns
// section-less keys to the subcommand given on the command line. Explicit
// [section] headers keep their usual meaning, and values from the file fill
// only options that were not set by command-line flags.
class FlatConfig : public CLI::ConfigBase {
 public:
  explicit FlatConfig(const CLI::App* root) : root_(root) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items = CLI::ConfigBase::from_config(input);
    const std::vector<CLI::App*> parsed = root_->get_subcommands();
    if (!parsed.empty()) {
      const std::string& name = parsed.front()->get_name();
      for (CLI::ConfigItem& item : items)
        if (item.parents.empty()) item.parents.push_back(name);
    }
    return items;
  }

 private:
  const CLI::App* root_;
};

ReportFormat parse_format(const std::string& f) {
  return f == "json" ? ReportFormat::json : ReportFormat::csv;
}

// One report file per (command, tau): extra taus get -tau<i> before the
// extension.
std::string tau_path(const std::string& base, size_t idx, size_t ntau) {
  if (ntau <= 1) return base;
  const std::string suffix = "-tau" + std::to_string(idx);
  const size_t dot = base.find_last_of('.');
  const size_t slash = base.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return base + suffix;
  return base.substr(0, dot) + suffix + base.substr(dot);
}

void emit(const Document& doc, const Common& c, const std::string& path) {
  if (path.empty())
    std::fputs(render(doc, parse_format(c.format)).c_str(), stdout);
  else
    write_file(doc, path, parse_format(c.format));
}

double parse_num(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || !end || *end != '\0')
    throw validation_error(std::string("bad number '") + s + "' in " + what);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Window-function specs: lnlnln | const:<c> | powlog:<a>:<c>.
PsiFunction parse_psi_spec(const std::string& spec, PsiRole role) {
  const auto tok = split(spec, ':');
  if (tok[0] == "lnlnln" && tok.size() == 1) return PsiFunction::lnlnln(role);
  if (tok[0] == "const" && tok.size() == 2)
    return PsiFunction::constant(parse_num(tok[1], "psi spec"), role);
  if (tok[0] == "powlog" && tok.size() == 3)
    return PsiFunction::powlog(parse_num(tok[1], "psi spec"),
                               parse_num(tok[2], "psi spec"), role);
  throw validation_error("bad psi spec '" + spec +
                         "' (expected lnlnln | const:c | powlog:a:c)");
}

// psi-bar additionally accepts pow:psi:<e>, the given psi raised to e.
PsiFunction parse_psi_bar_spec(const std::string& spec, const PsiFunction& psi) {
  const auto tok = split(spec, ':');
  if (tok[0] == "pow") {
    if (tok.size() == 3 && tok[1] == "psi")
      return PsiFunction::power_of(psi, parse_num(tok[2], "psi-bar spec"),
                                   PsiRole::psi_bar);
    throw validation_error("bad psi-bar spec '" + spec + "' (expected pow:psi:e)");
  }
  return parse_psi_spec(spec, PsiRole::psi_bar);
}

Document census_doc(const CensusReport& r) {
  Document d;
  d.kind = r.label;
  d.add("engine", std::string(kEngineVersion));
  d.add("T", r.T);
  d.add("U", r.U);
  d.add("tau", r.tau);
  d.add("total", r.total);
  d.add("hits", r.hits);
  d.add("uncertain", r.uncertain);
  d.add("fraction", r.fraction);
  d.add("predicted_main_term", r.predicted_main_term);
  d.add("predicted_alt", r.predicted_alt);
  d.add("ratio", r.ratio);
  d.add("ratio_alt", r.ratio_alt);
  d.add("paper_mode", r.paper_mode);
  d.add("anchor", r.anchor);
  d.add("overrides", r.overrides);
  for (const auto& [key, value] : r.params) d.add(key, value);
  return d;
}

void stamp_plain(Document& d, bool paper_mode, const std::string& anchor) {
  d.add("paper_mode", paper_mode);
  d.add("anchor", anchor);
  d.add("overrides", std::string());
}

void print_error(const char* cls, const std::string& msg) {
  std::string quoted;
  for (const char ch : msg) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  std::fprintf(stderr, "error,\"%s\",\"%s\"\n", cls, quoted.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"translated Gram grids, Hardy Z sampling, and zero censuses"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "",
                 "flat key=value configuration; command-line flags win");
  app.config_formatter(std::make_shared<FlatConfig>(&app));

  // ---- gram -------------------------------------------------------------
  auto* gram = app.add_subcommand("gram", "translated Gram point for one index");
  Common gram_c;
  long long gram_nu = 1;
  std::vector<double> gram_taus{0.0};
  gram->add_option("--nu", gram_nu, "grid index")->required();
  gram->add_option("--tau", gram_taus, "translation(s) in [-pi, pi]");
  add_common(gram, gram_c);
  gram->callback([&] {
    for (size_t i = 0; i < gram_taus.size(); ++i) {
      const GramPoint p = gram_point(gram_nu, gram_taus[i]);
      Document d;
      d.kind = "gram";
      d.add("engine", std::string(kEngineVersion));
      d.add("nu", p.nu);
      d.add("tau", p.tau);
      d.add("t", p.t);
      d.add("residual", p.residual);
      stamp_plain(d, gram_c.paper_mode, "theta1(g) = pi nu / 2 + tau / 2");
      emit(d, gram_c, tau_path(gram_c.out, i, gram_taus.size()));
    }
  });

  // ---- zeval ------------------------------------------------------------
  auto* zeval = app.add_subcommand("zeval", "evaluate Hardy Z at one point");
  Common zeval_c;
  double zeval_t = 0.0;
  std::string zeval_engine = "auto";
  int zeval_digits = 30;
  zeval->add_option("--t", zeval_t, "evaluation height")->required();
  zeval->add_option("--engine", zeval_engine, "rs | em | auto")
      ->check(CLI::IsMember({"rs", "em", "auto"}));
  zeval->add_option("--digits", zeval_digits, "precision for the em engine")
      ->check(CLI::Range(15, 60));
  add_common(zeval, zeval_c);
  zeval->callback([&] {
    Document d;
    d.kind = "zeval";
    d.add("engine", std::string(kEngineVersion));
    d.add("t", zeval_t);
    const bool use_rs =
        zeval_engine == "rs" || (zeval_engine == "auto" && zeval_t >= 200.0);
    if (use_rs) {
      const ZrsValue v = z_rs(zeval_t);
      d.add("value", v.value);
      d.add("err", v.err);
      d.add("engine_used", std::string("rs"));
    } else {
      const double v = z_em(zeval_t, zeval_digits);
      d.add("value", v);
      d.add("err", std::fmax(std::pow(10.0, -zeval_digits),
                             std::fabs(v) * 0x1p-52));
      d.add("engine_used", std::string("em"));
      d.add("digits", static_cast<long long>(zeval_digits));
    }
    stamp_plain(d, zeval_c.paper_mode, "Z(t) = e^{i theta(t)} zeta(1/2 + it)");
    emit(d, zeval_c, zeval_c.out);
  });

  // ---- census-theorem1 ----------------------------------------------------
  auto* th1 = app.add_subcommand(
      "census-theorem1", "odd-order zeros right of each translated Gram point");
  Common th1_c;
  double th1_T = 0.0, th1_uoverride = 0.0, th1_scale = 1.0, th1_step = 0.0;
  std::string th1_psi = "lnlnln", th1_psibar = "pow:psi:0.25";
  std::vector<double> th1_taus{0.0};
  th1->add_option("--T", th1_T, "window anchor")->required();
  th1->add_option("--psi", th1_psi, "psi spec (lnlnln | const:c | powlog:a:c)");
  th1->add_option("--psi-bar", th1_psibar, "psi-bar spec (also pow:psi:e)");
  th1->add_option("--psi-bar-scale", th1_scale, "scale factor applied to psi-bar");
  th1->add_option("--tau", th1_taus, "translation(s) in [-pi, pi]");
  auto* th1_uopt =
      th1->add_option("--U-override", th1_uoverride,
                      "window length override (exploration only)");
  th1->add_option("--scan-step", th1_step, "zero-scan lattice step (0 = omega/4)");
  add_common(th1, th1_c);
  th1->callback([&] {
    const PsiFunction psi = parse_psi_spec(th1_psi, PsiRole::psi);
    const PsiFunction psi_bar =
        parse_psi_bar_spec(th1_psibar, psi).scaled(th1_scale);
    CensusOptions opt;
    opt.workers = th1_c.workers;
    opt.paper_mode = th1_c.paper_mode;
    opt.scan_step = th1_step;
    std::optional<double> uo;
    if (th1_uopt->count() > 0) uo = th1_uoverride;
    for (size_t i = 0; i < th1_taus.size(); ++i) {
      CensusReport r = census_theorem1(th1_T, psi, psi_bar, th1_taus[i], uo, opt);
      if (th1_scale != 1.0) {
        if (!r.overrides.empty()) r.overrides += ";";
        r.overrides += "psi_bar_scale=" + format_double(th1_scale);
      }
      Document d = census_doc(r);
      d.add("psi", psi.describe());
      d.add("psi_bar", psi_bar.describe());
      emit(d, th1_c, tau_path(th1_c.out, i, th1_taus.size()));
    }
  });

  // ---- census-selberg-c ---------------------------------------------------
  auto* sel = app.add_subcommand(
      "census-selberg-c", "short intervals right of a uniform lattice");
  Common sel_c;
  double sel_T = 0.0, sel_eps = 0.1, sel_grid = 0.0, sel_span = 0.0,
         sel_step = 0.0;
  std::string sel_psi = "powlog:0.5:1";
  sel->add_option("--T", sel_T, "window anchor")->required();
  sel->add_option("--epsilon", sel_eps, "span exponent offset, span = T^{1/2+eps}");
  sel->add_option("--psi", sel_psi, "psi spec; interval length is psi(t)/ln t");
  sel->add_option("--grid-step", sel_grid, "uniform lattice step")->required();
  auto* sel_span_opt =
      sel->add_option("--span-override", sel_span, "span override (exploration)");
  sel->add_option("--scan-step", sel_step, "zero-scan lattice step (0 = omega/4)");
  add_common(sel, sel_c);
  sel->callback([&] {
    const PsiFunction psi = parse_psi_spec(sel_psi, PsiRole::psi);
    CensusOptions opt;
    opt.workers = sel_c.workers;
    opt.paper_mode = sel_c.paper_mode;
    opt.scan_step = sel_step;
    std::optional<double> so;
    if (sel_span_opt->count() > 0) so = sel_span;
    const CensusReport r = census_selberg_c(sel_T, sel_eps, psi, sel_grid, so, opt);
    Document d = census_doc(r);
    d.add("psi", psi.describe());
    emit(d, sel_c, sel_c.out);
  });

  // ---- sign-preserving-r --------------------------------------------------
  auto* spr = app.add_subcommand(
      "sign-preserving-r", "grid points whose next M samples keep one sign");
  Common spr_c;
  double spr_T = 0.0, spr_U = 0.0;
  long long spr_M = 0;
  std::vector<double> spr_taus{0.0};
  spr->add_option("--T", spr_T, "window anchor")->required();
  spr->add_option("--U", spr_U, "window length")->required();
  spr->add_option("--M", spr_M, "samples per grid point")->required();
  spr->add_option("--tau", spr_taus, "translation(s) in [-pi, pi]");
  add_common(spr, spr_c);
  spr->callback([&] {
    CensusOptions opt;
    opt.workers = spr_c.workers;
    opt.paper_mode = spr_c.paper_mode;
    for (size_t i = 0; i < spr_taus.size(); ++i) {
      const GridSpec spec =
          GridSpec::make(spr_T, spr_U, spr_M, spr_taus[i], spr_c.paper_mode);
      const CensusReport r = count_sign_preserving_r(spec, opt);
      emit(census_doc(r), spr_c, tau_path(spr_c.out, i, spr_taus.size()));
    }
  });

  // ---- good-segments ------------------------------------------------------
  auto* seg = app.add_subcommand(
      "good-segments", "non-intersecting lattice segments with a certified sign change");
  Common seg_c;
  int seg_def = 1;
  double seg_T = 0.0, seg_U = 0.0, seg_delta = 1.5, seg_eps = 0.1;
  long long seg_h1 = 0;
  bool seg_scan = false;
  std::vector<double> seg_taus{0.0};
  seg->add_option("--definition", seg_def, "1: budget floor(delta ln T); 2: budget H1")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  seg->add_option("--T", seg_T, "window anchor")->required();
  seg->add_option("--U", seg_U, "window length")->required();
  seg->add_option("--delta", seg_delta, "definition-1 budget parameter (> 1)");
  auto* seg_h1_opt = seg->add_option("--H1", seg_h1, "definition-2 budget");
  seg->add_flag("--scan", seg_scan, "definition 2: scan the admissible H1 band");
  seg->add_option("--epsilon", seg_eps, "band parameter for --scan / paper mode");
  seg->add_option("--tau", seg_taus, "translation(s) in [-pi, pi]");
  add_common(seg, seg_c);
  seg->callback([&] {
    CensusOptions opt;
    opt.workers = seg_c.workers;
    opt.paper_mode = seg_c.paper_mode;
    opt.epsilon = seg_eps;
    for (size_t i = 0; i < seg_taus.size(); ++i) {
      const std::string path = tau_path(seg_c.out, i, seg_taus.size());
      if (seg_def == 1) {
        const CensusReport r =
            good_segments_g1(seg_T, seg_U, seg_delta, seg_taus[i], opt);
        emit(census_doc(r), seg_c, path);
      } else if (seg_scan) {
        const G3Scan scan =
            good_segments_g3_scan(seg_T, seg_U, seg_taus[i], seg_eps, opt);
        Document d = census_doc(scan.best);
        d.add("best_h1", scan.best_h1);
        d.columns = {"H1", "hits"};
        for (const auto& [h1, hits] : scan.counts)
          d.rows.push_back({h1, hits});
        emit(d, seg_c, path);
      } else {
        if (seg_h1_opt->count() == 0)
          throw validation_error("good-segments: definition 2 needs --H1 or --scan");
        const CensusReport r =
            good_segments_g3(seg_T, seg_U, seg_h1, seg_taus[i], opt);
        emit(census_doc(r), seg_c, path);
      }
    }
  });

  // ---- n0 -----------------------------------------------------------------
  auto* n0 = app.add_subcommand("n0", "certified zero count of a window");
  Common n0_c;
  double n0_T = 0.0, n0_U = 0.0, n0_step = 0.0;
  n0->add_option("--T", n0_T, "window anchor")->required();
  n0->add_option("--U", n0_U, "window length")->required();
  n0->add_option("--scan-step", n0_step, "scan lattice step (0 = omega/4)");
  add_common(n0, n0_c);
  n0->callback([&] {
    CensusOptions opt;
    opt.workers = n0_c.workers;
    opt.paper_mode = n0_c.paper_mode;
    const CensusReport r = n0_increment(n0_T, n0_U, n0_step, opt);
    emit(census_doc(r), n0_c, n0_c.out);
  });

  // ---- expsums --------------------------------------------------------------
  auto* exps = app.add_subcommand(
      "expsums", "pair exponential sums over the translated grid");
  Common exps_c;
  double exps_T = 0.0, exps_U = 0.0;
  int exps_k = 0, exps_l = 0;
  std::vector<double> exps_taus{0.0};
  exps->add_option("--T", exps_T, "window anchor (<= 1e5)")->required();
  exps->add_option("--U", exps_U, "window length")->required();
  exps->add_option("--k", exps_k, "first sample offset (>= 0)");
  exps->add_option("--l", exps_l, "second sample offset (>= 0)");
  exps->add_option("--tau", exps_taus, "translation(s) in [-pi, pi]");
  add_common(exps, exps_c);
  exps->callback([&] {
    for (size_t i = 0; i < exps_taus.size(); ++i) {
      const double tau = exps_taus[i];
      const double s1 = exp_sum_s1(exps_T, exps_U, tau, exps_k, exps_l);
      const double s2 = exp_sum_s2(exps_T, exps_U, tau, exps_k, exps_l);
      const IndexRange range = index_range(exps_T, exps_U, tau);
      Document d;
      d.kind = "expsums";
      d.add("engine", std::string(kEngineVersion));
      d.add("T", exps_T);
      d.add("U", exps_U);
      d.add("tau", tau);
      d.add("k", static_cast<long long>(exps_k));
      d.add("l", static_cast<long long>(exps_l));
      d.add("s1", s1);
      d.add("s2", s2);
      d.add("count", range.count);
      d.add("nu_first", range.nu_first);
      stamp_plain(d, exps_c.paper_mode,
                  "S1 = O(M T^{5/12} ln^3 T); S2 = O(T^{5/12} ln^2 T)");
      emit(d, exps_c, tau_path(exps_c.out, i, exps_taus.size()));
    }
  });

  // ---- moments ---------------------------------------------------------------
  auto* moments_cmd = app.add_subcommand(
      "moments", "grid moments J, K, N over k = 0..M samples per point");
  Common mom_c;
  double mom_T = 0.0, mom_U = 200.0;
  long long mom_M = 0;
  std::string mom_theta = "both";
  std::vector<double> mom_taus{0.0};
  moments_cmd->add_option("--T", mom_T, "window anchor")->required();
  moments_cmd->add_option("--U", mom_U, "window length");
  moments_cmd->add_option("--M", mom_M, "samples per grid point")->required();
  moments_cmd->add_option("--theta", mom_theta, "theta1 | theta_full | both")
      ->check(CLI::IsMember({"theta1", "theta_full", "both"}));
  moments_cmd->add_option("--tau", mom_taus, "translation(s) in [-pi, pi]");
  add_common(moments_cmd, mom_c);
  moments_cmd->callback([&] {
    CensusOptions opt;
    opt.workers = mom_c.workers;
    opt.paper_mode = mom_c.paper_mode;
    for (size_t i = 0; i < mom_taus.size(); ++i) {
      const GridSpec spec =
          GridSpec::make(mom_T, mom_U, mom_M, mom_taus[i], mom_c.paper_mode);
      std::vector<MomentReport> reports;
      if (mom_theta == "theta1" || mom_theta == "both")
        reports.push_back(moments(spec, ThetaEngine::truncated, opt));
      if (mom_theta == "theta_full" || mom_theta == "both")
        reports.push_back(moments(spec, ThetaEngine::full, opt));
      Document d;
      d.kind = "moments";
      d.add("engine", std::string(kEngineVersion));
      d.add("T", spec.T);
      d.add("U", spec.U);
      d.add("tau", spec.tau);
      d.add("M", spec.M);
      d.add("total", reports.front().total);
      d.add("paper_mode", mom_c.paper_mode);
      d.add("anchor", std::string("J = A M U ln^2 T + o(M U ln^2 T)"));
      d.add("overrides", reports.front().overrides);
      d.columns = {"theta_variant", "j_bar",        "k_bar_re",
                   "k_bar_im",      "n_bar",        "normalized_j",
                   "normalized_n"};
      for (const MomentReport& r : reports)
        d.rows.push_back({r.theta_variant, r.j_bar, r.k_bar_re, r.k_bar_im,
                          r.n_bar, r.normalized_j, r.normalized_n});
      emit(d, mom_c, tau_path(mom_c.out, i, mom_taus.size()));
    }
  });

  // ---- h1-window -------------------------------------------------------------
  auto* h1w = app.add_subcommand("h1-window", "admissible band for the budget H1");
  Common h1w_c;
  double h1w_T = 0.0, h1w_eps = 0.1;
  h1w->add_option("--T", h1w_T, "window anchor")->required();
  h1w->add_option("--epsilon", h1w_eps, "band parameter in (0, 1/10]");
  add_common(h1w, h1w_c);
  h1w->callback([&] {
    const H1Window w = h1_window(h1w_T, h1w_eps);
    Document d;
    d.kind = "h1-window";
    d.add("engine", std::string(kEngineVersion));
    d.add("T", h1w_T);
    d.add("epsilon", w.epsilon);
    d.add("a1", w.a1);
    d.add("a2", w.a2);
    d.add("p0", w.p0);
    d.add("xi", w.xi);
    d.add("h1_lo", w.h1_lo);
    d.add("h1_hi", w.h1_hi);
    d.add("len_lo", w.len_lo);
    d.add("len_hi", w.len_hi);
    d.add("len_window_proper", w.len_window_proper);
    d.add("bracket_lo", w.bracket_lo);
    d.add("bracket_hi", w.bracket_hi);
    stamp_plain(d, h1w_c.paper_mode, "H1 in [a1, a2 sqrt(ln P0)]");
    emit(d, h1w_c, h1w_c.out);
  });

  // ---- report-merge ------------------------------------------------------------
  auto* merge = app.add_subcommand(
      "report-merge", "additive merge of reports over adjacent windows");
  Common merge_c;
  std::vector<std::string> merge_inputs;
  merge->add_option("--inputs", merge_inputs, "two or more report files")
      ->required()
      ->expected(2, 64);
  add_common(merge, merge_c);
  merge->callback([&] {
    Document acc = read_file(merge_inputs[0]);
    for (size_t i = 1; i < merge_inputs.size(); ++i)
      acc = merge_reports(acc, read_file(merge_inputs[i]));
    emit(acc, merge_c, merge_c.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const validation_error& e) {
    print_error("validation", e.what());
    return 2;
  } catch (const numerical_error& e) {
    print_error("numerical", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    print_error("validation", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    print_error("validation", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 3;
  }
  return 0;
}
