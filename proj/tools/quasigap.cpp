// quasigap: point sets, visibility, densities and gap statistics from the command line.
//
// Exit codes: 0 ok, 1 runtime failure, 2 bad configuration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quasigap/density.hpp"
#include "quasigap/gaps.hpp"
#include "quasigap/io.hpp"
#include "quasigap/quasicrystal.hpp"
#include "quasigap/svg.hpp"

#ifndef QUASIGAP_VERSION
#define QUASIGAP_VERSION "dev"
#endif

using namespace quasigap;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  std::string family = "A";
  std::string window;
  std::string gamma;
  std::string visibility = "auto";  // auto | predicate | oracle
  double T = 0;
  std::string t_list;
  int d = 2;
  double bin_width = 0.02;
  double hist_hi = 3.0;
  bool overlay_z2 = false;
  double empirical_T = 0;
  std::string out;
  std::string svg;
  unsigned threads = 0;

  // the hash skips output paths and thread count: neither changes the result
  json canonical() const {
    return {{"command", command}, {"family", family},   {"window", window}, {"gamma", gamma},
            {"visibility", visibility}, {"T", T},      {"t_list", t_list}, {"d", d},
            {"bin_width", bin_width},   {"hist_hi", hist_hi}, {"overlay_z2", overlay_z2}, {"empirical_T", empirical_T}};
  }
  std::string hash() const { return io::hex64(io::fnv1a(canonical().dump())); }
};

void progress(const std::string& msg) { std::cerr << "[quasigap] " << msg << std::endl; }

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int prec = 9) {
  char b[64];
  std::snprintf(b, sizeof b, "%.*f", prec, v);
  return b;
}

std::vector<double> parse_t_list(const std::string& s, double fallback) {
  std::vector<double> out;
  if (s.empty()) {
    if (fallback > 0) out.push_back(fallback);
  } else if (s.find(':') != std::string::npos) {
    // lo:hi:step
    double lo, hi, step;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) || hi < lo)
      throw ConfigError("quasigap: T range must look like lo:hi:step");
    const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
    if (n > 100000) throw ConfigError("quasigap: T range too long");
    for (long k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  } else {
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ConfigError("quasigap: bad T value '" + item + "'");
      }
    }
  }
  for (double t : out)
    if (!(t > 0) || !std::isfinite(t)) throw ConfigError("quasigap: T must be positive");
  if (!std::is_sorted(out.begin(), out.end())) throw ConfigError("quasigap: T list must be increasing");
  if (out.empty()) throw ConfigError("quasigap: no radius given");
  return out;
}

FamilySpec make_spec(const RunConfig& cfg) {
  if (cfg.family == "A" || cfg.family == "T") {
    const std::string wname = cfg.window.empty() ? (cfg.family == "A" ? "octagon_ab" : "decagon_t") : cfg.window;
    Window w = io::load_window(wname);
    try {
      return cfg.family == "A" ? FamilySpec::A(std::move(w)) : FamilySpec::T(std::move(w));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.family == "P") {
    const Gamma g = cfg.gamma.empty() ? gamma_eps0() : io::parse_gamma(cfg.gamma);
    if (!validate_penrose_translate(g)) throw ConfigError("quasigap: gamma must be non-integral with zero sum");
    return FamilySpec::P(g);
  }
  throw ConfigError("quasigap: family must be A, T or P");
}

/// The known occlusion set for a spec outside the plain criteria, if any.
std::optional<OcclusionSet> special_occlusion(const FamilySpec& spec) {
  if (spec.family == Family::A && spec.window && *spec.window == octagon_translate()) return occlusion_octagon_translate();
  return std::nullopt;
}

void fill_visibility(PointSample& s, const RunConfig& cfg) {
  Timer t;
  const auto occ = special_occlusion(s.spec);
  std::string how = cfg.visibility;
  if (how == "auto") {
    how = "oracle";
    if (occ) {
      how = "occlusion";
    } else {
      try {
        check_predicate_hypothesis(s.spec);
        how = "predicate";
      } catch (const PreconditionError&) {
      }
    }
  }
  if (how == "predicate")
    classify_visibility(s, cfg.threads);
  else if (how == "occlusion")
    classify_visibility(s, *occ, cfg.threads);
  else if (how == "oracle")
    s.visible = oracle_visible(s);
  else
    throw ConfigError("quasigap: visibility must be auto, predicate or oracle");
  progress("visibility (" + how + "): " + std::to_string(s.visible_count()) + " of " + std::to_string(s.size()) + " in " +
           fmt(t.seconds(), 2) + " s");
}

PointSample sample_with_visibility(const RunConfig& cfg, const FamilySpec& spec, double T) {
  Timer t;
  PointSample s = generate(spec, T, {cfg.threads});
  progress("generated " + std::to_string(s.size()) + " points, T=" + fmt(T, 3) + ", boundary hits " + std::to_string(s.boundary_hits) +
           " in " + fmt(t.seconds(), 2) + " s");
  fill_visibility(s, cfg);
  return s;
}

json meta(const RunConfig& cfg) { return {{"version", QUASIGAP_VERSION}, {"config_hash", cfg.hash()}}; }

std::string csv_header(const RunConfig& cfg) { return std::string("# quasigap ") + QUASIGAP_VERSION + " config=" + cfg.hash() + "\n"; }

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ConfigError("quasigap: cannot write " + cfg.out);
  f << text;
}

void emit_svg(const RunConfig& cfg, const std::string& text) {
  if (cfg.svg.empty()) return;
  std::ofstream f(cfg.svg);
  if (!f) throw ConfigError("quasigap: cannot write " + cfg.svg);
  f << "<!-- quasigap " << QUASIGAP_VERSION << " config=" << cfg.hash() << " -->\n" << text;
}

std::string spec_name(const FamilySpec& s) { return s.family == Family::P ? std::string("penrose") : s.label; }

json report_json(const DensityReport& r) {
  json j = {{"method", to_string(r.method)}, {"theta_total", r.theta_total}, {"theta_visible", r.theta_visible}, {"fraction", r.fraction}};
  if (r.method == DensityMethod::ExtendedSum) {
    j["subset_sum"] = r.sum;
    json terms = json::array();
    for (const auto& t : r.terms)
      terms.push_back({{"mask", t.mask}, {"sign", t.sign}, {"volume", t.volume}, {"pi_norm", t.pi_norm}, {"contribution", t.contribution}});
    j["terms"] = terms;
  } else {
    j["terms"] = json::array();
  }
  return j;
}

// ---- commands

int cmd_generate(const RunConfig& cfg) {
  const FamilySpec spec = make_spec(cfg);
  const PointSample s = sample_with_visibility(cfg, spec, cfg.T);
  std::ostringstream os;
  os << csv_header(cfg);
  io::write_sample_csv(os, s);
  emit(cfg, os.str());
  return 0;
}

int cmd_density(const RunConfig& cfg) {
  const FamilySpec spec = make_spec(cfg);
  DensityReport rep;
  if (spec.family == Family::P) {
    rep = density_visible_P(*spec.eps);
  } else if (spec.family == Family::T) {
    rep = density_visible_T(*spec.window);
  } else if (special_occlusion(spec)) {
    rep = density_visible_octagon_translate(cfg.threads);
  } else {
    rep = density_visible_A(*spec.window);
  }
  json j = {{"meta", meta(cfg)}, {"family", cfg.family}, {"window", spec_name(spec)}};
  j.update(report_json(rep));
  if (rep.method == DensityMethod::ExtendedSum) j["c"] = rep.sum;
  if (cfg.empirical_T > 0) {
    const PointSample s = sample_with_visibility(cfg, spec, cfg.empirical_T);
    j["empirical"] = report_json(empirical_density(s));
    j["empirical"]["T"] = cfg.empirical_T;
    j["empirical"]["visible_count"] = s.visible_count();
  }
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_mingap(const RunConfig& cfg) {
  const FamilySpec spec = make_spec(cfg);
  MinGapResult m;
  if (spec.family == Family::P) {
    m = min_gap_P(*spec.eps);
  } else if (spec.family == Family::A) {
    std::optional<double> th;
    if (special_occlusion(spec)) th = density_visible_octagon_translate(cfg.threads).theta_visible;
    m = min_gap_A(*spec.window, th);
  } else {
    throw ConfigError("quasigap: no minimal gap formula for T-sets");
  }
  json j = {{"meta", meta(cfg)},
            {"family", cfg.family},
            {"window", spec_name(spec)},
            {"m_hat", m.m_hat},
            {"exponent", m.exponent},
            {"T_functional", m.T_functional},
            {"bound", m.bound},
            {"theta_visible_used", m.theta_visible_used}};
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_gaps(const RunConfig& cfg) {
  const FamilySpec spec = make_spec(cfg);
  const PointSample s = sample_with_visibility(cfg, spec, cfg.T);
  const GapSeries g = gap_series(s);
  std::ostringstream os;
  os << csv_header(cfg) << "# N_hat=" << g.N_hat << " delta_T=" << fmt(g.delta_T, 12) << "\n";
  os << "i,xi,d\n";
  for (std::size_t i = 0; i < g.N_hat; ++i) os << i + 1 << ',' << fmt(g.xi[i], 15) << ',' << fmt(g.d[i], 12) << '\n';
  emit(cfg, os.str());
  return 0;
}

int cmd_series(const RunConfig& cfg) {
  const FamilySpec spec = make_spec(cfg);
  const std::vector<double> Ts = parse_t_list(cfg.t_list, cfg.T);
  const PointSample s = sample_with_visibility(cfg, spec, Ts.back());
  const auto series = delta_series(s, Ts);
  std::ostringstream os;
  os << csv_header(cfg) << "T,delta_T\n";
  for (const auto& [T, d] : series) os << fmt(T, 6) << ',' << fmt(d, 12) << '\n';
  emit(cfg, os.str());
  if (!cfg.svg.empty()) {
    std::vector<double> refs;
    try {
      if (spec.family == Family::A) {
        std::optional<double> th;
        if (special_occlusion(spec)) th = density_visible_octagon_translate(cfg.threads).theta_visible;
        const double m = min_gap_A(*spec.window, th).m_hat;
        refs = {m, m * QuadInt::fundamental_unit(RingId::Zsqrt2).to_double()};
      } else if (spec.family == Family::P) {
        const double m = min_gap_P(*spec.eps).m_hat;
        refs = {m, m * ring_traits(RingId::Ztau).omega};
      }
    } catch (const PreconditionError&) {
    }
    emit_svg(cfg, svg::scatter_svg(series, refs, "delta_T for " + spec_name(spec)));
  }
  return 0;
}

int cmd_hist(const RunConfig& cfg) {
  const FamilySpec spec = make_spec(cfg);
  const PointSample s = sample_with_visibility(cfg, spec, cfg.T);
  const Histogram h = histogram(gap_series(s), cfg.bin_width, 0.0, cfg.hist_hi);
  std::ostringstream os;
  os << csv_header(cfg) << "# overflow=" << fmt(h.overflow, 12) << "\n" << "bin_left,mass\n";
  for (std::size_t i = 0; i < h.mass.size(); ++i) os << fmt(h.bin_left(i), 6) << ',' << fmt(h.mass[i], 12) << '\n';
  emit(cfg, os.str());
  if (!cfg.svg.empty())
    emit_svg(cfg, svg::histogram_svg(h, "normalized gaps, " + spec_name(spec),
                                     cfg.overlay_z2 ? std::function<double(double)>(z2_limit_density) : std::function<double(double)>()));
  return 0;
}

int cmd_table1(const RunConfig& cfg) {
  const std::vector<double> Ts = parse_t_list(cfg.t_list, cfg.T > 0 ? cfg.T : 1000);
  std::ostringstream os;
  os << csv_header(cfg) << "T,N_hat,N_hat_prime,density,density_prime\n";
  const FamilySpec a = FamilySpec::A(make_octagon_AB()), ap = FamilySpec::A(octagon_translate());
  for (double T : Ts) {
    const PointSample s = sample_with_visibility(cfg, a, T);
    const PointSample sp = sample_with_visibility(cfg, ap, T);
    const double vol = M_PI * T * T;
    os << fmt(T, 3) << ',' << s.visible_count() << ',' << sp.visible_count() << ',' << fmt(s.visible_count() / vol) << ','
       << fmt(sp.visible_count() / vol) << '\n';
  }
  emit(cfg, os.str());
  return 0;
}

int cmd_table2(const RunConfig& cfg) {
  const std::vector<double> Ts = parse_t_list(cfg.t_list, cfg.T > 0 ? cfg.T : 0);
  std::ostringstream os;
  os << csv_header(cfg) << "T,N_hat,density\n";
  const FamilySpec p = FamilySpec::P(cfg.gamma.empty() ? gamma_eps0() : io::parse_gamma(cfg.gamma));
  for (double T : Ts) {
    const PointSample s = sample_with_visibility(cfg, p, T);
    os << fmt(T, 3) << ',' << s.visible_count() << ',' << fmt(s.visible_count() / (M_PI * T * T)) << '\n';
  }
  emit(cfg, os.str());
  return 0;
}

int cmd_zd(const RunConfig& cfg) {
  if (cfg.d < 2 || cfg.d > 6) throw ConfigError("quasigap: d must lie in 2..6");
  if (!(cfg.T > 0)) throw ConfigError("quasigap: T must be positive");
  const ZdResult z = zd_visible(cfg.d, cfg.T, cfg.threads);
  json j = {{"meta", meta(cfg)}, {"d", z.d},          {"T", z.T},        {"total", z.total},
            {"visible", z.visible}, {"empirical", z.empirical}, {"limit", z.limit}};
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_validate_gamma(const RunConfig& cfg) {
  const Gamma g = cfg.gamma.empty() ? gamma_eps0() : io::parse_gamma(cfg.gamma);
  const bool ok = validate_penrose_translate(g);
  const Vec2 e = penrose_eps(g);
  json gs = json::array();
  for (const auto& q : g) gs.push_back(q.get_str());
  json j = {{"meta", meta(cfg)},
            {"gamma", gs},
            {"valid", ok},
            {"eps", {e.x.to_double(), e.y.to_double()}},
            {"eps_exact", {io::coord_json(e.x), io::coord_json(e.y)}},
            {"abs_eps", modulus_double(e)},
            {"admissible", eps_admissible(e)}};
  emit(cfg, j.dump(2) + "\n");
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasigap: visible points and angular gaps in planar quasicrystals"};
  app.set_version_flag("--version", std::string(QUASIGAP_VERSION));
  app.require_subcommand(1);
  RunConfig cfg;

  auto family_opts = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "A, T or P")->check(CLI::IsMember({"A", "T", "P"}));
    sub->add_option("--window", cfg.window, "built-in window name or JSON path");
    sub->add_option("--gamma", cfg.gamma, "five rationals, comma separated (P)");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output path (stdout if absent)");
    sub->add_option("--threads", cfg.threads, "worker threads (0: QUASIGAP_THREADS or all cores)");
  };
  auto vis_opt = [&](CLI::App* sub) {
    sub->add_option("--visibility", cfg.visibility, "auto, predicate or oracle")->check(CLI::IsMember({"auto", "predicate", "oracle"}));
  };

  std::map<std::string, std::function<int(const RunConfig&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<int(const RunConfig&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    handlers[name] = std::move(fn);
    common(sub);
    return sub;
  };

  auto* gen = add("generate", "point sample CSV", cmd_generate);
  family_opts(gen);
  vis_opt(gen);
  gen->add_option("--T", cfg.T, "radius")->required();

  auto* den = add("density", "closed-form densities (JSON)", cmd_density);
  family_opts(den);
  vis_opt(den);
  den->add_option("--empirical-T", cfg.empirical_T, "also count points in B_T");

  auto* mg = add("mingap", "limiting minimal gap (JSON)", cmd_mingap);
  family_opts(mg);

  auto* gp = add("gaps", "normalized gaps CSV", cmd_gaps);
  family_opts(gp);
  vis_opt(gp);
  gp->add_option("--T", cfg.T, "radius")->required();

  auto* se = add("series", "delta_T series CSV", cmd_series);
  family_opts(se);
  vis_opt(se);
  se->add_option("--T", cfg.T, "single radius");
  se->add_option("--T-list", cfg.t_list, "lo:hi:step or comma list");
  se->add_option("--svg", cfg.svg, "scatter plot path");

  auto* hi = add("hist", "gap histogram CSV", cmd_hist);
  family_opts(hi);
  vis_opt(hi);
  hi->add_option("--T", cfg.T, "radius")->required();
  hi->add_option("--bin-width", cfg.bin_width, "bin width");
  hi->add_option("--max", cfg.hist_hi, "upper end of the binned range");
  hi->add_option("--svg", cfg.svg, "histogram plot path");
  hi->add_flag("--overlay-z2", cfg.overlay_z2, "draw the Z^2 limiting density");

  auto* t1 = add("table1", "A-set visible counts, octagon and translate", cmd_table1);
  vis_opt(t1);
  t1->add_option("--T", cfg.T, "single radius (default 1000)");
  t1->add_option("--T-list", cfg.t_list, "lo:hi:step or comma list");

  auto* t2 = add("table2", "P-set visible counts", cmd_table2);
  vis_opt(t2);
  t2->add_option("--gamma", cfg.gamma, "five rationals (default eps0)");
  t2->add_option("--T", cfg.T, "single radius");
  t2->add_option("--T-list", cfg.t_list, "lo:hi:step or comma list (default 1500,2000)");

  auto* zd = add("zd", "visible fraction of Z^d (JSON)", cmd_zd);
  zd->add_option("--d", cfg.d, "dimension");
  zd->add_option("--T", cfg.T, "radius")->required();

  auto* vg = add("validate-gamma", "check a Penrose translate", cmd_validate_gamma);
  vg->add_option("--gamma", cfg.gamma, "five rationals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "table2" && cfg.t_list.empty() && cfg.T <= 0) cfg.t_list = "1500,2000";
  if ((cfg.command == "generate" || cfg.command == "gaps" || cfg.command == "hist") && !(cfg.T > 0 && std::isfinite(cfg.T))) {
    std::cerr << "quasigap: T must be positive\n";
    return 2;
  }
  if (cfg.command == "hist" && !(cfg.bin_width > 0 && cfg.hist_hi > 0)) {
    std::cerr << "quasigap: bin width and range must be positive\n";
    return 2;
  }
  try {
    return handlers.at(cfg.command)(cfg);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "quasigap: " << e.what() << "\n";
    return 1;
  }
}
