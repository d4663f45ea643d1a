#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specdim/covering.hpp"
#include "specdim/dimension.hpp"
#include "specdim/io.hpp"
#include "specdim/singular.hpp"
#include "specdim/spaces.hpp"
#include "specdim/spectral.hpp"

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDiagnostic = 2;

struct CommonOpts {
  std::string space;
  std::string out;
  std::string cache;
  std::uint64_t seed = 1;
  std::string format = "json";
};

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

specdim::SpaceSpec load_spec(const std::string& arg) {
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json")
    return specdim::parse_space_json(specdim::io::read_text(arg));
  return specdim::parse_space_tag(arg);
}

std::string cache_dir(const CommonOpts& o) {
  if (!o.cache.empty()) return o.cache;
  if (const char* env = std::getenv("SPECDIM_CACHE_DIR")) return env;
  return "specdim-cache";
}

ordered_json report_header(const CommonOpts& o, const specdim::SpaceSpec* spec,
                           ordered_json config) {
  ordered_json j;
  j["tool_version"] = specdim::io::version();
  if (spec) {
    j["space"] = spec->canonical();
    j["spec_hash"] = hash_hex(specdim::spec_hash(*spec));
  }
  j["seed"] = o.seed;
  j["config"] = std::move(config);
  return j;
}

void emit(const CommonOpts& o, const std::string& name, const ordered_json& j,
          const std::string& csv = "") {
  std::string body = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << body;
    if (!csv.empty() && o.format == "csv") std::cout << csv;
  } else {
    specdim::io::write_text_atomic((fs::path(o.out) / (name + ".json")).string(),
                                   body);
    if (!csv.empty())
      specdim::io::write_text_atomic((fs::path(o.out) / (name + ".csv")).string(),
                                     csv);
  }
}

ordered_json estimate_json(const specdim::DimensionEstimate& est) {
  ordered_json j;
  j["limsup_slope"] = est.limsup_slope;
  j["liminf_slope"] = est.liminf_slope;
  j["window"] = est.window;
  j["regime"] = {est.regime.first, est.regime.second};
  j["per_window_slopes"] = ordered_json::array();
  for (auto& [anchor, slope] : est.per_window_slopes)
    j["per_window_slopes"].push_back({anchor, slope});
  if (!est.r_grid.empty()) {
    j["r_grid"] = est.r_grid;
    j["per_r_estimates"] = est.per_r_estimates;
    j["converged"] = est.converged;
  }
  return j;
}

std::string series_csv(const specdim::DimensionEstimate& est,
                       const ordered_json& header) {
  std::vector<std::vector<double>> rows;
  for (auto& [scale, value] : est.series)
    rows.push_back({scale, value, std::log(scale), std::log(value)});
  return specdim::io::csv_table({header.dump()},
                                {"scale", "value", "log_scale", "log_value"},
                                rows);
}

specdim::WeightedSpectrum obtain_spectrum(const specdim::SpaceSpec& spec,
                                          const CommonOpts& o, bool lanczos) {
  std::string id = hash_hex(specdim::spec_hash(spec));
  fs::path path = fs::path(cache_dir(o)) / (id + ".spectrum");
  if (auto cached = specdim::io::read_spectrum_cache(path.string(), id))
    return *cached;
  specdim::WeightedSpectrum s;
  if (spec.kind == "torus" || spec.kind == "cycle_torus") {
    auto it = spec.params.find("d");
    auto is = spec.params.find("side");
    if (it == spec.params.end() || is == spec.params.end())
      throw std::invalid_argument("torus: missing parameter 'd' or 'side'");
    s = specdim::spectrum_torus(int(it->second), int(is->second));
  } else if (spec.kind == "torus_graph") {
    auto it = spec.params.find("d");
    auto is = spec.params.end() == spec.params.find("side")
                  ? spec.params.end()
                  : spec.params.find("side");
    if (it == spec.params.end() || is == spec.params.end())
      throw std::invalid_argument("torus_graph: missing parameter 'd' or 'side'");
    std::uint64_t pseed = 0;
    if (auto ip = spec.params.find("seed"); ip != spec.params.end())
      pseed = std::uint64_t(ip->second);
    auto g = specdim::torus_graph(int(it->second), int(is->second), pseed);
    if (g.size() > 4096) {
      if (!lanczos)
        throw std::invalid_argument(
            "graph exceeds the dense budget of 4096; pass --lanczos");
      specdim::LanczosConfig lc;
      lc.seed = o.seed;
      s = specdim::spectrum_lanczos(g, lc);
    } else {
      s = specdim::spectrum_dense(g);
    }
  } else {
    auto g = specdim::build_space(spec);
    if (g.size() > 4096) {
      if (!lanczos)
        throw std::invalid_argument(
            "graph exceeds the dense budget of 4096; pass --lanczos");
      specdim::LanczosConfig lc;
      lc.seed = o.seed;
      s = specdim::spectrum_lanczos(g, lc);
    } else {
      s = specdim::spectrum_dense(g);
    }
  }
  specdim::io::write_spectrum_cache(path.string(), s, id);
  return s;
}

specdim::StepFunction parse_step(const std::string& arg) {
  if (arg.rfind("pow:", 0) == 0) {
    std::string rest = arg.substr(4);
    double coeff = 1;
    auto colon = rest.find(':');
    if (colon != std::string::npos) {
      coeff = std::stod(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    return specdim::StepFunction::power(std::stod(rest), coeff);
  }
  throw std::invalid_argument("step function tag must look like pow:<exponent>[:<coeff>]");
}

std::string step_csv(const specdim::StepFunction& f, const ordered_json& header) {
  std::vector<std::vector<double>> rows;
  if (f.analytic) {
    rows.push_back({0.0, f.coeff});
  } else {
    rows.push_back({0.0, f.values[0]});
    for (std::size_t i = 0; i < f.breakpoints.size(); ++i)
      rows.push_back({f.breakpoints[i], f.values[i + 1]});
  }
  std::string tail = f.analytic
                         ? "analytic exponent=" + specdim::io::format_double(f.exponent) +
                               " coeff=" + specdim::io::format_double(f.coeff)
                         : std::string("step");
  return specdim::io::csv_table({header.dump(), "tail: " + tail},
                                {"breakpoint", "value"}, rows);
}

std::vector<double> parse_r_grid(const std::string& arg) {
  std::vector<double> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"metric dimension and spectral invariant estimators"};
  app.require_subcommand(1);
  CommonOpts o;

  // dim ------------------------------------------------------------------
  auto* dim = app.add_subcommand("dim", "dimension estimators");
  dim->require_subcommand(1);
  struct {
    double rmin = 0, rmax = 0, R = 0, Rmin = 0, Rmax = 0, ratio = 2;
    std::size_t window = 0;
    std::string rgrid, Rseq;
  } d;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--space", o.space, "space tag or JSON file")->required();
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--cache", o.cache, "spectrum cache directory");
    cmd->add_option("--seed", o.seed, "rng seed recorded in reports");
    cmd->add_option("--format", o.format, "csv | json");
  };
  auto* dim_box = dim->add_subcommand("box", "box dimension d0");
  add_common(dim_box);
  dim_box->add_option("--rmin", d.rmin);
  dim_box->add_option("--rmax", d.rmax);
  dim_box->add_option("--R", d.R);
  dim_box->add_option("--ratio", d.ratio);
  dim_box->add_option("--window", d.window);
  auto* dim_asym = dim->add_subcommand("asym", "asymptotic dimension d_inf");
  add_common(dim_asym);
  dim_asym->add_option("--Rmin", d.Rmin);
  dim_asym->add_option("--Rmax", d.Rmax);
  dim_asym->add_option("--rgrid", d.rgrid, "comma-separated inner radii");
  dim_asym->add_option("--window", d.window);
  auto* dim_vol = dim->add_subcommand("volume", "volume-growth d_inf");
  add_common(dim_vol);
  dim_vol->add_option("--Rmin", d.Rmin);
  dim_vol->add_option("--Rmax", d.Rmax);
  dim_vol->add_option("--R", d.Rseq, "aM..aN samples at oscillating breakpoints");
  dim_vol->add_option("--window", d.window);

  // spectral ---------------------------------------------------------------
  auto* sp = app.add_subcommand("spectral", "spectral invariants");
  sp->require_subcommand(1);
  struct {
    double tmin = 0, tmax = 0, b0 = 0;
    std::size_t window = 0;
    bool lanczos = false;
  } s;
  auto add_spectral = [&](CLI::App* cmd) {
    add_common(cmd);
    cmd->add_option("--tmin", s.tmin);
    cmd->add_option("--tmax", s.tmax);
    cmd->add_option("--window", s.window);
    cmd->add_flag("--lanczos", s.lanczos, "allow stochastic trace quadrature");
  };
  auto* sp_theta = sp->add_subcommand("theta", "heat trace table");
  add_spectral(sp_theta);
  sp_theta->add_option("--b0", s.b0);
  auto* sp_count = sp->add_subcommand("counting", "counting function table");
  add_spectral(sp_count);
  auto* sp_ns = sp->add_subcommand("ns", "Novikov-Shubin estimates");
  add_spectral(sp_ns);
  auto* sp_a0 = sp->add_subcommand("verify-a0", "d_inf vs alpha0 comparison");
  add_spectral(sp_a0);
  auto* sp_hv = sp->add_subcommand("heatvol", "heat kernel / volume band");
  add_spectral(sp_hv);

  // trace --------------------------------------------------------------
  auto* tr = app.add_subcommand("trace", "singular trace functionals");
  tr->require_subcommand(1);
  struct {
    std::string muA, muT, mu, lambda;
  } t;
  auto* tr_mu = tr->add_subcommand("mu", "rearrangement of Delta^{-1/2}");
  add_common(tr_mu);
  auto* tr_ecc = tr->add_subcommand("ecc", "0-eccentricity report");
  tr_ecc->add_option("--mu", t.mu, "step function tag")->required();
  tr_ecc->add_option("--out", o.out);
  tr_ecc->add_option("--seed", o.seed);
  tr_ecc->add_option("--format", o.format);
  auto* tr_dix = tr->add_subcommand("dixmier", "Dixmier trace");
  tr_dix->add_option("--muA", t.muA)->required();
  tr_dix->add_option("--muT", t.muT)->required();
  tr_dix->add_option("--out", o.out);
  tr_dix->add_option("--seed", o.seed);
  tr_dix->add_option("--format", o.format);
  auto* tr_dual = tr->add_subcommand("duality", "mu/lambda duality check");
  tr_dual->add_option("--lambda", t.lambda)->required();
  tr_dual->add_option("--out", o.out);
  tr_dual->add_option("--seed", o.seed);
  tr_dual->add_option("--format", o.format);

  CLI11_PARSE(app, argc, argv);

  if (dim_box->parsed()) {
    auto spec = load_spec(o.space);
    auto space = specdim::build_space(spec);
    specdim::BoxConfig cfg;
    cfg.r_min = d.rmin; cfg.r_max = d.rmax; cfg.R = d.R;
    cfg.grid_ratio = d.ratio;
    if (d.window) cfg.window = d.window;
    auto est = specdim::box_dimension(space, cfg);
    ordered_json cj{{"rmin", d.rmin}, {"rmax", d.rmax}, {"R", d.R},
                    {"ratio", d.ratio}, {"window", cfg.window}};
    auto j = report_header(o, &spec, cj);
    j["result"] = estimate_json(est);
    emit(o, "dim-box", j, series_csv(est, j["config"]));
    return kExitOk;
  }
  if (dim_asym->parsed()) {
    auto spec = load_spec(o.space);
    auto space = specdim::build_space(spec);
    specdim::AsymptoticConfig cfg;
    cfg.R_min = d.Rmin; cfg.R_max = d.Rmax;
    if (!d.rgrid.empty()) cfg.r_grid = parse_r_grid(d.rgrid);
    if (d.window) cfg.window = d.window;
    auto est = specdim::asymptotic_dimension(space, cfg);
    ordered_json cj{{"Rmin", d.Rmin}, {"Rmax", d.Rmax},
                    {"rgrid", cfg.r_grid}, {"window", cfg.window}};
    auto j = report_header(o, &spec, cj);
    j["result"] = estimate_json(est);
    emit(o, "dim-asym", j, series_csv(est, j["config"]));
    return est.converged ? kExitOk : kExitDiagnostic;
  }
  if (dim_vol->parsed()) {
    auto spec = load_spec(o.space);
    auto space = specdim::build_space(spec);
    specdim::DimensionEstimate est;
    ordered_json cj;
    if (!d.Rseq.empty()) {
      auto dots = d.Rseq.find("..");
      if (dots == std::string::npos || d.Rseq[0] != 'a')
        throw std::invalid_argument("--R expects the form aM..aN");
      int lo = std::stoi(d.Rseq.substr(1, dots - 1));
      int hi = std::stoi(d.Rseq.substr(dots + 3));
      const auto& a = specdim::oscillating_breakpoints();
      if (lo < 1 || hi <= lo || hi >= int(a.size()))
        throw std::invalid_argument("--R breakpoint range out of bounds");
      specdim::ScaleSeries series;
      for (int k = lo; k <= hi; ++k)
        series.samples.emplace_back(a[std::size_t(k)],
                                    ball_volume(space, a[std::size_t(k)]));
      specdim::SlopeConfig sc;
      sc.window = d.window ? d.window : 2;
      sc.regime = {0, series.samples.size() - 1};
      est = specdim::slope_limsup(series, sc);
      est.series = series.samples;
      cj = ordered_json{{"R", d.Rseq}, {"window", sc.window}};
    } else {
      specdim::AsymptoticConfig cfg;
      cfg.R_min = d.Rmin; cfg.R_max = d.Rmax;
      if (d.window) cfg.window = d.window;
      est = specdim::asymptotic_dimension_volume(space, cfg);
      cj = ordered_json{{"Rmin", d.Rmin}, {"Rmax", d.Rmax},
                        {"window", cfg.window}};
    }
    auto j = report_header(o, &spec, cj);
    j["result"] = estimate_json(est);
    emit(o, "dim-volume", j, series_csv(est, j["config"]));
    return kExitOk;
  }

  if (sp_theta->parsed() || sp_count->parsed()) {
    auto spec = load_spec(o.space);
    auto spectrum = obtain_spectrum(spec, o, s.lanczos);
    double tmin = s.tmin > 0 ? s.tmin : 0.25;
    double tmax = s.tmax > 0 ? s.tmax : 1024;
    ordered_json cj{{"tmin", tmin}, {"tmax", tmax}, {"b0", s.b0}};
    auto j = report_header(o, &spec, cj);
    std::vector<std::vector<double>> rows;
    bool theta = sp_theta->parsed();
    for (double tt = tmin; tt <= tmax * (1 + 1e-9); tt *= 2) {
      if (theta)
        rows.push_back({tt, specdim::heat_trace(spectrum, tt),
                        specdim::heat_trace0(spectrum, tt, s.b0)});
      else
        rows.push_back({tt, specdim::counting(spectrum, tt),
                        specdim::counting0(spectrum, tt)});
    }
    j["result"]["rows"] = rows.size();
    std::string name = theta ? "spectral-theta" : "spectral-counting";
    emit(o, name, j,
         specdim::io::csv_table(
             {j["config"].dump()},
             theta ? std::vector<std::string>{"t", "theta", "theta0"}
                   : std::vector<std::string>{"t", "N", "N0"},
             rows));
    return kExitOk;
  }
  if (sp_ns->parsed()) {
    auto spec = load_spec(o.space);
    auto spectrum = obtain_spectrum(spec, o, s.lanczos);
    specdim::NSConfig cfg;
    cfg.counting_t_min = s.tmin;
    cfg.counting_t_max = s.tmax;
    if (s.window) cfg.window = s.window;
    auto est = specdim::ns_numbers({spectrum}, cfg);
    ordered_json cj{{"tmin", s.tmin}, {"tmax", s.tmax}, {"window", cfg.window}};
    auto j = report_header(o, &spec, cj);
    j["result"] = {{"alpha0", est.alpha0},
                   {"alpha0_prime", est.alpha0_prime},
                   {"alpha0_lower", est.alpha0_lower},
                   {"b0", est.b0}};
    emit(o, "spectral-ns", j);
    return kExitOk;
  }
  if (sp_a0->parsed()) {
    auto spec = load_spec(o.space);
    if (spec.kind != "torus" && spec.kind != "cycle_torus")
      throw std::invalid_argument("verify-a0: needs a torus space");
    int dd = int(spec.params.at("d"));
    int side = int(spec.params.at("side"));
    auto rep = specdim::verify_a0_eq_dinf(dd, side);
    auto j = report_header(o, &spec, ordered_json::object());
    j["result"] = {{"dinf", rep.dinf},
                   {"alpha0", rep.alpha0},
                   {"difference", rep.difference}};
    emit(o, "spectral-verify-a0", j);
    return kExitOk;
  }
  if (sp_hv->parsed()) {
    auto spec = load_spec(o.space);
    if (spec.kind != "torus" && spec.kind != "cycle_torus")
      throw std::invalid_argument("heatvol: needs a torus space");
    auto spectrum = obtain_spectrum(spec, o, s.lanczos);
    auto space = specdim::build_space(spec);
    int side = int(spec.params.at("side"));
    double tmin = s.tmin > 0 ? s.tmin : 4;
    double tmax = s.tmax > 0 ? s.tmax : double(side) * side / 40;
    std::vector<double> grid;
    for (double tt = tmin; tt <= tmax * (1 + 1e-9); tt *= 2) grid.push_back(tt);
    auto rep = specdim::heat_volume_bound_check(space, spectrum, grid,
                                                space.base_point());
    ordered_json cj{{"tmin", tmin}, {"tmax", tmax}};
    auto j = report_header(o, &spec, cj);
    j["result"] = {{"max_ratio", rep.max_ratio},
                   {"min_ratio", rep.min_ratio},
                   {"band", rep.max_ratio / rep.min_ratio},
                   {"dinf_slope", rep.dinf_slope}};
    std::vector<std::vector<double>> rows;
    for (auto& r : rep.rows) rows.push_back({r[0], r[1], r[2], r[3]});
    emit(o, "spectral-heatvol", j,
         specdim::io::csv_table({j["config"].dump()}, {"t", "H", "V", "ratio"},
                                rows));
    return kExitOk;
  }

  if (tr_mu->parsed()) {
    auto spec = load_spec(o.space);
    auto spectrum = obtain_spectrum(spec, o, false);
    // values of Delta^{-1/2} on the kernel complement
    specdim::WeightedSpectrum vals;
    double thr = 1e-10 * spectrum.lambda_max();
    for (auto& [l, w] : spectrum.entries)
      if (l > thr) vals.entries.emplace_back(1.0 / std::sqrt(l), w);
    auto lambda = specdim::distribution_from_spectrum(vals);
    auto mu = specdim::rearrangement(lambda);
    auto j = report_header(o, &spec, ordered_json::object());
    j["result"]["pieces"] = mu.values.size();
    emit(o, "trace-mu", j, step_csv(mu, j["config"]));
    return kExitOk;
  }
  if (tr_ecc->parsed()) {
    auto mu = parse_step(t.mu);
    auto rep = specdim::eccentricity(mu);
    ordered_json cj{{"mu", t.mu}};
    auto j = report_header(o, nullptr, cj);
    j["result"] = {{"integrable", rep.integrable},
                   {"limit_estimate", rep.limit_estimate},
                   {"is_eccentric", rep.is_eccentric}};
    emit(o, "trace-ecc", j);
    return kExitOk;
  }
  if (tr_dix->parsed()) {
    auto muA = parse_step(t.muA);
    auto muT = parse_step(t.muT);
    auto ecc = specdim::eccentricity(muT);
    ordered_json cj{{"muA", t.muA}, {"muT", t.muT}};
    auto j = report_header(o, nullptr, cj);
    if (!ecc.is_eccentric) {
      j["error"] = "reference mu is not 0-eccentric";
      j["eccentricity"] = {{"integrable", ecc.integrable},
                           {"limit_estimate", ecc.limit_estimate}};
      emit(o, "trace-dixmier", j);
      return kExitDiagnostic;
    }
    double tau = specdim::dixmier_trace(muA, muT);
    j["result"]["tau"] = tau;
    emit(o, "trace-dixmier", j);
    return kExitOk;
  }
  if (tr_dual->parsed()) {
    auto lambda = parse_step(t.lambda);
    auto rep = specdim::duality_check(lambda);
    ordered_json cj{{"lambda", t.lambda}};
    auto j = report_header(o, nullptr, cj);
    j["result"] = {{"lhs", rep.lhs},
                   {"rhs", rep.rhs},
                   {"agree", rep.agree},
                   {"degenerate", rep.degenerate}};
    emit(o, "trace-duality", j);
    return kExitOk;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::length_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "diagnostic: " << e.what() << "\n";
    return kExitDiagnostic;
  }
}
