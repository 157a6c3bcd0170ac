// Command-line front end: run configuration, experiment orchestration and
// deterministic output trees. Exit codes: 0 success, 2 validation error,
// 3 requested-outcome mismatch, 1 internal error.

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "inls/diagnostics.hpp"
#include "inls/io.hpp"

using namespace inls;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct ExpectMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double r_max;
  int n;
};

GridSpec parse_grid(const std::string& text, GridSpec fallback) {
  if (text.empty()) return fallback;
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--grid expects 'r_max,n', got '" + text + "'");
  GridSpec spec;
  spec.r_max = std::stod(text.substr(0, comma));
  spec.n = std::stoi(text.substr(comma + 1));
  return spec;
}

fs::path output_root() {
  if (const char* env = std::getenv("INLS_OUTPUT_ROOT")) return env;
  return "inls-out";
}

fs::path resolve_out(const std::string& flag, const std::string& subcommand) {
  if (!flag.empty()) return flag;
  return output_root() / subcommand;
}

// Process-wide ground-state cache: threshold values must be self-consistent
// across classify/evolve/sweep calls at one b.
const GroundStateProfile& cached_ground_state(const InlsParams& params, const GridSpec& spec,
                                              double tol) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<GroundStateProfile>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const std::string key =
      to_string(params.b) + "@" + std::to_string(spec.r_max) + "x" + std::to_string(spec.n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto profile = std::make_unique<GroundStateProfile>(
        solve_petviashvili(params, make_grid(spec.r_max, spec.n, params.b), tol));
    it = cache.emplace(key, std::move(profile)).first;
  }
  return *it->second;
}

ComplexRadialField build_init(const std::string& spec, const InlsParams& params,
                              std::shared_ptr<const RadialGrid> grid, const GridSpec& gs_grid) {
  const auto next_field = [&spec](size_t from) {
    const size_t colon = spec.find(':', from);
    return colon == std::string::npos ? spec.substr(from) : spec.substr(from, colon - from);
  };
  if (spec.rfind("gaussian:", 0) == 0) {
    const std::string a_str = next_field(9);
    const double amplitude = std::stod(a_str);
    double width = 1.0;
    const size_t second = 9 + a_str.size();
    if (second < spec.size() && spec[second] == ':') width = std::stod(spec.substr(second + 1));
    return ComplexRadialField::gaussian(std::move(grid), amplitude, width);
  }
  if (spec == "groundstate" || spec.rfind("groundstate:", 0) == 0) {
    double scale = 1.0;
    if (spec.size() > 12) scale = std::stod(spec.substr(12));
    // Solved directly on the target grid so the samples need no interpolation.
    (void)gs_grid;
    const GroundStateProfile profile = solve_petviashvili(params, std::move(grid), 1e-8);
    std::vector<Complex> u(profile.q.size());
    for (size_t j = 0; j < u.size(); ++j) u[j] = Complex(scale * profile.q[j], 0.0);
    return ComplexRadialField::from_u_samples(profile.grid, u);
  }
  if (spec.rfind("file:", 0) == 0) {
    ComplexRadialField loaded = io::read_field_csv(spec.substr(5), params.b);
    return loaded;
  }
  throw std::invalid_argument("unknown init spec '" + spec + "'");
}

void warn_boundary(const EvolutionTrace& trace) {
  for (const MonitorRow& row : trace.monitors) {
    if (row.boundary_frac > 1e-6) {
      std::cerr << "warning: outermost 10% of the grid held " << row.boundary_frac
                << " of the mass at t = " << row.t << "; the far boundary reflects\n";
      return;
    }
  }
}

constexpr GridSpec kDynamicsGrid{64.0, 8191};
constexpr GridSpec kGroundStateGrid{32.0, 4095};

int cmd_admissible(const std::string& b_str, const std::string& theta_str,
                   const std::string& q_str, const std::string& r_str,
                   const std::string& cls_str, bool show_range) {
  const InlsParams params(parse_rational(b_str));
  std::cout << "q,r,class,satisfied\n";
  if (!q_str.empty() || !r_str.empty()) {
    if (q_str.empty() || r_str.empty() || cls_str.empty())
      throw std::invalid_argument("--q, --r and --class go together");
    ExponentPair pair;
    if (q_str == "inf" || q_str == "infinity")
      pair.q = std::nullopt;
    else
      pair.q = parse_rational(q_str);
    pair.r = parse_rational(r_str);
    if (cls_str == "L2")
      pair.cls = PairClass::L2;
    else if (cls_str == "Hs")
      pair.cls = PairClass::HsDot;
    else if (cls_str == "Hs-dual")
      pair.cls = PairClass::HsDotDual;
    else
      throw std::invalid_argument("--class must be L2, Hs or Hs-dual");
    std::cout << (pair.q ? to_string(*pair.q) : "inf") << ',' << to_string(pair.r) << ','
              << pair_class_name(pair.cls) << ',' << (check_admissible(pair, params) ? "1" : "0")
              << '\n';
  }
  if (!theta_str.empty()) {
    const WorkingExponents w = working_exponents(params, parse_rational(theta_str));
    const auto row = [&params](const Rational& q, const Rational& r, PairClass cls) {
      std::cout << to_string(q) << ',' << to_string(r) << ',' << pair_class_name(cls) << ','
                << (check_admissible({q, r, cls}, params) ? "1" : "0") << '\n';
    };
    row(w.q_hat, w.r_hat, PairClass::L2);
    row(w.a_hat, w.r_hat, PairClass::HsDot);
    row(w.a_tilde, w.r_hat, PairClass::HsDotDual);
  }
  if (show_range) {
    const ThetaRange range = theta_range(params);
    std::cerr << "theta in (" << to_string(range.lo) << ", " << to_string(range.hi)
              << "), binding constraint: " << theta_constraint_name(range.binding) << '\n';
  }
  return 0;
}

int cmd_ground_state(const std::string& b_str, const std::string& grid_str, double tol,
                     int max_iter, const std::string& out_flag) {
  const InlsParams params(parse_rational(b_str));
  const GridSpec spec = parse_grid(grid_str, kGroundStateGrid);
  const GroundStateProfile profile =
      solve_petviashvili(params, make_grid(spec.r_max, spec.n, params.b), tol, max_iter);

  json report = io::profile_report_json(profile);
  const GnConstant c = gn_constant(profile);
  report["c_gn_direct"] = c.direct;
  std::cout << report.dump(2) << '\n';

  const fs::path dir = resolve_out(out_flag, "ground-state");
  json config{{"subcommand", "ground-state"}, {"b", b_str},    {"r_max", spec.r_max},
              {"n", spec.n},                  {"tol", tol},    {"max_iter", max_iter}};
  io::RunDirectory run(dir, config);
  io::write_profile_csv(run.file("profile.csv"), profile);
  io::write_json(run.file("report.json"), report);
  return 0;
}

int cmd_classify(const std::string& b_str, const std::string& init, const std::string& grid_str,
                 const std::string& gs_grid_str, const std::string& out_flag) {
  const InlsParams params(parse_rational(b_str));
  const GridSpec spec = parse_grid(grid_str, kDynamicsGrid);
  const GridSpec gs_spec = parse_grid(gs_grid_str, kGroundStateGrid);
  const ComplexRadialField u0 =
      build_init(init, params, make_grid(spec.r_max, spec.n, params.b), gs_spec);
  const GroundStateProfile& profile = cached_ground_state(params, gs_spec, 1e-8);
  const Verdict verdict = classify(u0, profile);

  json out = io::verdict_json(verdict);
  std::cout << out.dump(2) << '\n';
  if (!out_flag.empty() || std::getenv("INLS_OUTPUT_ROOT")) {
    json config{{"subcommand", "classify"}, {"b", b_str}, {"init", init},
                {"r_max", spec.r_max},      {"n", spec.n}};
    io::RunDirectory run(resolve_out(out_flag, "classify"), config);
    io::write_json(run.file("verdict.json"), out);
  }
  return 0;
}

int cmd_evolve(const std::string& b_str, const std::string& init, double T, double dt,
               int snap_stride, double blowup_factor, double boundary_limit, bool linear,
               const std::string& grid_str, const std::string& gs_grid_str,
               const std::string& expect, const std::string& out_flag) {
  const InlsParams params(parse_rational(b_str));
  const GridSpec spec = parse_grid(grid_str, kDynamicsGrid);
  const GridSpec gs_spec = parse_grid(gs_grid_str, kGroundStateGrid);
  const ComplexRadialField u0 =
      build_init(init, params, make_grid(spec.r_max, spec.n, params.b), gs_spec);

  EvolveConfig config;
  config.T = T;
  config.dt = dt;
  config.snapshot_stride = snap_stride;
  config.blowup_factor = blowup_factor;
  config.boundary_limit = boundary_limit;
  config.nonlinear = !linear;
  config.threshold_grad = cached_ground_state(params, gs_spec, 1e-8).threshold_grad;

  const EvolutionTrace trace = evolve(u0, config, params);
  warn_boundary(trace);

  const fs::path dir = resolve_out(out_flag, "evolve");
  json config_json{{"subcommand", "evolve"},
                   {"b", b_str},
                   {"init", init},
                   {"T", T},
                   {"dt", dt},
                   {"snap_stride", snap_stride},
                   {"blowup_factor", blowup_factor},
                   {"boundary_limit", boundary_limit},
                   {"linear", linear},
                   {"r_max", spec.r_max},
                   {"n", spec.n}};
  io::RunDirectory run(dir, config_json);
  io::write_trace(run.file("trace"), trace);
  json summary{{"termination", termination_name(trace.termination)},
               {"t_final", trace.t_final},
               {"steps", trace.monitors.size() - 1}};
  io::write_json(run.file("summary.json"), summary);
  std::cout << summary.dump(2) << '\n';

  if (!expect.empty()) {
    const std::map<std::string, Termination> want{
        {"reach", Termination::ReachedT},
        {"blowup", Termination::BlowupDetected},
        {"boundary", Termination::BoundaryContaminated}};
    const auto it = want.find(expect);
    if (it == want.end())
      throw std::invalid_argument("--expect must be reach, blowup or boundary");
    if (trace.termination != it->second)
      throw ExpectMismatch("expected " + expect + ", run terminated " +
                           termination_name(trace.termination));
  }
  return 0;
}

int cmd_virial(const std::string& trace_dir, double R, const std::string& out_flag) {
  const EvolutionTrace trace = io::read_trace(trace_dir);
  const VirialConsistency vc = virial_consistency(trace, R);

  json report{{"R", R},
              {"max_rel_residual", vc.max_rel_residual},
              {"samples", vc.times.size()}};
  std::cout << report.dump(2) << '\n';

  json config{{"subcommand", "virial"}, {"trace", trace_dir}, {"R", R}};
  io::RunDirectory run(resolve_out(out_flag, "virial"), config);
  io::write_json(run.file("residual.json"), report);
  std::ofstream series(run.file("virial_series.csv"));
  series << "t,z,z_dd_fd,z_dd_formula\n";
  for (size_t i = 0; i < vc.times.size(); ++i)
    series << io::format_double(vc.times[i]) << ',' << io::format_double(vc.z[i + 2]) << ','
           << io::format_double(vc.fd[i]) << ',' << io::format_double(vc.formula[i]) << '\n';
  return 0;
}

int cmd_scatter(const std::string& trace_dir, double tail_tol, bool backward,
                const std::string& out_flag) {
  EvolutionTrace trace = io::read_trace(trace_dir);
  if (backward) {
    for (auto& snap : trace.snapshots) snap = snap.conjugate();
    trace.final_field = trace.final_field.conjugate();
  }
  const ScatteringReport report =
      scattering_state(trace, backward ? Direction::Backward : Direction::Forward, tail_tol);

  json summary{{"duhamel_tail", report.duhamel_tail},
               {"phi_h1", report.phi_h1},
               {"final_h1_distance", report.h1_distance.back()},
               {"max_h1_distance",
                *std::max_element(report.h1_distance.begin(), report.h1_distance.end())}};
  std::cout << summary.dump(2) << '\n';

  json config{{"subcommand", "scatter"},
              {"trace", trace_dir},
              {"tail_tol", tail_tol},
              {"direction", backward ? "backward" : "forward"}};
  io::RunDirectory run(resolve_out(out_flag, "scatter"), config);
  io::write_json(run.file("scattering.json"), summary);
  io::write_field_csv(run.file("phi_plus.csv"), report.phi_plus);
  std::ofstream series(run.file("h1_distance.csv"));
  series << "t,h1_distance";
  for (const auto& s : report.strichartz_partials)
    series << ",strichartz_q" << io::format_double(s.q) << "_r" << io::format_double(s.r);
  series << '\n';
  for (size_t i = 0; i < report.times.size(); ++i) {
    series << io::format_double(report.times[i]) << ',' << io::format_double(report.h1_distance[i]);
    for (const auto& s : report.strichartz_partials)
      series << ',' << io::format_double(s.cumulative[i]);
    series << '\n';
  }
  return 0;
}

int cmd_sweep(const std::string& b_str, const std::string& amplitudes_str, double T, double dt,
              int jobs, const std::string& grid_str, const std::string& gs_grid_str,
              const std::string& out_flag) {
  const InlsParams params(parse_rational(b_str));
  const GridSpec spec = parse_grid(grid_str, kDynamicsGrid);
  const GridSpec gs_spec = parse_grid(gs_grid_str, kGroundStateGrid);

  std::vector<double> amplitudes;
  if (!amplitudes_str.empty()) {
    size_t start = 0;
    while (start <= amplitudes_str.size()) {
      const size_t comma = amplitudes_str.find(',', start);
      const std::string tok = amplitudes_str.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!tok.empty()) amplitudes.push_back(std::stod(tok));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }

  struct Row {
    double amplitude;
    std::string me_ratio = "nan", grad_ratio = "nan";
    std::string verdict = "error", termination = "error", t_final = "nan";
  };
  std::vector<Row> rows(amplitudes.size());

  if (!amplitudes.empty()) {
    // Grid construction and the ground-state solve happen once, up front.
    const GroundStateProfile& profile = cached_ground_state(params, gs_spec, 1e-8);
    auto grid = make_grid(spec.r_max, spec.n, params.b);

    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
      for (size_t i = cursor.fetch_add(1); i < amplitudes.size(); i = cursor.fetch_add(1)) {
        Row& row = rows[i];
        row.amplitude = amplitudes[i];
        try {
          const ComplexRadialField u0 = ComplexRadialField::gaussian(grid, amplitudes[i]);
          const Verdict verdict = classify(u0, profile);
          row.me_ratio = io::format_double(verdict.me_ratio);
          row.grad_ratio = io::format_double(verdict.grad_ratio);
          row.verdict = verdict_name(verdict.tag);
          EvolveConfig config;
          config.T = T;
          config.dt = dt;
          config.threshold_grad = profile.threshold_grad;
          const EvolutionTrace trace = evolve(u0, config, params);
          row.termination = termination_name(trace.termination);
          row.t_final = io::format_double(trace.t_final);
        } catch (const std::exception& e) {
          std::string what = e.what();
          for (char& c : what)
            if (c == ',' || c == '\n') c = ';';
          row.termination = "error: " + what;
        }
      }
    };
    const int n_workers = std::max(1, std::min<int>(jobs, amplitudes.size()));
    std::vector<std::thread> pool;
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::ostringstream csv;
  csv << "b,amplitude,me_ratio,grad_ratio,verdict,termination,t_final\n";
  for (const Row& row : rows)
    csv << b_str << ',' << io::format_double(row.amplitude) << ',' << row.me_ratio << ','
        << row.grad_ratio << ',' << row.verdict << ',' << row.termination << ',' << row.t_final
        << '\n';
  std::cout << csv.str();

  json config{{"subcommand", "sweep"}, {"b", b_str}, {"amplitudes", amplitudes_str},
              {"T", T},                {"dt", dt},   {"jobs", jobs},
              {"r_max", spec.r_max},   {"n", spec.n}};
  io::RunDirectory run(resolve_out(out_flag, "sweep"), config);
  std::ofstream out(run.file("sweep.csv"));
  out << csv.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the radial 3D focusing inhomogeneous NLS"};
  app.require_subcommand(1);

  std::string b_str, theta_str, q_str, r_str, cls_str, grid_str, gs_grid_str, init, expect,
      out_flag, trace_dir, amplitudes_str;
  double T = 20.0, dt = 1e-3, tol = 1e-8, blowup_factor = 20.0, boundary_limit = 1.0, R = 20.0,
         tail_tol = 1e-4;
  int max_iter = 500, snap_stride = 0, jobs = 4;
  bool show_range = false, linear = false, backward = false;
  long seed = 0;
  app.add_option("--seed", seed, "seed for randomized test fields");

  auto* adm = app.add_subcommand("admissible", "exponent pair checks, CSV on stdout");
  adm->add_option("--b", b_str, "weight exponent, rational p/q")->required();
  adm->add_option("--theta", theta_str, "print the working-exponent table for this theta");
  adm->add_option("--q", q_str, "pair q, rational or 'inf'");
  adm->add_option("--r", r_str, "pair r, rational");
  adm->add_option("--class", cls_str, "pair class: L2, Hs, Hs-dual");
  adm->add_flag("--range", show_range, "print the usable theta interval");

  auto* gs = app.add_subcommand("ground-state", "solve Q and report its identities");
  gs->add_option("--b", b_str)->required();
  gs->add_option("--grid", grid_str, "r_max,n (default 32,4095)");
  gs->add_option("--tol", tol);
  gs->add_option("--max-iter", max_iter);
  gs->add_option("--out", out_flag);

  auto* cls = app.add_subcommand("classify", "threshold verdict for initial data");
  cls->add_option("--b", b_str)->required();
  cls->add_option("--init", init)->required();
  cls->add_option("--grid", grid_str, "r_max,n (default 64,8191)");
  cls->add_option("--gs-grid", gs_grid_str, "ground-state grid (default 32,4095)");
  cls->add_option("--out", out_flag);

  auto* evo = app.add_subcommand("evolve", "split-step evolution with monitors");
  evo->add_option("--b", b_str)->required();
  evo->add_option("--init", init)->required();
  evo->add_option("--T", T)->required();
  evo->add_option("--dt", dt)->required();
  evo->add_option("--snap-stride", snap_stride, "snapshot every N steps (0 = none)");
  evo->add_option("--blowup-factor", blowup_factor);
  evo->add_option("--boundary-limit", boundary_limit);
  evo->add_flag("--linear", linear, "disable the nonlinear phase");
  evo->add_option("--grid", grid_str);
  evo->add_option("--gs-grid", gs_grid_str);
  evo->add_option("--expect", expect, "reach|blowup|boundary; mismatch exits 3");
  evo->add_option("--out", out_flag);

  auto* vir = app.add_subcommand("virial", "virial identity residual along a trace");
  vir->add_option("--trace", trace_dir)->required();
  vir->add_option("--R", R)->required();
  vir->add_option("--out", out_flag);

  auto* sca = app.add_subcommand("scatter", "scattering state and Strichartz panels");
  sca->add_option("--trace", trace_dir)->required();
  sca->add_option("--T-tail", tail_tol, "Duhamel tail tolerance relative to ||phi+||");
  sca->add_flag("--backward", backward);
  sca->add_option("--out", out_flag);

  auto* swp = app.add_subcommand("sweep", "classify + evolve over an amplitude grid");
  swp->add_option("--b", b_str)->required();
  swp->add_option("--amplitudes", amplitudes_str, "comma-separated list");
  swp->add_option("--T", T);
  swp->add_option("--dt", dt);
  swp->add_option("--jobs", jobs);
  swp->add_option("--grid", grid_str);
  swp->add_option("--gs-grid", gs_grid_str);
  swp->add_option("--out", out_flag);

  try {
    app.parse(argc, argv);
    if (adm->parsed())
      return cmd_admissible(b_str, theta_str, q_str, r_str, cls_str, show_range);
    if (gs->parsed()) return cmd_ground_state(b_str, grid_str, tol, max_iter, out_flag);
    if (cls->parsed()) return cmd_classify(b_str, init, grid_str, gs_grid_str, out_flag);
    if (evo->parsed())
      return cmd_evolve(b_str, init, T, dt, snap_stride, blowup_factor, boundary_limit, linear,
                        grid_str, gs_grid_str, expect, out_flag);
    if (vir->parsed()) return cmd_virial(trace_dir, R, out_flag);
    if (sca->parsed()) return cmd_scatter(trace_dir, tail_tol, backward, out_flag);
    if (swp->parsed())
      return cmd_sweep(b_str, amplitudes_str, T, dt, jobs, grid_str, gs_grid_str, out_flag);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\nrun with --help for usage\n";
    return 2;
  } catch (const ExpectMismatch& e) {
    std::cerr << "outcome mismatch: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
