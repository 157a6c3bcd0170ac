#include "inls/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace inls::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

double parse_double(std::string_view s) {
  // from_chars<double> keeps parsing locale-free and round-trip exact
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc()) throw std::runtime_error("bad number: '" + std::string(s) + "'");
  (void)ptr;
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return in;
}

}  // namespace

void write_field_csv(const fs::path& path, const ComplexRadialField& field) {
  auto out = open_out(path);
  out << "r,re_u,im_u\n";
  const auto& r = field.grid().nodes();
  for (int j = 0; j < field.grid().n(); ++j) {
    const Complex u = field.v()[j] / r[j];
    out << format_double(r[j]) << ',' << format_double(u.real()) << ','
        << format_double(u.imag()) << '\n';
  }
}

ComplexRadialField read_field_csv(const fs::path& path, const Rational& b) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,re_u,im_u", 0) != 0)
    throw std::runtime_error(path.string() + ": expected header r,re_u,im_u");
  std::vector<double> r;
  std::vector<Complex> u;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 3) throw std::runtime_error(path.string() + ": bad row '" + line + "'");
    r.push_back(parse_double(cols[0]));
    u.emplace_back(parse_double(cols[1]), parse_double(cols[2]));
  }
  if (r.size() < 8) throw std::runtime_error(path.string() + ": too few rows");
  const double dr = r[0];
  for (size_t j = 0; j < r.size(); ++j)
    if (std::abs(r[j] - (j + 1) * dr) > 1e-9 * r.back())
      throw std::runtime_error(path.string() + ": nodes are not uniform");
  const int n = static_cast<int>(r.size());
  auto grid = make_grid(dr * (n + 1), n, b);
  return ComplexRadialField::from_u_samples(std::move(grid), u);
}

void write_profile_csv(const fs::path& path, const GroundStateProfile& profile) {
  auto out = open_out(path);
  out << "r,Q\n";
  const auto& r = profile.grid->nodes();
  for (size_t j = 0; j < profile.q.size(); ++j)
    out << format_double(r[j]) << ',' << format_double(profile.q[j]) << '\n';
}

json profile_report_json(const GroundStateProfile& profile) {
  return json{{"b", to_string(profile.params.b)},
              {"s_c", to_string(profile.params.s_c)},
              {"r_max", profile.grid->r_max()},
              {"n", profile.grid->n()},
              {"mass", profile.mass},
              {"grad_sq", profile.grad_sq},
              {"potential", profile.potential},
              {"energy", profile.energy},
              {"c_gn", profile.c_gn},
              {"threshold_me", profile.threshold_me},
              {"threshold_grad", profile.threshold_grad},
              {"residual", profile.residual},
              {"iterations", profile.iterations}};
}

json verdict_json(const Verdict& verdict) {
  json j{{"verdict", verdict_name(verdict.tag)},
         {"grad_ratio", verdict.grad_ratio},
         {"finite_variance", verdict.finite_variance},
         {"negative_energy", verdict.negative_energy}};
  if (std::isnan(verdict.me_ratio))
    j["me_ratio"] = nullptr;
  else
    j["me_ratio"] = verdict.me_ratio;
  return j;
}

void write_monitors_csv(const fs::path& path, const std::vector<MonitorRow>& monitors) {
  auto out = open_out(path);
  out << "t,mass,energy,grad_sq,potential,grad_product,sup_u,boundary_frac\n";
  for (const MonitorRow& row : monitors) {
    out << format_double(row.t) << ',' << format_double(row.mass) << ','
        << format_double(row.energy) << ',' << format_double(row.grad_sq) << ','
        << format_double(row.potential) << ',' << format_double(row.grad_product) << ','
        << format_double(row.sup_u) << ',' << format_double(row.boundary_frac) << '\n';
  }
}

std::vector<MonitorRow> read_monitors_csv(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  std::vector<MonitorRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 8) throw std::runtime_error(path.string() + ": bad monitor row");
    MonitorRow row;
    row.t = parse_double(cols[0]);
    row.mass = parse_double(cols[1]);
    row.energy = parse_double(cols[2]);
    row.grad_sq = parse_double(cols[3]);
    row.potential = parse_double(cols[4]);
    row.grad_product = parse_double(cols[5]);
    row.sup_u = parse_double(cols[6]);
    row.boundary_frac = parse_double(cols[7]);
    rows.push_back(row);
  }
  return rows;
}

namespace {

Termination termination_from(const std::string& name) {
  if (name == "ReachedT") return Termination::ReachedT;
  if (name == "BlowupDetected") return Termination::BlowupDetected;
  if (name == "BoundaryContaminated") return Termination::BoundaryContaminated;
  throw std::runtime_error("unknown termination '" + name + "'");
}

}  // namespace

void write_trace(const fs::path& dir, const EvolutionTrace& trace) {
  fs::create_directories(dir);
  write_monitors_csv(dir / "monitors.csv", trace.monitors);

  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["b"] = to_string(trace.params.b);
  manifest["r_max"] = trace.grid->r_max();
  manifest["n"] = trace.grid->n();
  manifest["dt"] = trace.config.dt;
  manifest["T"] = trace.config.T;
  manifest["termination"] = termination_name(trace.termination);
  manifest["t_final"] = trace.t_final;
  manifest["monitors"] = "monitors.csv";

  json snaps = json::array();
  for (size_t i = 0; i < trace.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%06zu.csv", i);
    write_field_csv(dir / name, trace.snapshots[i]);
    snaps.push_back(json{{"t", trace.snapshot_times[i]}, {"file", name}});
  }
  manifest["snapshots"] = std::move(snaps);

  write_field_csv(dir / "final.csv", trace.final_field);
  manifest["final"] = "final.csv";
  write_json(dir / "manifest.json", manifest);
}

EvolutionTrace read_trace(const fs::path& dir) {
  auto in = open_in(dir / "manifest.json");
  json manifest = json::parse(in);
  const Rational b = parse_rational(manifest.at("b").get<std::string>());
  const InlsParams params(b);
  auto grid = make_grid(manifest.at("r_max").get<double>(), manifest.at("n").get<int>(), b);

  EvolutionTrace trace{params, grid, {}, {}, {}, {}, ComplexRadialField(grid)};
  trace.config.dt = manifest.at("dt").get<double>();
  trace.config.T = manifest.at("T").get<double>();
  trace.termination = termination_from(manifest.at("termination").get<std::string>());
  trace.t_final = manifest.at("t_final").get<double>();
  trace.monitors = read_monitors_csv(dir / manifest.at("monitors").get<std::string>());
  for (const json& snap : manifest.at("snapshots")) {
    trace.snapshot_times.push_back(snap.at("t").get<double>());
    ComplexRadialField f = read_field_csv(dir / snap.at("file").get<std::string>(), b);
    trace.snapshots.push_back(ComplexRadialField(trace.grid, f.v()));
  }
  ComplexRadialField fin = read_field_csv(dir / manifest.at("final").get<std::string>(), b);
  trace.final_field = ComplexRadialField(trace.grid, fin.v());
  return trace;
}

RunDirectory::RunDirectory(fs::path dir, const json& config) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
  write_json(dir_ / "config.json", config);
  auto out = open_out(dir_ / "schema_version");
  out << kSchemaVersion << '\n';
  artifacts_.push_back("config.json");
  artifacts_.push_back("schema_version");
}

RunDirectory::~RunDirectory() {
  try {
    finalize();
  } catch (...) {
  }
}

fs::path RunDirectory::file(const std::string& name) {
  artifacts_.push_back(name);
  return dir_ / name;
}

void RunDirectory::finalize() {
  if (finalized_) return;
  finalized_ = true;
  json manifest{{"schema_version", kSchemaVersion}, {"artifacts", artifacts_}};
  write_json(dir_ / "manifest.json", manifest);
}

void write_json(const fs::path& path, const json& value) {
  auto out = open_out(path);
  out << value.dump(2) << '\n';
}

}  // namespace inls::io
