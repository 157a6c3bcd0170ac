#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>

#include "inls/diagnostics.hpp"

namespace inls::io {

inline constexpr int kSchemaVersion = 1;

std::string format_double(double x);  // 17 significant digits

/// Field snapshot CSV: header "r,re_u,im_u", one row per node.
void write_field_csv(const std::filesystem::path& path, const ComplexRadialField& field);

/// Reads a snapshot back; the grid geometry is reconstructed from the r
/// column and b is supplied by the caller.
ComplexRadialField read_field_csv(const std::filesystem::path& path, const Rational& b);

/// Ground-state profile CSV: header "r,Q".
void write_profile_csv(const std::filesystem::path& path, const GroundStateProfile& profile);

nlohmann::json profile_report_json(const GroundStateProfile& profile);
nlohmann::json verdict_json(const Verdict& verdict);

void write_monitors_csv(const std::filesystem::path& path,
                        const std::vector<MonitorRow>& monitors);
std::vector<MonitorRow> read_monitors_csv(const std::filesystem::path& path);

/// Writes monitors, snapshot CSVs and manifest.json under dir.
void write_trace(const std::filesystem::path& dir, const EvolutionTrace& trace);
EvolutionTrace read_trace(const std::filesystem::path& dir);

/// Run-directory provenance: verbatim config, schema_version file and a
/// manifest listing every artifact written.
class RunDirectory {
 public:
  RunDirectory(std::filesystem::path dir, const nlohmann::json& config);
  ~RunDirectory();

  const std::filesystem::path& path() const { return dir_; }
  std::filesystem::path file(const std::string& name);
  void finalize();  // writes the manifest

 private:
  std::filesystem::path dir_;
  std::vector<std::string> artifacts_;
  bool finalized_ = false;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace inls::io
