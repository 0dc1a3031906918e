#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vspc/diagnostics.hpp"

namespace vspc {

/// A diagnostics stream together with the run facts the certificates need.
struct DiagnosticsTable {
  std::vector<DiagnosticsRecord> history;
  double nu = 0.0;
  bool forced = false;
  double energy_tolerance = kDefaultEnergyTolerance;
};

/// Column names, in file order.
const std::vector<std::string>& diagnostics_columns();

/// Writes a `# nu=<v> forced=<0|1> energy_tol=<v>` line, the header and one
/// row per record. Values are printed with 17 significant digits, so a read
/// back reproduces every double exactly.
void write_diagnostics_header(std::ostream& out, double nu, bool forced, double energy_tolerance);
void write_diagnostics_row(std::ostream& out, const DiagnosticsRecord& rec);
void write_diagnostics_csv(std::ostream& out, const DiagnosticsTable& table);

/// Reads a stream written by write_diagnostics_csv, or a synthetic one: only
/// the `t` column is mandatory, missing columns read as 0, and when `bkm` is
/// absent it is re-accumulated from `linf_gradu` by the trapezoidal rule.
/// Throws ParseError on malformed input.
DiagnosticsTable read_diagnostics_csv(std::istream& in);
DiagnosticsTable read_diagnostics_csv(const std::string& path);

nlohmann::json to_json(const CertificateReport& rep);
nlohmann::json to_json(const BkmReport& rep);

/// Certificates, BKM report and headline integrals of a history. Needs at
/// least 3 records (bkm_report's requirement).
nlohmann::json criterion_report(const DiagnosticsTable& table);

}  // namespace vspc
