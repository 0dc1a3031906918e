#include "vspc/diagnostics_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "vspc/errors.hpp"

namespace vspc {

namespace {

using Member = double DiagnosticsRecord::*;

const std::vector<std::pair<std::string, Member>>& column_table() {
  using R = DiagnosticsRecord;
  static const std::vector<std::pair<std::string, Member>> table{
      {"t", &R::t},
      {"dt", &R::dt},
      {"l2_u", &R::l2_u},
      {"l2_F", &R::l2_F},
      {"h1_u", &R::h1_u},
      {"h2_u", &R::h2_u},
      {"h1_F", &R::h1_F},
      {"h2_F", &R::h2_F},
      {"lap_u", &R::lap_u},
      {"lap_F", &R::lap_F},
      {"grad_energy", &R::grad_energy},
      {"grad_u_sq", &R::grad_u_sq},
      {"hs2_gradu", &R::hs2_gradu},
      {"lp_F_2", &R::lp_F_2},
      {"lp_F_4", &R::lp_F_4},
      {"lp_F_6", &R::lp_F_6},
      {"lp_F_inf", &R::lp_F_inf},
      {"lp_F1_2", &R::lp_F1_2},
      {"lp_F1_4", &R::lp_F1_4},
      {"lp_F1_6", &R::lp_F1_6},
      {"lp_F1_inf", &R::lp_F1_inf},
      {"lp_F2_2", &R::lp_F2_2},
      {"lp_F2_4", &R::lp_F2_4},
      {"lp_F2_6", &R::lp_F2_6},
      {"lp_F2_inf", &R::lp_F2_inf},
      {"linf_u", &R::linf_u},
      {"linf_gradu", &R::linf_gradu},
      {"linf_curl_u", &R::linf_curl_u},
      {"linf_curl_F", &R::linf_curl_F},
      {"l6_gradF", &R::l6_gradF},
      {"l2_ut", &R::l2_ut},
      {"bkm", &R::bkm},
      {"visc", &R::visc},
      {"curl_int", &R::curl_int},
      {"hs2_gradu_int", &R::hs2_gradu_int},
      {"energy", &R::energy},
      {"energy0", &R::energy0},
      {"energy_residual", &R::energy_residual},
      {"div_drift_u", &R::div_drift_u},
      {"div_drift_F", &R::div_drift_F},
      {"projection_F", &R::projection_F},
  };
  return table;
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double parse_number(const std::string& text, std::size_t line_no) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size())
    throw ParseError("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
  return v;
}

void parse_comment(const std::string& line, DiagnosticsTable& table, std::size_t line_no) {
  std::istringstream in(line.substr(1));
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "nu") table.nu = parse_number(value, line_no);
    else if (key == "forced") table.forced = parse_number(value, line_no) != 0.0;
    else if (key == "energy_tol") table.energy_tolerance = parse_number(value, line_no);
  }
}

}  // namespace

const std::vector<std::string>& diagnostics_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, member] : column_table()) v.push_back(name);
    return v;
  }();
  return names;
}

void write_diagnostics_header(std::ostream& out, double nu, bool forced, double energy_tolerance) {
  out << "# nu=" << format(nu) << " forced=" << (forced ? 1 : 0) << " energy_tol=" << format(energy_tolerance)
      << '\n';
  const auto& names = diagnostics_columns();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
}

void write_diagnostics_row(std::ostream& out, const DiagnosticsRecord& rec) {
  bool first = true;
  for (const auto& [name, member] : column_table()) {
    out << (first ? "" : ",") << format(rec.*member);
    first = false;
  }
  out << '\n';
}

void write_diagnostics_csv(std::ostream& out, const DiagnosticsTable& table) {
  write_diagnostics_header(out, table.nu, table.forced, table.energy_tolerance);
  for (const auto& r : table.history) write_diagnostics_row(out, r);
}

DiagnosticsTable read_diagnostics_csv(std::istream& in) {
  DiagnosticsTable table;
  std::unordered_map<std::string, Member> known;
  for (const auto& [name, member] : column_table()) known.emplace(name, member);

  std::vector<Member> columns;  // nullptr for unknown columns
  bool have_header = false, have_bkm = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (line.front() == '#') {
      parse_comment(line, table, line_no);
      continue;
    }
    const auto cells = split(line, ',');
    if (!have_header) {
      bool have_t = false;
      for (const auto& c : cells) {
        const auto it = known.find(trim(c));
        columns.push_back(it == known.end() ? nullptr : it->second);
        have_t = have_t || trim(c) == "t";
        have_bkm = have_bkm || trim(c) == "bkm";
      }
      if (!have_t) throw ParseError("diagnostics header lacks a 't' column");
      have_header = true;
      continue;
    }
    if (cells.size() != columns.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns.size()) +
                       " fields, found " + std::to_string(cells.size()));
    DiagnosticsRecord rec;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const double v = parse_number(cells[i], line_no);
      if (columns[i]) rec.*columns[i] = v;
    }
    if (!table.history.empty() && !(rec.t > table.history.back().t))
      throw ParseError("line " + std::to_string(line_no) + ": times must increase");
    table.history.push_back(rec);
  }
  if (!have_header) throw ParseError("diagnostics stream has no header");
  if (!have_bkm)
    for (std::size_t i = 1; i < table.history.size(); ++i) {
      auto& r = table.history[i];
      const auto& p = table.history[i - 1];
      r.bkm = p.bkm + 0.5 * (r.t - p.t) * (r.linf_gradu + p.linf_gradu);
    }
  return table;
}

DiagnosticsTable read_diagnostics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_diagnostics_csv(in);
}

nlohmann::json to_json(const CertificateReport& rep) {
  return {{"name", rep.name},       {"applicable", rep.applicable}, {"satisfied", rep.satisfied},
          {"margin", rep.margin},   {"worst_t", rep.worst_t},       {"value", rep.value}};
}

nlohmann::json to_json(const BkmReport& rep) {
  nlohmann::json j{{"integral", rep.integral}, {"extrapolated_t_star", nullptr}};
  if (rep.extrapolated_t_star) j["extrapolated_t_star"] = *rep.extrapolated_t_star;
  return j;
}

nlohmann::json criterion_report(const DiagnosticsTable& table) {
  const auto& h = table.history;
  const BkmReport bkm = bkm_report(h);
  nlohmann::json certs = nlohmann::json::array();
  bool all = true;
  for (const auto& c : evaluate_certificates(h, table.forced, table.energy_tolerance)) {
    certs.push_back(to_json(c));
    all = all && (!c.applicable || c.satisfied);
  }
  return {{"records", h.size()},
          {"t_final", h.back().t},
          {"nu", table.nu},
          {"forced", table.forced},
          {"bkm", to_json(bkm)},
          {"curl_integral", h.back().curl_int - h.front().curl_int},
          {"hs2_gradu_integral", h.back().hs2_gradu_int - h.front().hs2_gradu_int},
          {"max_linf_gradu", std::max_element(h.begin(), h.end(), [](const auto& a, const auto& b) {
                               return a.linf_gradu < b.linf_gradu;
                             })->linf_gradu},
          {"certificates", certs},
          {"all_satisfied", all}};
}

}  // namespace vspc
