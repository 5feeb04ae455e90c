#include "xchg/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace xchg {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_reports_csv(std::ostream& out, std::span<const SpectralReport> reports,
                       const std::string& header_comment) {
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out << "gamma,N,E,method,degree,value,lower,upper\n";
  for (const auto& r : reports) {
    out << format_double(r.gamma) << ',' << r.n_particles << ',' << format_double(r.mean_energy)
        << ',' << r.method << ',' << r.degree << ',' << format_double(r.value) << ','
        << (r.lower ? format_double(*r.lower) : "") << ','
        << (r.upper ? format_double(*r.upper) : "") << '\n';
  }
}

namespace {
nlohmann::json report_to_json(const SpectralReport& r) {
  nlohmann::json j;
  j["gamma"] = r.gamma;
  j["N"] = r.n_particles;
  j["E"] = r.mean_energy;
  j["method"] = r.method;
  j["degree"] = r.degree;
  j["dof"] = r.dof;
  j["value"] = r.value;
  if (r.lower) j["lower"] = *r.lower;
  if (r.upper) j["upper"] = *r.upper;
  if (r.exact_value) j["exact"] = *r.exact_value;
  j["notes"] = r.notes;
  return j;
}
}  // namespace

void write_reports_json(std::ostream& out, std::span<const SpectralReport> reports,
                        const std::string& header_comment) {
  nlohmann::json j;
  j["header"] = header_comment;
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) j["reports"].push_back(report_to_json(r));
  out << j.dump(2) << '\n';
}

void write_ledger_csv(std::ostream& out, const BoundLedger& ledger,
                      const std::string& header_comment) {
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out << "name,gamma,N,value,anchor,notes\n";
  for (const auto& e : ledger.entries) {
    out << e.name << ',' << format_double(e.gamma) << ',' << e.n_particles << ','
        << format_double(e.value) << ',' << '"' << e.anchor << '"' << ',' << '"' << e.note << '"'
        << '\n';
  }
}

void write_ledger_json(std::ostream& out, const BoundLedger& ledger,
                       const std::string& header_comment) {
  nlohmann::json j;
  j["header"] = header_comment;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : ledger.entries) {
    nlohmann::json row;
    row["name"] = e.name;
    row["gamma"] = e.gamma;
    row["N"] = e.n_particles;
    row["value"] = e.value;
    row["anchor"] = e.anchor;
    row["note"] = e.note;
    if (e.exact_value) row["exact"] = *e.exact_value;
    row["asserted"] = e.asserted;
    j["entries"].push_back(row);
  }
  out << j.dump(2) << '\n';
}

}  // namespace xchg
