#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "xchg/bounds.hpp"
#include "xchg/galerkin.hpp"

namespace xchg {

// Stable formatting shared by every emitter: identical inputs give
// byte-identical output.
std::string format_double(double x);

void write_reports_csv(std::ostream& out, std::span<const SpectralReport> reports,
                       const std::string& header_comment);
void write_reports_json(std::ostream& out, std::span<const SpectralReport> reports,
                        const std::string& header_comment);

void write_ledger_csv(std::ostream& out, const BoundLedger& ledger,
                      const std::string& header_comment);
void write_ledger_json(std::ostream& out, const BoundLedger& ledger,
                       const std::string& header_comment);

}  // namespace xchg
