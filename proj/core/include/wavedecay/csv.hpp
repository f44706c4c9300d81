#ifndef WAVEDECAY_CSV_HPP
#define WAVEDECAY_CSV_HPP

#include <string>
#include <vector>

#include "wavedecay/audit.hpp"
#include "wavedecay/diagnostics.hpp"

namespace wavedecay {

std::string format_number(double v);

/// series.csv columns, in order:
/// t,E_total,E_loc,E_ext,l2_norm,weighted_ext,support_radius,morawetz_residual,K_integral
void write_series_csv(const std::string& path, const RunSeries& series);

/// audits.csv columns: name,paper_anchor,lhs,rhs,margin,pass
void write_audits_csv(const std::string& path, const AuditReport& report);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

} // namespace wavedecay

#endif
