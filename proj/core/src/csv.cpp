#include "wavedecay/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavedecay {

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_series_csv(const std::string& path, const RunSeries& series)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("csv: cannot write '" + path + "'");
    out << "t,E_total,E_loc,E_ext,l2_norm,weighted_ext,support_radius,morawetz_residual,K_integral\n";
    for (const SeriesPoint& p : series.points) {
        out << format_number(p.t) << ',' << format_number(p.E_total) << ',' << format_number(p.E_loc)
            << ',' << format_number(p.E_ext) << ',' << format_number(p.l2_norm) << ','
            << format_number(p.weighted_ext) << ',' << format_number(p.support_radius) << ','
            << format_number(p.morawetz_residual) << ',' << format_number(p.K_integral) << '\n';
    }
}

void write_audits_csv(const std::string& path, const AuditReport& report)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("csv: cannot write '" + path + "'");
    out << "name,paper_anchor,lhs,rhs,margin,pass\n";
    for (const AuditEntry& e : report.entries) {
        out << e.name << ",\"" << e.anchor << "\"," << format_number(e.lhs) << ','
            << format_number(e.rhs) << ',' << format_number(e.margin) << ','
            << (e.pass ? "true" : "false") << '\n';
    }
}

int CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("csv: cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("csv: empty file '" + path + "'");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ','))
        table.header.push_back(cell);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream rs(line);
        std::vector<double> row;
        while (std::getline(rs, cell, ','))
            row.push_back(std::strtod(cell.c_str(), nullptr));
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace wavedecay
