#ifndef SBUC_REPORT_HPP
#define SBUC_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbuc/solver.hpp"

namespace sbuc {

struct RunReportRow {
    std::string name;
    double igap_without = 0, igap_with = 0;
    std::optional<double> pct_reduction;
    long nodes_without = 0, nodes_with = 0;
    long cuts_added = 0;
    double wall_time = 0;

    static RunReportRow from(const ComparisonRow& c) {
        return {c.name, c.igap_without, c.igap_with, c.pct_reduction, c.nodes_without, c.nodes_with, c.cuts_added, c.wall_time};
    }
};

inline constexpr const char* kRunReportHeader = "name,igap_without,igap_with,pct_reduction,nodes_without,nodes_with,cuts_added,wall_time";

namespace detail {
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace detail

inline void write_run_report(std::ostream& os, const std::vector<RunReportRow>& rows, bool header = true) {
    if (header) os << kRunReportHeader << "\n";
    for (const auto& r : rows) {
        if (r.name.find_first_of(",\"\n") != std::string::npos) throw std::invalid_argument("run report: name must not contain ',', '\"' or newlines");
        os << r.name << "," << detail::g17(r.igap_without) << "," << detail::g17(r.igap_with) << ","
           << (r.pct_reduction ? detail::g17(*r.pct_reduction) : std::string("nan")) << "," << r.nodes_without << ","
           << r.nodes_with << "," << r.cuts_added << "," << detail::g17(r.wall_time) << "\n";
    }
}

inline std::vector<RunReportRow> read_run_report(std::istream& is) {
    std::vector<RunReportRow> out;
    std::string line;
    if (!std::getline(is, line) || line != kRunReportHeader) throw std::invalid_argument("run report: missing header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 8) throw std::invalid_argument("run report: expected 8 columns");
        RunReportRow r;
        r.name = f[0];
        r.igap_without = std::stod(f[1]);
        r.igap_with = std::stod(f[2]);
        if (f[3] != "nan") r.pct_reduction = std::stod(f[3]);
        r.nodes_without = std::stol(f[4]);
        r.nodes_with = std::stol(f[5]);
        r.cuts_added = std::stol(f[6]);
        r.wall_time = std::stod(f[7]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace sbuc

#endif
