#ifndef SBUC_MPS_HPP
#define SBUC_MPS_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbuc/formulation.hpp"

namespace sbuc {

namespace detail {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

// Free-format MPS. Two-sided rows become L rows with a RANGES entry; one-sided rows are L or G; lo == hi is E.
inline void write_mps(const MilpModel& m, std::ostream& os, const std::string& name = "SBUC") {
    struct RowForm {
        char type;
        double rhs;
        double range;  // 0 when none
    };
    std::vector<RowForm> form;
    for (const auto& r : m.rows) {
        const bool lo = std::isfinite(r.lo), hi = std::isfinite(r.hi);
        if (lo && hi && r.lo == r.hi) form.push_back({'E', r.hi, 0});
        else if (lo && hi) form.push_back({'L', r.hi, r.hi - r.lo});
        else if (hi) form.push_back({'L', r.hi, 0});
        else if (lo) form.push_back({'G', r.lo, 0});
        else form.push_back({'N', 0, 0});
    }
    // column-major view of the rows
    std::vector<std::vector<std::pair<int, double>>> cols(m.vars.size());
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        for (const auto& [j, c] : m.rows[i].coeffs) cols[j].emplace_back(static_cast<int>(i), c);

    os << "NAME " << name << "\n";
    os << "OBJSENSE\n    MIN\n";
    os << "ROWS\n N obj\n";
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        if (form[i].type != 'N') os << " " << form[i].type << " " << m.rows[i].name << "\n";
    os << "COLUMNS\n";
    bool in_int = false;
    int marker = 0;
    for (std::size_t j = 0; j < m.vars.size(); ++j) {
        const auto& v = m.vars[j];
        if (v.integer != in_int) {
            os << "    MARKER" << marker++ << " 'MARKER' " << (v.integer ? "'INTORG'" : "'INTEND'") << "\n";
            in_int = v.integer;
        }
        if (v.obj != 0) os << "    " << v.name << " obj " << detail::num(v.obj) << "\n";
        for (const auto& [i, c] : cols[j])
            if (form[i].type != 'N' && c != 0) os << "    " << v.name << " " << m.rows[i].name << " " << detail::num(c) << "\n";
        if (v.obj == 0 && cols[j].empty()) os << "    " << v.name << " obj 0\n";
    }
    if (in_int) os << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
    os << "RHS\n";
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        if (form[i].type != 'N' && form[i].rhs != 0) os << "    RHS " << m.rows[i].name << " " << detail::num(form[i].rhs) << "\n";
    bool ranges = false;
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        if (form[i].range != 0) {
            if (!ranges) os << "RANGES\n";
            ranges = true;
            os << "    RNG " << m.rows[i].name << " " << detail::num(form[i].range) << "\n";
        }
    os << "BOUNDS\n";
    for (const auto& v : m.vars) {
        if (v.lb != 0) {
            if (std::isfinite(v.lb)) os << " LO BND " << v.name << " " << detail::num(v.lb) << "\n";
            else os << " MI BND " << v.name << "\n";
        }
        if (std::isfinite(v.ub)) os << " UP BND " << v.name << " " << detail::num(v.ub) << "\n";
    }
    os << "ENDATA\n";
}

inline void write_mps(const MilpModel& m, const std::string& path, const std::string& name = "SBUC") {
    std::ofstream f(path);
    if (!f) throw std::ios_base::failure("cannot open " + path + " for writing");
    write_mps(m, f, name);
    if (!f) throw std::ios_base::failure("error writing " + path);
}

}  // namespace sbuc

#endif
