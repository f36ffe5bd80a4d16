#include "hns/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hns/errors.hpp"

namespace hns {

namespace {

std::string header_line() {
    std::string h;
    const auto& names = EnergyTrace::column_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) h += ',';
        h += names[i];
    }
    return h;
}

void append_row(std::string& out, const TraceRow& r) {
    const double vals[9] = {r.t,          r.E,         r.a,     r.E_k,
                            r.N_sqrt_ratio, r.N_sobolev, r.N_centroid,
                            r.ratio,      r.spectrum_health};
    char buf[40];
    for (int i = 0; i < 9; ++i) {
        if (i) out += ',';
        std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
        out += buf;
    }
    out += '\n';
}

} // namespace

std::string trace_to_string(const EnergyTrace& trace) {
    std::string out = header_line();
    out += '\n';
    for (const auto& r : trace.rows) append_row(out, r);
    return out;
}

void write_trace(const EnergyTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << trace_to_string(trace);
    if (!out) throw IoError("short write to '" + path + "'");
}

EnergyTrace trace_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("malformed header: empty trace file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header_line())
        throw IoError("malformed header: expected '" + header_line() + "'");

    EnergyTrace trace;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double vals[9];
        const char* p = line.c_str();
        int count = 0;
        while (count < 10) {
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p)
                throw IoError("row " + std::to_string(lineno) + ": bad number near '" +
                              std::string(p).substr(0, 12) + "'");
            if (count < 9) vals[count] = v;
            ++count;
            p = end;
            if (*p == ',') {
                ++p;
            } else if (*p == '\0') {
                break;
            } else {
                throw IoError("row " + std::to_string(lineno) + ": unexpected character '" +
                              std::string(1, *p) + "'");
            }
        }
        if (count != 9)
            throw IoError("row " + std::to_string(lineno) + ": expected 9 fields, got " +
                          std::to_string(count));
        TraceRow r;
        r.t = vals[0];
        r.E = vals[1];
        r.a = vals[2];
        r.E_k = vals[3];
        r.N_sqrt_ratio = vals[4];
        r.N_sobolev = vals[5];
        r.N_centroid = vals[6];
        r.ratio = vals[7];
        r.spectrum_health = vals[8];
        trace.rows.push_back(r);
    }
    return trace;
}

EnergyTrace read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read trace file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return trace_from_string(ss.str());
}

} // namespace hns
