// Field serialization (flat binary and CSV, bit-exact round trip) and small
// CSV helpers shared by the experiment drivers.
#pragma once
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"

namespace vorlab {

// 17 significant digits round-trips IEEE doubles exactly through text.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void save_field_bin(const ScalarField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    require(os.good(), "cannot open " + path);
    const char magic[4] = {'V', 'L', 'F', '1'};
    os.write(magic, 4);
    const std::uint8_t kind = static_cast<std::uint8_t>(f.grid.kind);
    bool cplx = false;
    for (int k = 0; k < f.values.size() && !cplx; ++k) cplx = f.values[k].imag() != 0.0;
    const std::uint8_t c = cplx ? 1 : 0;
    os.write(reinterpret_cast<const char*>(&kind), 1);
    os.write(reinterpret_cast<const char*>(&c), 1);
    os.write(reinterpret_cast<const char*>(&f.grid.L), sizeof(double));
    const std::int32_t n = f.grid.n;
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    for (int k = 0; k < f.values.size(); ++k) {
        const double re = f.values[k].real(), im = f.values[k].imag();
        os.write(reinterpret_cast<const char*>(&re), sizeof re);
        if (cplx) os.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
}

inline ScalarField load_field_bin(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(is.good(), "cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    require(std::memcmp(magic, "VLF1", 4) == 0, "bad field file magic in " + path);
    std::uint8_t kind, cplx;
    double L;
    std::int32_t n;
    is.read(reinterpret_cast<char*>(&kind), 1);
    is.read(reinterpret_cast<char*>(&cplx), 1);
    is.read(reinterpret_cast<char*>(&L), sizeof L);
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    ScalarField f(make_grid(static_cast<DomainKind>(kind), L, n));
    for (int k = 0; k < f.values.size(); ++k) {
        double re = 0, im = 0;
        is.read(reinterpret_cast<char*>(&re), sizeof re);
        if (cplx) is.read(reinterpret_cast<char*>(&im), sizeof im);
        f.values[k] = Complex(re, im);
    }
    require(is.good(), "truncated field file " + path);
    return f;
}

inline void save_field_csv(const ScalarField& f, const std::string& path) {
    std::ofstream os(path);
    require(os.good(), "cannot open " + path);
    os << "kind,L,n\n"
       << (f.grid.kind == DomainKind::Half ? "half" : "whole") << ',' << fmt_double(f.grid.L)
       << ',' << f.grid.n << "\n";
    os << "re,im\n";
    for (int k = 0; k < f.values.size(); ++k)
        os << fmt_double(f.values[k].real()) << ',' << fmt_double(f.values[k].imag()) << '\n';
}

inline ScalarField load_field_csv(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), "cannot open " + path);
    std::string line;
    std::getline(is, line);  // header
    std::getline(is, line);
    std::istringstream hs(line);
    std::string kind_s, L_s, n_s;
    std::getline(hs, kind_s, ',');
    std::getline(hs, L_s, ',');
    std::getline(hs, n_s, ',');
    const DomainKind kind = kind_s == "half" ? DomainKind::Half : DomainKind::Whole;
    ScalarField f(make_grid(kind, std::stod(L_s), std::stoi(n_s)));
    std::getline(is, line);  // column header
    for (int k = 0; k < f.values.size(); ++k) {
        std::getline(is, line);
        require(is.good(), "truncated field csv " + path);
        const auto comma = line.find(',');
        f.values[k] = Complex(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return f;
}

// Minimal CSV table writer with deterministic formatting.
struct CsvWriter {
    std::ofstream os;
    explicit CsvWriter(const std::string& path) : os(path) {
        require(os.good(), "cannot open " + path);
    }
    void header(const std::vector<std::string>& cols) {
        for (size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
        os << '\n';
    }
    void row(const std::vector<std::string>& cells) {
        for (size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
        os << '\n';
    }
    void comment(const std::string& s) { os << "# " << s << '\n'; }
};

}  // namespace vorlab
