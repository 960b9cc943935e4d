#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "signbalance/analysis.hpp"
#include "signbalance/assignment.hpp"
#include "signbalance/geometry.hpp"
#include "signbalance/reduction.hpp"
#include "signbalance/vector.hpp"

namespace signbalance {

// 17 significant digits: doubles round-trip exactly through text.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Write via a temp file in the same directory, then rename into place.
inline void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

inline double parse_double(const std::string& s, const std::string& path, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument(s);
        if (!std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": cannot parse value '" + s + "'");
    }
}

} // namespace detail

// Vector CSV: header `x,y` (or x1,...,xn), one vector per row.
inline std::vector<Vector> read_vectors(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::domain_error(path + ": empty file");
    std::size_t arity = detail::split_csv_line(line).size();
    if (arity < 2)
        throw std::runtime_error(path + ":1: header must name at least two columns");

    std::vector<Vector> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != arity)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(arity) + " fields, got " +
                                     std::to_string(fields.size()));
        Vector v = Vector::zero(arity);
        for (std::size_t i = 0; i < arity; ++i)
            v[i] = detail::parse_double(fields[i], path, line_no);
        out.push_back(std::move(v));
    }
    if (out.empty())
        throw std::domain_error(path + ": no vector rows");
    return out;
}

inline void write_vectors(const std::string& path, const std::vector<Vector>& vecs) {
    std::ostringstream out;
    std::size_t dim = vecs.empty() ? 2 : vecs.front().dim();
    if (dim == 2) {
        out << "x,y\n";
    } else {
        for (std::size_t i = 0; i < dim; ++i) out << (i ? "," : "") << "x" << i + 1;
        out << "\n";
    }
    for (const Vector& v : vecs) {
        for (std::size_t i = 0; i < dim; ++i) out << (i ? "," : "") << format_double(v[i]);
        out << "\n";
    }
    atomic_write(path, out.str());
}

// One `+1` or `-1` per line.
inline void write_signs(const std::string& path, const std::vector<int>& signs) {
    std::ostringstream out;
    for (int s : signs) out << (s >= 0 ? "+1" : "-1") << "\n";
    atomic_write(path, out.str());
}

inline std::vector<int> read_signs(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::vector<int> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line == "+1")
            out.push_back(+1);
        else if (line == "-1")
            out.push_back(-1);
        else
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected +1 or -1, got '" + line + "'");
    }
    return out;
}

// Cover file: header `dim=<d> half_angle=<radians> verified=<radians|none>`,
// then one center per line, space-separated coordinates.
inline void write_cover(const std::string& path, const ConeCover& cover) {
    std::ostringstream out;
    out << "dim=" << cover.dim << " half_angle=" << format_double(cover.half_angle)
        << " verified="
        << (cover.verified_radius ? format_double(*cover.verified_radius) : "none") << "\n";
    for (const Vector& c : cover.centers) {
        for (std::size_t i = 0; i < c.dim(); ++i) out << (i ? " " : "") << format_double(c[i]);
        out << "\n";
    }
    atomic_write(path, out.str());
}

inline ConeCover read_cover(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty cover file");
    ConeCover cover;
    {
        std::istringstream header(line);
        std::string tok;
        while (header >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(path + ":1: bad header token '" + tok + "'");
            std::string key = tok.substr(0, eq);
            std::string val = tok.substr(eq + 1);
            if (key == "dim")
                cover.dim = static_cast<std::size_t>(std::stoul(val));
            else if (key == "half_angle")
                cover.half_angle = detail::parse_double(val, path, 1);
            else if (key == "verified" && val != "none")
                cover.verified_radius = detail::parse_double(val, path, 1);
        }
    }
    if (cover.dim < 2)
        throw std::runtime_error(path + ":1: missing or bad dim");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        Vector c = Vector::zero(cover.dim);
        for (std::size_t i = 0; i < cover.dim; ++i) {
            std::string tok;
            if (!(row >> tok))
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": too few coordinates");
            c[i] = detail::parse_double(tok, path, line_no);
        }
        cover.centers.push_back(std::move(c));
    }
    if (cover.centers.empty())
        throw std::runtime_error(path + ": cover has no centers");
    return cover;
}

// Diagnostics CSV: index,sign,block_level,sx,sy,psum_norm (sx..s<d> for
// higher dimensions).
inline std::string diagnostics_csv(const std::vector<int>& signs, const PartialSumTrace& trace) {
    std::ostringstream out;
    std::size_t dim = trace.sums.empty() ? 2 : trace.sums.front().dim();
    out << "index,sign,block_level";
    if (dim == 2)
        out << ",sx,sy";
    else
        for (std::size_t i = 0; i < dim; ++i) out << ",s" << i + 1;
    out << ",psum_norm\n";
    for (std::size_t i = 0; i < trace.sums.size(); ++i) {
        out << i + 1 << "," << (signs[i] >= 0 ? "+1" : "-1") << "," << trace.levels[i];
        for (std::size_t d = 0; d < dim; ++d) out << "," << format_double(trace.sums[i][d]);
        out << "," << format_double(trace.norms[i]) << "\n";
    }
    return out.str();
}

// Block summary CSV: level,count,rounds,residual_norm,bound,ok. The
// prefix block appears with level -1 and no bound.
inline std::string block_summary_csv(const AssignmentReport& report) {
    std::ostringstream out;
    out << "level,count,rounds,residual_norm,bound,ok\n";
    if (report.prefix_count > 0)
        out << "-1," << report.prefix_count << ",,"
            << format_double(report.prefix_residual_norm) << ",,\n";
    for (const BlockCertificate& c : report.blocks)
        out << c.level << "," << c.count << "," << c.rounds << ","
            << format_double(c.residual_norm) << "," << format_double(c.bound) << ","
            << (c.ok ? "true" : "false") << "\n";
    return out.str();
}

// Reduction trace: one line per diff node.
inline std::string reduction_trace(const std::vector<BlockReduction>& reductions) {
    std::ostringstream out;
    for (const BlockReduction& red : reductions) {
        out << "block level=" << red.block_level << " terms=" << red.term_count
            << " residuals=" << red.residual_ids.size() << "\n";
        for (std::size_t id = 0; id < red.nodes.size(); ++id) {
            const ReductionNode& n = red.nodes[id];
            if (n.is_leaf()) continue;
            out << "round=" << n.round << " id=" << id << " left=" << n.left
                << " right=" << n.right << " value=";
            for (std::size_t d = 0; d < n.value.dim(); ++d)
                out << (d ? " " : "") << format_double(n.value[d]);
            out << "\n";
        }
    }
    return out.str();
}

} // namespace signbalance
