#include "inoz/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace inoz {

namespace {

std::string num(double v)
{
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
            continue;
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

void ResidualAccumulator::add(double abs_residual, double rel_residual, const std::vector<cplx>& point)
{
    ++count_;
    if (abs_residual > max_abs_ || std::isnan(abs_residual)) max_abs_ = abs_residual;
    if (rel_residual > max_rel_ || std::isnan(rel_residual)) {
        max_rel_ = rel_residual;
        worst_ = point;
    }
}

ResidualReport ResidualAccumulator::finish(std::string check, std::string lattice, std::uint64_t digest,
                                           double tol) const
{
    ResidualReport r;
    r.check = std::move(check);
    r.lattice = std::move(lattice);
    r.params_digest = digest;
    r.n_points = count_;
    r.max_abs = max_abs_;
    r.max_rel = count_ == 0 ? 0.0 : max_rel_;
    r.worst_point = worst_;
    r.tol_used = tol;
    r.pass = count_ > 0 && r.max_rel < tol;
    return r;
}

std::uint64_t fnv1a(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_json_line(const ResidualReport& r)
{
    std::ostringstream s;
    char digest[24];
    std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(r.params_digest));
    s << "{\"check\":" << quoted(r.check) << ",\"params_digest\":\"" << digest << "\""
      << ",\"n_points\":" << r.n_points << ",\"max_abs\":" << num(r.max_abs) << ",\"max_rel\":" << num(r.max_rel)
      << ",\"worst_point\":[";
    for (std::size_t i = 0; i < r.worst_point.size(); ++i) {
        if (i) s << ',';
        s << '[' << num(r.worst_point[i].real()) << ',' << num(r.worst_point[i].imag()) << ']';
    }
    s << "],\"pass\":" << (r.pass ? "true" : "false") << ",\"wall_ms\":" << num(r.wall_ms) << '}';
    return s.str();
}

std::string to_text_line(const ResidualReport& r)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-4s %-28s n=%-5zu max_rel=%.3e max_abs=%.3e tol=%.1e", r.pass ? "PASS" : "FAIL",
                  r.check.c_str(), r.n_points, r.max_rel, r.max_abs, r.tol_used);
    return buf;
}

} // namespace inoz
