#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include "rslax/harness.hpp"

namespace rslax::harness {

bool RunReport::all_pass() const
{
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

CheckResult make_check(std::string name, double residual, double tolerance, double tol_scale, std::string detail)
{
    CheckResult r;
    r.name = std::move(name);
    r.residual = residual;
    r.tolerance = tolerance * tol_scale;
    r.pass = std::isfinite(residual) && residual < r.tolerance;
    r.detail = std::move(detail);
    return r;
}

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size())
{
    row(header);
}

std::string CsvWriter::quote(const std::string& cell)
{
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    if (cells.size() != width_) throw Error(ErrorKind::InvalidArgument, "CSV row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += quote(cells[i]);
    }
    buffer_ += "\r\n";
}

void write_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error(ErrorKind::InvalidArgument, "short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

json number_or_null(double x)
{
    if (!std::isfinite(x)) return nullptr;
    return x;
}

} // namespace

json report_json(const RunReport& report)
{
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back(json{{"name", c.name},
                              {"status", c.pass ? "pass" : "fail"},
                              {"residual", number_or_null(c.residual)},
                              {"tolerance", number_or_null(c.tolerance)},
                              {"detail", c.detail}});
    }
    return json{{"schema_version", 1},
                {"command", report.command},
                {"seed", report.seed},
                {"all_pass", report.all_pass()},
                {"checks", checks},
                {"outputs", report.outputs}};
}

unsigned thread_budget()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RSLAX_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return unsigned(std::min<long>(v, long(hw)));
    }
    return hw;
}

} // namespace rslax::harness
