#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rslax/dynamics.hpp"
#include "rslax/lax.hpp"
#include "rslax/sampling.hpp"

namespace rslax::harness {

using json = nlohmann::json;

struct ExperimentConfig {
    std::string command;
    std::uint64_t seed = 42;
    json params = json::object();
    std::string output_dir = "rslax_out";
    double tol_scale = 1.0;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct RunReport {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    std::vector<std::string> outputs;

    bool all_pass() const;
};

// pass iff residual < tolerance * scale (strict, so a zero tolerance always fails)
CheckResult make_check(std::string name, double residual, double tolerance, double tol_scale, std::string detail = {});

// --- configuration --------------------------------------------------------

// reads and validates the top-level document; ConfigInvalid names the offending field
ExperimentConfig parse_config(const json& doc, const std::string& command);
ExperimentConfig load_config(const std::string& path, const std::string& command);

Complex parse_complex(const json& j, const std::string& field);
std::vector<Complex> parse_complex_list(const json& j, const std::string& field);
Lattice parse_lattice(const json& j, const std::string& field);
RSConfig parse_rs_config(const json& j, const std::string& field, Rng& rng);
CMConfig parse_cm_config(const json& j, const std::string& field, Rng& rng);
HamiltonianSpec parse_hamiltonian(const json& j, const std::string& field);

json complex_json(Complex z);
json complex_list_json(const std::vector<Complex>& v);
json matrix_json(const CMatrix& M);

// --- output ---------------------------------------------------------------

// "%.17g", stable across runs
std::string format_double(double x);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);
    std::string str() const { return buffer_; }

    static std::string quote(const std::string& cell);

private:
    std::string buffer_;
    std::size_t width_;
};

// write to a sibling temporary file and rename over the target
void write_atomic(const std::string& path, const std::string& content);

json report_json(const RunReport& report);

// --- checks and commands --------------------------------------------------

struct CheckDefinition {
    std::string name;
    std::function<CheckResult(Rng&, double tol_scale, const json& params)> run;
};

const std::vector<CheckDefinition>& verify_checks();

// worker count from RSLAX_THREADS, at least 1
unsigned thread_budget();

RunReport run_verify(const ExperimentConfig& cfg);
RunReport run_lax(const ExperimentConfig& cfg);
RunReport run_evolve(const ExperimentConfig& cfg);
RunReport run_limit(const ExperimentConfig& cfg);
RunReport run_reduce(const ExperimentConfig& cfg);

RunReport run_command(const ExperimentConfig& cfg);

} // namespace rslax::harness
