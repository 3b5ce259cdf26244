#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <set>
#include <thread>

#include "rslax/harness.hpp"
#include "rslax/limits.hpp"
#include "rslax/linalg.hpp"
#include "rslax/reductions.hpp"

namespace rslax::harness {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why)
{
    throw Error(ErrorKind::ConfigInvalid, field + ": " + why);
}

Rng command_rng(const ExperimentConfig& cfg) { return Rng(cfg.seed).substream(hash_tag(cfg.command.c_str())); }

std::string out_path(const ExperimentConfig& cfg, const std::string& name)
{
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

void emit(RunReport& report, const ExperimentConfig& cfg, const std::string& name, const std::string& content)
{
    write_atomic(out_path(cfg, name), content);
    report.outputs.push_back(name);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json number_or_null(double x)
{
    if (!std::isfinite(x)) return nullptr;
    return x;
}

double number_param(const json& params, const char* key, double fallback)
{
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    if (!it->is_number()) invalid(std::string("params.") + key, "expected a number");
    return it->get<double>();
}

std::vector<double> real_list(const json& params, const char* key, std::vector<double> fallback)
{
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    const std::string field = std::string("params.") + key;
    if (!it->is_array() || it->empty()) invalid(field, "expected a non-empty list of numbers");
    std::vector<double> out;
    for (const auto& v : *it) {
        if (!v.is_number()) invalid(field, "expected a non-empty list of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::string string_param(const json& params, const char* key, const std::string& fallback)
{
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    if (!it->is_string()) invalid(std::string("params.") + key, "expected a string");
    return it->get<std::string>();
}

const json& object_param(const json& params, const char* key)
{
    static const json empty = json::object();
    auto it = params.find(key);
    if (it == params.end()) return empty;
    return *it;
}

CheckResult error_row(const std::string& name, const std::exception& e)
{
    CheckResult r;
    r.name = name;
    r.pass = false;
    r.residual = std::numeric_limits<double>::quiet_NaN();
    r.tolerance = 0.0;
    r.detail = e.what();
    return r;
}

} // namespace

// ------------------------------------------------------------------ verify

RunReport run_verify(const ExperimentConfig& cfg)
{
    const auto& all = verify_checks();
    std::vector<const CheckDefinition*> scheduled;
    if (auto it = cfg.params.find("checks"); it != cfg.params.end()) {
        if (!it->is_array()) invalid("params.checks", "expected a list of check names");
        std::set<std::string> wanted;
        for (const auto& name : *it) {
            if (!name.is_string()) invalid("params.checks", "expected a list of check names");
            const auto s = name.get<std::string>();
            const bool known = std::any_of(all.begin(), all.end(), [&](const auto& c) { return c.name == s; });
            if (!known) invalid("params.checks", "unknown check '" + s + "'");
            wanted.insert(s);
        }
        for (const auto& c : all)
            if (wanted.count(c.name)) scheduled.push_back(&c);
    } else {
        for (const auto& c : all) scheduled.push_back(&c);
    }

    RunReport report;
    report.command = "verify";
    report.seed = cfg.seed;
    report.checks.resize(scheduled.size());
    const Rng base(cfg.seed);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < scheduled.size(); k = next++) {
            const auto& def = *scheduled[k];
            Rng rng = base.substream(hash_tag(def.name.c_str()));
            try {
                report.checks[k] = def.run(rng, cfg.tol_scale, cfg.params);
            } catch (const std::exception& e) {
                report.checks[k] = error_row(def.name, e);
            }
        }
    };
    const unsigned workers = std::min<unsigned>(thread_budget(), unsigned(std::max<std::size_t>(1, scheduled.size())));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    CsvWriter csv({"name", "status", "residual", "tolerance", "detail"});
    for (const auto& c : report.checks)
        csv.row({c.name, c.pass ? "pass" : "fail", format_double(c.residual), format_double(c.tolerance), c.detail});
    emit(report, cfg, "verify.csv", csv.str());
    return report;
}

// ------------------------------------------------------------------ lax

RunReport run_lax(const ExperimentConfig& cfg)
{
    Rng rng = command_rng(cfg);
    const RSConfig conf = parse_rs_config(object_param(cfg.params, "config"), "params.config", rng);
    std::vector<Complex> zs;
    if (auto it = cfg.params.find("z"); it != cfg.params.end())
        zs = it->is_array() && !it->empty() && !it->front().is_number() ? parse_complex_list(*it, "params.z")
                                                                         : std::vector<Complex>{parse_complex(*it, "params.z")};
    else
        zs = {random_spectral_point(rng, conf.lat)};

    std::vector<std::string> builders{"hasegawa", "composition"};
    if (auto it = cfg.params.find("builders"); it != cfg.params.end()) {
        if (!it->is_array() || it->empty()) invalid("params.builders", "expected a non-empty list");
        builders.clear();
        for (const auto& b : *it) {
            const std::string name = b.is_string() ? b.get<std::string>() : std::string();
            if (name != "hasegawa" && name != "composition" && name != "ruijsenaars" && name != "spin")
                invalid("params.builders", "expected hasegawa, composition, ruijsenaars or spin");
            builders.push_back(name);
        }
    }

    RunReport report;
    report.command = "lax";
    report.seed = cfg.seed;

    CsvWriter csv({"builder", "z_re", "z_im", "row", "col", "re", "im"});
    json matrices = json::array();
    double geometric = 0.0;
    bool have_pair = false;
    for (Complex z : zs) {
        std::optional<CMatrix> h, c;
        for (const auto& name : builders) {
            CMatrix L;
            try {
                if (name == "hasegawa")
                    h = L = hasegawa_lax(conf, z).entries;
                else if (name == "composition")
                    c = L = composition_lax(conf, z).entries;
                else if (name == "ruijsenaars")
                    L = ruijsenaars_lax(conf, {}, z + conf.mu).L.entries;
                else
                    L = spin_lax(conf, SpinFraming::unit(conf.n()), z).entries;
            } catch (const Error& e) {
                report.checks.push_back(error_row("lax.build." + name, e));
                continue;
            }
            for (Eigen::Index i = 0; i < L.rows(); ++i)
                for (Eigen::Index j = 0; j < L.cols(); ++j)
                    csv.row({name, format_double(z.real()), format_double(z.imag()), std::to_string(i),
                             std::to_string(j), format_double(L(i, j).real()), format_double(L(i, j).imag())});
            matrices.push_back(json{{"builder", name},
                                    {"z", complex_json(z)},
                                    {"entries", matrix_json(L)},
                                    {"eigenvalues", complex_list_json(sorted_values(eigenvalues(L)))}});
        }
        if (h && c) {
            have_pair = true;
            geometric = std::max(geometric, relative_max_error(*c, *h));
        }
    }
    if (have_pair) report.checks.push_back(make_check("lax.geometric_equality", geometric, 1e-7, cfg.tol_scale));
    report.checks.push_back(make_check("lax.framing_constraint", framing_constraint_check(conf), 1e-10, cfg.tol_scale));

    emit(report, cfg, "lax.csv", csv.str());
    emit(report, cfg, "lax.json",
         dump(json{{"n", conf.n()},
                   {"lattice", json{{"kind", to_string(conf.lat.kind)}, {"omega1", complex_json(conf.lat.omega1)},
                                    {"omega2", complex_json(conf.lat.omega2)}}},
                   {"q", complex_list_json(conf.q)},
                   {"P", complex_list_json(conf.P)},
                   {"hbar", complex_json(conf.hbar)},
                   {"q_inf", complex_json(conf.q_inf)},
                   {"matrices", matrices}}));
    return report;
}

// ------------------------------------------------------------------ evolve

RunReport run_evolve(const ExperimentConfig& cfg)
{
    const double t_end = number_param(cfg.params, "t_end", 1.0);
    const double dt = number_param(cfg.params, "dt", 1e-3);
    if (!(dt > 0.0)) invalid("params.dt", "must be positive");
    if (!(t_end > 0.0)) invalid("params.t_end", "must be positive");
    if (t_end / dt > 1e7) invalid("params.dt", "too many steps");
    Rng rng = command_rng(cfg);
    const RSConfig conf = parse_rs_config(object_param(cfg.params, "config"), "params.config", rng);
    HamiltonianSpec spec = parse_hamiltonian(cfg.params.contains("hamiltonian") ? cfg.params["hamiltonian"] : json(),
                                             "params.hamiltonian");
    if (!cfg.params.contains("hamiltonian") || !cfg.params["hamiltonian"].contains("eval_z"))
        spec.eval_z = random_spectral_point(rng, conf.lat);
    const std::string coords = string_param(cfg.params, "coordinates", "canonical");
    if (coords != "canonical" && coords != "theta") invalid("params.coordinates", "expected canonical or theta");

    const Trajectory tr = coords == "canonical" ? integrate(spec, phase_point(conf), conf, t_end, dt)
                                                : integrate_theta_coordinates(spec, phase_point(conf), conf, t_end, dt);

    RunReport report;
    report.command = "evolve";
    report.seed = cfg.seed;

    const std::size_t n = conf.n();
    std::vector<std::string> header{"t"};
    for (std::size_t i = 1; i <= n; ++i) {
        header.push_back("re_q" + std::to_string(i));
        header.push_back("im_q" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= n; ++i) {
        header.push_back("re_p" + std::to_string(i));
        header.push_back("im_p" + std::to_string(i));
    }
    header.push_back("spectral_drift");
    header.push_back("energy_drift");
    CsvWriter csv(header);
    for (std::size_t k = 0; k < tr.points.size(); ++k) {
        std::vector<std::string> row{format_double(tr.times[k])};
        for (Complex x : tr.points[k].q) {
            row.push_back(format_double(x.real()));
            row.push_back(format_double(x.imag()));
        }
        for (Complex x : tr.points[k].p) {
            row.push_back(format_double(x.real()));
            row.push_back(format_double(x.imag()));
        }
        row.push_back(format_double(k < tr.spectral_drift.size() ? tr.spectral_drift[k] : 0.0));
        row.push_back(format_double(k < tr.energy_drift.size() ? tr.energy_drift[k] : 0.0));
        csv.row(row);
    }

    report.checks.push_back(make_check("evolve.completed", tr.aborted ? 1.0 : 0.0, 0.5, 1.0,
                                       tr.aborted ? tr.abort_reason : "reached t_end"));
    report.checks.push_back(
        make_check("evolve.spectral_drift", tr.max_spectral_drift(), number_param(cfg.params, "spectral_tol", 1e-6), cfg.tol_scale));
    report.checks.push_back(
        make_check("evolve.energy_drift", tr.max_energy_drift(), number_param(cfg.params, "energy_tol", 1e-8), cfg.tol_scale));

    emit(report, cfg, "trajectory.csv", csv.str());
    const PhasePoint& last = tr.points.back();
    emit(report, cfg, "evolve.json",
         dump(json{{"n", n},
                   {"hamiltonian", json{{"family", to_string(spec.family)},
                                        {"i", spec.i},
                                        {"lax", to_string(spec.lax)},
                                        {"eval_z", complex_json(spec.eval_z)}}},
                   {"coordinates", coords},
                   {"t_end", t_end},
                   {"dt", dt},
                   {"steps", tr.points.size() - 1},
                   {"aborted", tr.aborted},
                   {"abort_reason", tr.abort_reason},
                   {"max_spectral_drift", number_or_null(tr.max_spectral_drift())},
                   {"max_energy_drift", number_or_null(tr.max_energy_drift())},
                   {"final", json{{"t", tr.times.back()}, {"q", complex_list_json(last.q)}, {"p", complex_list_json(last.p)}}}}));
    return report;
}

// ------------------------------------------------------------------ limit

RunReport run_limit(const ExperimentConfig& cfg)
{
    Rng rng = command_rng(cfg);
    const std::string kind = string_param(cfg.params, "kind", "cm");
    if (kind != "cm" && kind != "degeneration") invalid("params.kind", "expected cm or degeneration");
    const bool cm = kind == "cm";

    json conf_json = object_param(cfg.params, "config");
    if (conf_json.is_object() && !conf_json.contains("q") && !conf_json.contains("random"))
        conf_json["random"] = json{{"n", 2}};
    if (conf_json.is_object() && !conf_json.contains("lattice"))
        conf_json["lattice"] = json{{"kind", "elliptic"}, {"tau", {0.0, 1.0}}};
    const RSConfig conf = parse_rs_config(conf_json, "params.config", rng);
    if (!conf.lat.is_elliptic()) invalid("params.config.lattice", "limit sweeps start from an elliptic lattice");

    const std::vector<double> values =
        real_list(cfg.params, "values", cm ? std::vector<double>{1e-2, 5e-3, 2.5e-3} : std::vector<double>{5, 10, 20});
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            invalid("params.values", cm ? "hbar values must be positive (hbar = 0 cannot be divided out)"
                                        : "Im tau values must be positive");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] == values[i - 1]) invalid("params.values", "values must be distinct");
    const Complex z = cfg.params.contains("z") ? parse_complex(cfg.params["z"], "params.z") : Complex(0.3, 0.2);

    LimitSweep sweep;
    try {
        if (cm) {
            CMConfig cmconf;
            cmconf.lat = conf.lat;
            cmconf.q = conf.q;
            cmconf.g = 1.0;
            if (cfg.params.contains("p")) {
                cmconf.p = parse_complex_list(cfg.params["p"], "params.p");
                if (cmconf.p.size() != conf.n()) invalid("params.p", "length must match the positions");
            } else {
                cmconf.p.resize(conf.n());
                for (auto& p : cmconf.p) p = rng.complex_normal(0.5);
            }
            sweep = cm_limit_sweep(conf, cmconf, values, z);
        } else {
            sweep = degeneration_sweep(conf, values, z);
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigInvalid) throw;
        invalid("params.values", e.what());
    }

    RunReport report;
    report.command = "limit";
    report.seed = cfg.seed;

    CsvWriter csv({to_string(sweep.parameter), "residual"});
    json errors = json::array();
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
        csv.row({format_double(sweep.values[i]), format_double(sweep.errors[i])});
        errors.push_back(number_or_null(sweep.errors[i]));
    }

    std::size_t unaccounted = sweep.values.size() == sweep.errors.size() ? 0 : 1;
    std::size_t nan = 0;
    for (double e : sweep.errors) nan += std::isfinite(e) ? 0 : 1;
    if (nan != sweep.failures.size()) ++unaccounted;
    report.checks.push_back(make_check("limit.points_recorded", double(unaccounted), 0.5, 1.0,
                                       std::to_string(sweep.failures.size()) + " failed points"));

    const bool order_applicable = std::isfinite(sweep.fitted_order);
    if (cm) {
        if (order_applicable)
            report.checks.push_back(make_check("limit.cm_order", std::abs(sweep.fitted_order - 1.0),
                                               number_param(cfg.params, "order_tol", 0.15), cfg.tol_scale,
                                               "fitted order " + format_double(sweep.fitted_order)));
        if (nan) report.checks.push_back(make_check("limit.cm_points_finite", double(nan), 0.5, 1.0));
    } else {
        std::vector<double> tail;
        for (std::size_t i = 0; i < sweep.values.size(); ++i)
            if (sweep.values[i] >= 5.0) tail.push_back(sweep.errors[i]);
        const bool increasing = sweep.values.size() < 2 || sweep.values.back() > sweep.values.front();
        if (!increasing) std::reverse(tail.begin(), tail.end());
        const double floor = 64.0 * std::numeric_limits<double>::epsilon();
        report.checks.push_back(make_check("limit.degeneration_monotone", monotone_decreasing(tail, floor) ? 0.0 : 1.0,
                                           0.5, 1.0, "points with Im tau >= 5"));
        for (std::size_t i = 0; i < sweep.values.size(); ++i)
            if (sweep.values[i] >= 20.0)
                report.checks.push_back(make_check("limit.degeneration_at_" + format_double(sweep.values[i]),
                                                   sweep.errors[i], 1e-8, cfg.tol_scale));
    }

    emit(report, cfg, "limit.csv", csv.str());
    emit(report, cfg, "limit.json",
         dump(json{{"kind", kind},
                   {"parameter", to_string(sweep.parameter)},
                   {"z", complex_json(z)},
                   {"values", sweep.values},
                   {"errors", errors},
                   {"fitted_order", order_applicable ? json(sweep.fitted_order) : json("not_applicable")},
                   {"failures", sweep.failures}}));
    return report;
}

// ------------------------------------------------------------------ reduce

namespace {

CVector to_vector(const std::vector<Complex>& v)
{
    CVector out(Eigen::Index(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(Eigen::Index(i)) = v[i];
    return out;
}

std::vector<Complex> list_or_random(const json& params, const char* key, std::size_t n, Rng& rng,
                                    const std::function<Complex(Rng&, std::size_t)>& draw)
{
    if (params.contains(key)) {
        auto v = parse_complex_list(params[key], std::string("params.") + key);
        if (v.size() != n) invalid(std::string("params.") + key, "length must be " + std::to_string(n));
        return v;
    }
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = draw(rng, i);
    return v;
}

void matrix_rows(CsvWriter& csv, const std::string& name, const CMatrix& M)
{
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            csv.row({name, std::to_string(i), std::to_string(j), format_double(M(i, j).real()),
                     format_double(M(i, j).imag())});
}

} // namespace

RunReport run_reduce(const ExperimentConfig& cfg)
{
    Rng rng = command_rng(cfg);
    const std::string kind = string_param(cfg.params, "kind", "rational_cm");
    const bool rational_cm = kind == "rational_cm", rational_rs = kind == "rational_rs", trig_cm = kind == "trig_cm",
               trig_rs = kind == "trig_rs";
    if (!rational_cm && !rational_rs && !trig_cm && !trig_rs)
        invalid("params.kind", "expected rational_cm, rational_rs, trig_cm or trig_rs");

    const char* pos_key = (rational_rs || trig_rs) ? "theta" : "q";
    std::size_t n = 3;
    if (cfg.params.contains(pos_key)) {
        if (!cfg.params[pos_key].is_array() || cfg.params[pos_key].empty())
            invalid(std::string("params.") + pos_key, "expected a non-empty list");
        n = cfg.params[pos_key].size();
    } else if (cfg.params.contains("n")) {
        const auto& nj = cfg.params["n"];
        if (!nj.is_number_integer() || nj.get<long>() < 1 || nj.get<long>() > 6)
            invalid("params.n", "expected an integer between 1 and 6");
        n = std::size_t(nj.get<long>());
    }

    OrbitSpec orbit;
    if (cfg.params.contains("g")) orbit.g = parse_complex(cfg.params["g"], "params.g");
    const auto positions_in = list_or_random(cfg.params, pos_key, n, rng, [](Rng& r, std::size_t i) {
        return Complex(0.6 * double(i) + r.uniform(-0.15, 0.15), r.uniform(-0.4, 0.4));
    });
    auto free_draw = [](Rng& r, std::size_t) { return Complex(r.uniform(0.5, 1.5), r.uniform(-0.5, 0.5)); };

    RunReport report;
    report.command = "reduce";
    report.seed = cfg.seed;

    ReductionPair pair;
    CMatrix target;
    json extra = json::object();
    try {
        if (rational_cm) {
            const auto p = list_or_random(cfg.params, "p", n, rng, [](Rng& r, std::size_t) { return r.complex_normal(0.5); });
            pair = solve_rational_cm(positions_in, p, orbit);
            target = orbit.O(Eigen::Index(n));
            CMConfig cm{positions_in, p, orbit.g, Lattice::rational()};
            report.checks.push_back(make_check("reduce.cm_lax_match", max_abs(pair.Y - cm_lax(cm, std::nullopt).entries),
                                               1e-300, cfg.tol_scale, "exact entrywise equality"));
        } else if (rational_rs) {
            pair = solve_rational_rs(positions_in, orbit, list_or_random(cfg.params, "diag_free", n, rng, free_draw));
            target = orbit.O(Eigen::Index(n));
        } else if (trig_cm) {
            const auto sol = solve_trig_cm(positions_in, orbit, list_or_random(cfg.params, "gauge", n, rng, free_draw));
            pair = sol.pair;
            target = sol.moment;
            report.checks.push_back(
                make_check("reduce.orbit_distance", orbit_O_distance(sol.moment, orbit.g), 1e-10, cfg.tol_scale));
        } else {
            orbit.u = to_vector(list_or_random(cfg.params, "u", n, rng, [](Rng& r, std::size_t) { return r.complex_normal(0.5); }));
            orbit.t = cfg.params.contains("t") ? parse_complex(cfg.params["t"], "params.t") : Complex(0.6, 0.1);
            orbit.v = cfg.params.contains("v") ? to_vector(parse_complex_list(cfg.params["v"], "params.v"))
                                               : trig_rs_consistent_v(positions_in, orbit.u, orbit.t);
            if (orbit.v.size() != Eigen::Index(n)) invalid("params.v", "length must be " + std::to_string(n));
            pair = solve_trig_rs(positions_in, orbit, list_or_random(cfg.params, "diag_free", n, rng, free_draw));
            target = orbit.O_prime();
            report.checks.push_back(make_check("reduce.determinant",
                                               std::abs(determinant(moment_map(pair)) - orbit.det_O_prime()) /
                                                   std::abs(orbit.det_O_prime()),
                                               1e-10, cfg.tol_scale, "det = t^(n-1) (t + v^T u)"));
            extra["u"] = complex_list_json(std::vector<Complex>(orbit.u.data(), orbit.u.data() + n));
            extra["v"] = complex_list_json(std::vector<Complex>(orbit.v.data(), orbit.v.data() + n));
            extra["t"] = complex_json(orbit.t);
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigInvalid) throw;
        report.checks.push_back(error_row("reduce.solve", e));
        emit(report, cfg, "reduce.json", dump(json{{"kind", kind}, {"error", e.what()}}));
        return report;
    }

    report.checks.insert(report.checks.begin(),
                         make_check("reduce.moment_residual", moment_residual(pair, target), 1e-10, cfg.tol_scale));

    CsvWriter csv({"matrix", "row", "col", "re", "im"});
    matrix_rows(csv, "X", pair.X);
    matrix_rows(csv, "Y", pair.Y);
    matrix_rows(csv, "moment", moment_map(pair));
    json summary{{"kind", kind},
                 {"g", complex_json(orbit.g)},
                 {"X", matrix_json(pair.X)},
                 {"Y", matrix_json(pair.Y)},
                 {"moment", matrix_json(moment_map(pair))},
                 {"positions", complex_list_json(positions(pair))}};
    for (auto& [k, v] : extra.items()) summary[k] = v;
    try {
        const auto dual = dualize(pair);
        const auto back = dualize(dual);
        matrix_rows(csv, "dual_X", dual.X);
        matrix_rows(csv, "dual_Y", dual.Y);
        summary["dual"] = json{{"kind", to_string(dual.kind)},
                               {"X", matrix_json(dual.X)},
                               {"Y", matrix_json(dual.Y)},
                               {"positions", complex_list_json(positions(dual))}};
        report.checks.push_back(make_check("reduce.dualize_involution",
                                           multiset_distance(positions(pair), positions(back)), 1e-8, cfg.tol_scale));
    } catch (const Error& e) {
        report.checks.push_back(error_row("reduce.dualize_involution", e));
    }
    emit(report, cfg, "reduce.csv", csv.str());
    emit(report, cfg, "reduce.json", dump(summary));
    return report;
}

RunReport run_command(const ExperimentConfig& cfg)
{
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "lax") return run_lax(cfg);
    if (cfg.command == "evolve") return run_evolve(cfg);
    if (cfg.command == "limit") return run_limit(cfg);
    if (cfg.command == "reduce") return run_reduce(cfg);
    throw Error(ErrorKind::ConfigInvalid, "command: unknown command '" + cfg.command + "'");
}

} // namespace rslax::harness
