#include <fstream>
#include <sstream>

#include "rslax/harness.hpp"

namespace rslax::harness {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why)
{
    throw Error(ErrorKind::ConfigInvalid, field + ": " + why);
}

double number(const json& j, const std::string& field)
{
    if (!j.is_number()) invalid(field, "expected a number");
    return j.get<double>();
}

const json* find(const json& obj, const char* key)
{
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::string sub(const std::string& field, const std::string& key) { return field + "." + key; }

} // namespace

Complex parse_complex(const json& j, const std::string& field)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array()) {
        if (j.size() != 2) invalid(field, "complex arrays hold [re, im]");
        return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
    }
    if (j.is_object()) {
        const json* re = find(j, "re");
        const json* im = find(j, "im");
        if (!re || !im) invalid(field, "complex objects need \"re\" and \"im\"");
        return {number(*re, sub(field, "re")), number(*im, sub(field, "im"))};
    }
    invalid(field, "expected a complex number");
}

std::vector<Complex> parse_complex_list(const json& j, const std::string& field)
{
    if (!j.is_array()) invalid(field, "expected a list");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

Lattice parse_lattice(const json& j, const std::string& field)
{
    if (!j.is_object()) invalid(field, "expected an object");
    const std::string kind = j.value("kind", std::string("elliptic"));
    try {
        if (kind == "trigonometric") return Lattice::trigonometric();
        if (kind == "rational") return Lattice::rational();
        if (kind != "elliptic") invalid(sub(field, "kind"), "expected elliptic, trigonometric or rational");
        if (const json* w = find(j, "periods")) {
            const auto p = parse_complex_list(*w, sub(field, "periods"));
            if (p.size() != 2) invalid(sub(field, "periods"), "expected two periods");
            return Lattice::from_periods(p[0], p[1]);
        }
        const Complex tau = find(j, "tau") ? parse_complex(j["tau"], sub(field, "tau")) : Complex(0.0, 1.0);
        const Complex omega1 = find(j, "omega1") ? parse_complex(j["omega1"], sub(field, "omega1")) : Complex(1.0);
        if (!(tau.imag() > 0.0)) invalid(sub(field, "tau"), "Im(tau) must be positive");
        return Lattice::elliptic(tau, omega1);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigInvalid) throw;
        invalid(field, e.what());
    }
}

namespace {

std::size_t random_size(const json& r, const std::string& field)
{
    if (!r.is_object()) invalid(field, "expected an object");
    const json* n = find(r, "n");
    if (!n || !n->is_number_integer() || n->get<long>() < 1 || n->get<long>() > 6)
        invalid(sub(field, "n"), "expected an integer between 1 and 6");
    return std::size_t(n->get<long>());
}

} // namespace

RSConfig parse_rs_config(const json& j, const std::string& field, Rng& rng)
{
    if (!j.is_object()) invalid(field, "expected an object");
    const Lattice lat = find(j, "lattice") ? parse_lattice(j["lattice"], sub(field, "lattice"))
                                           : Lattice::elliptic(Complex(0.0, 1.0));
    RSConfig conf;
    if (const json* r = find(j, "random")) {
        const std::size_t n = random_size(*r, sub(field, "random"));
        const std::string style = r->value("style", std::string("generic"));
        if (style == "flow")
            conf = random_flow_config(rng, n, lat);
        else if (style == "generic")
            conf = random_rs_config(rng, n, lat);
        else
            invalid(sub(field, "random.style"), "expected generic or flow");
    } else {
        const json* q = find(j, "q");
        if (!q) invalid(sub(field, "q"), "positions are required unless \"random\" is given");
        auto qs = parse_complex_list(*q, sub(field, "q"));
        if (qs.empty()) invalid(sub(field, "q"), "at least one position is required");
        std::vector<Complex> P(qs.size(), 0.0);
        if (const json* p = find(j, "P")) P = parse_complex_list(*p, sub(field, "P"));
        if (P.size() != qs.size()) invalid(sub(field, "P"), "length must match q");
        const json* h = find(j, "hbar");
        if (!h) invalid(sub(field, "hbar"), "coupling is required");
        const Complex hbar = parse_complex(*h, sub(field, "hbar"));
        const Complex q_inf = find(j, "q_inf") ? parse_complex(j["q_inf"], sub(field, "q_inf")) : Complex(0.0);
        conf = RSConfig::make(std::move(qs), std::move(P), hbar, lat, q_inf);
    }
    if (const json* m = find(j, "mu")) conf.mu = parse_complex(*m, sub(field, "mu"));
    if (const json* z = find(j, "q_zero")) conf.q_zero = parse_complex(*z, sub(field, "q_zero"));
    try {
        conf.validate();
    } catch (const Error& e) {
        invalid(field, e.what());
    }
    return conf;
}

CMConfig parse_cm_config(const json& j, const std::string& field, Rng& rng)
{
    if (!j.is_object()) invalid(field, "expected an object");
    const Lattice lat = find(j, "lattice") ? parse_lattice(j["lattice"], sub(field, "lattice")) : Lattice::rational();
    CMConfig conf;
    if (const json* r = find(j, "random")) {
        conf = random_cm_config(rng, random_size(*r, sub(field, "random")), lat);
    } else {
        const json* q = find(j, "q");
        if (!q) invalid(sub(field, "q"), "positions are required unless \"random\" is given");
        conf.lat = lat;
        conf.q = parse_complex_list(*q, sub(field, "q"));
        conf.p.assign(conf.q.size(), 0.0);
        if (const json* p = find(j, "p")) conf.p = parse_complex_list(*p, sub(field, "p"));
        if (conf.p.size() != conf.q.size()) invalid(sub(field, "p"), "length must match q");
        conf.g = find(j, "g") ? parse_complex(j["g"], sub(field, "g")) : Complex(1.0);
    }
    if (const json* g = find(j, "g")) conf.g = parse_complex(*g, sub(field, "g"));
    try {
        conf.validate();
    } catch (const Error& e) {
        invalid(field, e.what());
    }
    return conf;
}

HamiltonianSpec parse_hamiltonian(const json& j, const std::string& field)
{
    HamiltonianSpec spec;
    if (j.is_null()) return spec;
    if (!j.is_object()) invalid(field, "expected an object");
    const std::string family = j.value("family", std::string("trace_power"));
    if (family == "trace_power")
        spec.family = HamiltonianFamily::TracePower;
    else if (family == "rs_cosh")
        spec.family = HamiltonianFamily::RSCosh;
    else if (family == "hitchin")
        spec.family = HamiltonianFamily::HitchinComponent;
    else
        invalid(sub(field, "family"), "expected trace_power, rs_cosh or hitchin");
    if (const json* i = find(j, "i")) {
        if (!i->is_number_integer() || i->get<long>() < 1) invalid(sub(field, "i"), "expected an integer >= 1");
        spec.i = int(i->get<long>());
    }
    const std::string lax = j.value("lax", std::string("hasegawa"));
    if (lax == "hasegawa")
        spec.lax = LaxFamily::Hasegawa;
    else if (lax == "composition")
        spec.lax = LaxFamily::Composition;
    else
        invalid(sub(field, "lax"), "expected hasegawa or composition");
    if (const json* z = find(j, "eval_z")) spec.eval_z = parse_complex(*z, sub(field, "eval_z"));
    return spec;
}

ExperimentConfig parse_config(const json& doc, const std::string& command)
{
    if (!doc.is_object()) invalid("<root>", "expected a JSON object");
    const json* version = find(doc, "schema_version");
    if (!version) invalid("schema_version", "missing; expected 1");
    if (!version->is_number_integer() || version->get<long>() != 1) invalid("schema_version", "expected 1");

    ExperimentConfig cfg;
    cfg.command = command;
    if (const json* c = find(doc, "command")) {
        if (!c->is_string()) invalid("command", "expected a string");
        if (c->get<std::string>() != command)
            invalid("command", "config is for '" + c->get<std::string>() + "' but '" + command + "' was requested");
    }
    if (const json* s = find(doc, "seed")) {
        if (!s->is_number_integer() || (!s->is_number_unsigned() && s->get<std::int64_t>() < 0))
            invalid("seed", "expected a non-negative integer");
        cfg.seed = s->get<std::uint64_t>();
    }
    if (const json* o = find(doc, "output_dir")) {
        if (!o->is_string()) invalid("output_dir", "expected a string");
        cfg.output_dir = o->get<std::string>();
    }
    if (const json* t = find(doc, "tol_scale")) {
        const double x = number(*t, "tol_scale");
        if (!(x >= 0.0)) invalid("tol_scale", "expected a non-negative number");
        cfg.tol_scale = x;
    }
    if (const json* p = find(doc, "params")) {
        if (!p->is_object()) invalid("params", "expected an object");
        cfg.params = *p;
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path, const std::string& command)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigInvalid, "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    json doc;
    try {
        doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ConfigInvalid, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc, command);
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json complex_list_json(const std::vector<Complex>& v)
{
    json out = json::array();
    for (Complex z : v) out.push_back(complex_json(z));
    return out;
}

json matrix_json(const CMatrix& M)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(complex_json(M(i, j)));
        out.push_back(row);
    }
    return out;
}

} // namespace rslax::harness
