#include "diskdyn/config.hpp"

#include <fstream>

#include "diskdyn/errors.hpp"

namespace diskdyn {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& context) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown key \"" + item.key() + "\" in " + context);
        }
    }
}

double require_number(const json& j, const char* key, const std::string& context) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ConfigError(std::string("missing or non-numeric \"") + key + "\" in " + context);
    }
    return j[key].get<double>();
}

Point2 parse_point(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(context + " must be a [x, y] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

HamiltonianTerm term_from_json(const json& j);

std::vector<HamiltonianTerm> terms_from_json(const json& j, const std::string& context) {
    if (!j.is_array()) {
        throw ConfigError(context + ": \"terms\" must be an array");
    }
    std::vector<HamiltonianTerm> terms;
    for (const auto& t : j) terms.push_back(term_from_json(t));
    return terms;
}

HamiltonianTerm term_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw ConfigError("hamiltonian term must be an object with a \"type\"");
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "radial") {
        reject_unknown_keys(j, {"type", "coeffs", "amplitude"}, "radial term");
        RadialTerm term;
        if (j.contains("coeffs")) {
            if (!j["coeffs"].is_array() || j["coeffs"].empty()) {
                throw ConfigError("radial term: \"coeffs\" must be a non-empty array");
            }
            term.profile.clear();
            for (const auto& c : j["coeffs"]) {
                if (!c.is_number()) throw ConfigError("radial term: coefficients must be numbers");
                term.profile.push_back(c.get<double>());
            }
        }
        term.amplitude = j.contains("amplitude") ? require_number(j, "amplitude", "radial term") : 1.0;
        return term;
    }
    if (type == "perturbation") {
        reject_unknown_keys(j, {"type", "k", "tau", "amplitude"}, "perturbation term");
        PerturbationTerm term;
        term.harmonic = static_cast<int>(require_number(j, "k", "perturbation term"));
        if (term.harmonic < 1) throw ConfigError("perturbation term: k must be >= 1");
        if (j.contains("tau")) {
            const std::string tau = j["tau"].get<std::string>();
            if (tau == "const") term.tau = TimeProfile::constant;
            else if (tau == "cos") term.tau = TimeProfile::cosine;
            else if (tau == "sin") term.tau = TimeProfile::sine;
            else throw ConfigError("perturbation term: tau must be const|cos|sin");
        }
        term.amplitude = require_number(j, "amplitude", "perturbation term");
        return term;
    }
    if (type == "concat") {
        reject_unknown_keys(j, {"type", "first", "second"}, "concat term");
        if (!j.contains("first") || !j.contains("second")) {
            throw ConfigError("concat term needs \"first\" and \"second\" specs");
        }
        ConcatTerm term;
        term.first = std::make_shared<const HamiltonianSpec>(hamiltonian_from_json(j["first"]));
        term.second = std::make_shared<const HamiltonianSpec>(hamiltonian_from_json(j["second"]));
        return term;
    }
    if (type == "reversed") {
        reject_unknown_keys(j, {"type", "inner"}, "reversed term");
        if (!j.contains("inner")) throw ConfigError("reversed term needs an \"inner\" spec");
        ReversedTerm term;
        term.inner = std::make_shared<const HamiltonianSpec>(hamiltonian_from_json(j["inner"]));
        return term;
    }
    throw ConfigError("unknown hamiltonian term type \"" + type + "\"");
}

json term_to_json(const HamiltonianTerm& term) {
    json j;
    if (const auto* radial = std::get_if<RadialTerm>(&term)) {
        j["type"] = "radial";
        j["coeffs"] = radial->profile;
        j["amplitude"] = radial->amplitude;
    } else if (const auto* pert = std::get_if<PerturbationTerm>(&term)) {
        j["type"] = "perturbation";
        j["k"] = pert->harmonic;
        j["tau"] = pert->tau == TimeProfile::constant ? "const"
                   : pert->tau == TimeProfile::cosine ? "cos"
                                                      : "sin";
        j["amplitude"] = pert->amplitude;
    } else if (const auto* concat = std::get_if<ConcatTerm>(&term)) {
        j["type"] = "concat";
        j["first"] = hamiltonian_to_json(*concat->first);
        j["second"] = hamiltonian_to_json(*concat->second);
    } else if (const auto* reversed = std::get_if<ReversedTerm>(&term)) {
        j["type"] = "reversed";
        j["inner"] = hamiltonian_to_json(*reversed->inner);
    }
    return j;
}

} // namespace

HamiltonianSpec hamiltonian_from_json(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("\"hamiltonian\" must be an object");
    }
    reject_unknown_keys(j, {"terms"}, "hamiltonian");
    if (!j.contains("terms")) return HamiltonianSpec{};
    return HamiltonianSpec(terms_from_json(j["terms"], "hamiltonian"));
}

json hamiltonian_to_json(const HamiltonianSpec& spec) {
    json terms = json::array();
    for (const auto& term : spec.terms()) terms.push_back(term_to_json(term));
    return json{{"terms", terms}};
}

PrimitiveOneForm primitive_from_json(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("\"primitive\" must be an object");
    }
    reject_unknown_keys(j, {"base", "gauge"}, "primitive");
    PrimitiveOneForm form;
    if (j.contains("base")) {
        const std::string base = j["base"].get<std::string>();
        if (base == "radial") form.base = BaseForm::radial;
        else if (base == "vertical") form.base = BaseForm::vertical;
        else if (base == "horizontal") form.base = BaseForm::horizontal;
        else throw ConfigError("primitive base must be radial|vertical|horizontal");
    }
    if (j.contains("gauge")) {
        if (!j["gauge"].is_array()) {
            throw ConfigError("primitive gauge must be an array of [px, py, coeff] triples");
        }
        std::vector<GaugePolynomial::Monomial> monomials;
        for (const auto& m : j["gauge"]) {
            if (!m.is_array() || m.size() != 3) {
                throw ConfigError("gauge entries must be [px, py, coeff] triples");
            }
            GaugePolynomial::Monomial mono;
            mono.px = m[0].get<int>();
            mono.py = m[1].get<int>();
            mono.coeff = m[2].get<double>();
            if (mono.px < 0 || mono.py < 0 || mono.px + mono.py > 4) {
                throw ConfigError("gauge monomials must have total degree <= 4");
            }
            monomials.push_back(mono);
        }
        form.gauge = GaugePolynomial(std::move(monomials));
    }
    return form;
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("config root must be an object");
    }
    reject_unknown_keys(j,
                        {"hamiltonian", "primitive", "flow", "quadrature", "n", "x", "y", "e", "k",
                         "min_separation", "seed", "profile"},
                        "config");
    ExperimentConfig cfg;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("\"seed\" must be unsigned");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("hamiltonian")) {
        cfg.hamiltonian = hamiltonian_from_json(j["hamiltonian"]);
        cfg.hamiltonian_given = true;
    }
    if (j.contains("primitive")) cfg.primitive = primitive_from_json(j["primitive"]);
    if (j.contains("flow")) {
        reject_unknown_keys(j["flow"], {"steps_per_unit_time"}, "flow");
        if (j["flow"].contains("steps_per_unit_time")) {
            cfg.flow.steps_per_unit_time =
                static_cast<int>(require_number(j["flow"], "steps_per_unit_time", "flow"));
            if (cfg.flow.steps_per_unit_time < 16) {
                throw ConfigError("flow.steps_per_unit_time must be >= 16");
            }
        }
    }
    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        reject_unknown_keys(q, {"kind", "n_r", "n_theta", "n_samples", "seed"}, "quadrature");
        if (q.contains("kind")) {
            const std::string kind = q["kind"].get<std::string>();
            if (kind == "polar-grid") cfg.quadrature.kind = QuadratureKind::polar_grid;
            else if (kind == "monte-carlo") cfg.quadrature.kind = QuadratureKind::monte_carlo;
            else throw ConfigError("quadrature kind must be polar-grid|monte-carlo");
        }
        if (q.contains("n_r")) cfg.quadrature.n_r = static_cast<int>(require_number(q, "n_r", "quadrature"));
        if (q.contains("n_theta"))
            cfg.quadrature.n_theta = static_cast<int>(require_number(q, "n_theta", "quadrature"));
        if (q.contains("n_samples"))
            cfg.quadrature.n_samples = static_cast<int>(require_number(q, "n_samples", "quadrature"));
        if (cfg.quadrature.n_r < 1 || cfg.quadrature.n_theta < 1 || cfg.quadrature.n_samples < 1) {
            throw ConfigError("quadrature counts must be >= 1");
        }
        if (q.contains("seed")) {
            cfg.quadrature.seed = q["seed"].get<std::uint64_t>();
            cfg.quadrature_seed_given = true;
        }
    }
    if (!cfg.quadrature_seed_given) cfg.quadrature.seed = cfg.seed;
    if (j.contains("n")) {
        cfg.n = static_cast<int>(require_number(j, "n", "config"));
        if (cfg.n < 1) throw ConfigError("\"n\" must be >= 1");
    }
    if (j.contains("x")) cfg.x = parse_point(j["x"], "\"x\"");
    if (j.contains("y")) cfg.y = parse_point(j["y"], "\"y\"");
    if (j.contains("e")) cfg.e = parse_point(j["e"], "\"e\"");
    if (j.contains("k")) {
        cfg.k = static_cast<int>(require_number(j, "k", "config"));
        if (*cfg.k < 1) throw ConfigError("\"k\" must be >= 1");
    }
    if (j.contains("min_separation")) {
        cfg.min_separation = require_number(j, "min_separation", "config");
        if (cfg.min_separation < 0.0 || cfg.min_separation >= 1e-3) {
            throw ConfigError("min_separation must lie in [0, 1e-3)");
        }
    }
    if (j.contains("profile")) {
        const json& p = j["profile"];
        reject_unknown_keys(p, {"scale", "criteria"}, "profile");
        if (p.contains("scale")) {
            cfg.profile_scale = require_number(p, "scale", "profile");
            if (cfg.profile_scale <= 0.0 || cfg.profile_scale > 1.0) {
                throw ConfigError("profile.scale must lie in (0, 1]");
            }
        }
        if (p.contains("criteria")) {
            for (const auto& c : p["criteria"]) cfg.criteria.push_back(c.get<std::string>());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config is not valid JSON: ") + err.what());
    }
    return parse_config(j);
}

} // namespace diskdyn
