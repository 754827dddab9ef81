#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "deltasolve/errors.hpp"

namespace deltasolve::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ConfigError(path + ": " + msg); }

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) fail(path.empty() ? key : path + "." + key, "missing required field");
    return obj.at(key);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
}

double positive(const json& v, const std::string& path) {
    const double x = number(v, path);
    if (!(x > 0.0)) fail(path, "must be positive");
    return x;
}

int positive_int(const json& v, const std::string& path, int minimum = 1) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    const auto x = v.get<long long>();
    if (x < minimum || x > 1000000) fail(path, "must be an integer >= " + std::to_string(minimum));
    return static_cast<int>(x);
}

bool boolean(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
}

Vec3 point(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) fail(path, "expected [x, y, z]");
    return {number(v[0], index(path, 0)), number(v[1], index(path, 1)), number(v[2], index(path, 2))};
}

const json& array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
}

const json& object(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    return v;
}

cplx amplitude(const json& term, const std::string& path) {
    const double re = term.contains("amp_re") ? number(term["amp_re"], join(path, "amp_re")) : 0.0;
    const double im = term.contains("amp_im") ? number(term["amp_im"], join(path, "amp_im")) : 0.0;
    if (!term.contains("amp_re") && !term.contains("amp_im")) fail(join(path, "amp_re"), "missing required field");
    return {re, im};
}

InteractionConfig parse_interaction(const json& doc) {
    const std::string path = "interaction";
    const json& obj = object(require(doc, "interaction", ""), path);
    check_keys(obj, path, {"centers", "alphas"});
    const json& cs = array(require(obj, "centers", path), join(path, "centers"));
    const json& as = array(require(obj, "alphas", path), join(path, "alphas"));
    if (cs.empty()) fail(join(path, "centers"), "needs at least one center");
    if (cs.size() != as.size()) fail(join(path, "alphas"), "needs one strength per center");
    std::vector<Vec3> centers;
    std::vector<double> alphas;
    for (std::size_t i = 0; i < cs.size(); ++i) centers.push_back(point(cs[i], index(join(path, "centers"), i)));
    for (std::size_t i = 0; i < as.size(); ++i) alphas.push_back(number(as[i], index(join(path, "alphas"), i)));
    try {
        return InteractionConfig(centers, alphas);
    } catch (const InvalidConfig& e) {
        fail(join(path, "centers"), e.what());
    }
}

InitialData parse_data(const json& doc) {
    const std::string path = "initial_data";
    const json& obj = object(require(doc, "initial_data", ""), path);
    check_keys(obj, path, {"gaussians", "yukawas"});
    InitialData f;
    if (obj.contains("gaussians")) {
        const std::string gp = join(path, "gaussians");
        const json& gs = array(obj["gaussians"], gp);
        for (std::size_t i = 0; i < gs.size(); ++i) {
            const std::string p = index(gp, i);
            const json& g = object(gs[i], p);
            check_keys(g, p, {"amp_re", "amp_im", "center", "sigma"});
            f.add(GaussianTerm{amplitude(g, p), point(require(g, "center", p), join(p, "center")),
                               positive(require(g, "sigma", p), join(p, "sigma"))});
        }
    }
    if (obj.contains("yukawas")) {
        const std::string yp = join(path, "yukawas");
        const json& ys = array(obj["yukawas"], yp);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const std::string p = index(yp, i);
            const json& y = object(ys[i], p);
            check_keys(y, p, {"amp_re", "amp_im", "center", "kappa"});
            f.add(YukawaTerm{amplitude(y, p), point(require(y, "center", p), join(p, "center")),
                             positive(require(y, "kappa", p), join(p, "kappa"))});
        }
    }
    if (f.gaussians().empty() && f.yukawas().empty()) fail(path, "needs at least one gaussian or yukawa term");
    return f;
}

std::vector<double> parse_times(const json& v) {
    const std::string path = "time_grid";
    std::vector<double> t;
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) t.push_back(positive(v[i], index(path, i)));
    } else if (v.is_object()) {
        check_keys(v, path, {"start", "stop", "count"});
        const double a = positive(require(v, "start", path), join(path, "start"));
        const double b = positive(require(v, "stop", path), join(path, "stop"));
        const int n = positive_int(require(v, "count", path), join(path, "count"), 2);
        if (!(b > a)) fail(join(path, "stop"), "must exceed start");
        t = log_times(a, b, n);
    } else {
        fail(path, "expected a list of times or {start, stop, count}");
    }
    if (t.empty()) fail(path, "needs at least one time");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) fail(index(path, i), "times must increase strictly");
    return t;
}

void parse_quadrature(const json& v, RunConfig& rc) {
    const std::string path = "quadrature";
    object(v, path);
    check_keys(v, path, {"M0", "tol", "max_doublings", "mu_step", "profile", "condition_cap"});
    if (v.contains("M0")) rc.evolve.cutoff.M = positive(v["M0"], join(path, "M0"));
    if (v.contains("tol")) rc.evolve.spectral.tol = positive(v["tol"], join(path, "tol"));
    if (v.contains("max_doublings"))
        rc.evolve.spectral.max_doublings = positive_int(v["max_doublings"], join(path, "max_doublings"));
    if (v.contains("mu_step")) rc.evolve.spectral.mu_step = positive(v["mu_step"], join(path, "mu_step"));
    if (v.contains("condition_cap"))
        rc.evolve.spectral.gamma.condition_cap = positive(v["condition_cap"], join(path, "condition_cap"));
    if (v.contains("profile")) {
        const json& p = v["profile"];
        if (p == "smooth_step")
            rc.evolve.cutoff.profile = CutoffProfile::smooth_step;
        else if (p == "steep_step")
            rc.evolve.cutoff.profile = CutoffProfile::steep_step;
        else
            fail(join(path, "profile"), "expected \"smooth_step\" or \"steep_step\"");
    }
}

void parse_grid(const json& v, RunConfig& rc) {
    const std::string path = "grid";
    object(v, path);
    check_keys(v, path, {"r_min", "r_max", "radii", "box", "box_half_width", "refinement"});
    SampleGrid& g = rc.grid;
    if (v.contains("r_min")) g.r_min = positive(v["r_min"], join(path, "r_min"));
    if (v.contains("r_max")) g.r_max = positive(v["r_max"], join(path, "r_max"));
    if (v.contains("radii")) g.radii = positive_int(v["radii"], join(path, "radii"), 2);
    if (v.contains("box")) g.box = positive_int(v["box"], join(path, "box"));
    if (v.contains("box_half_width")) g.box_half_width = positive(v["box_half_width"], join(path, "box_half_width"));
    if (v.contains("refinement")) {
        if (!v["refinement"].is_number_integer() || v["refinement"].get<long long>() < 0 ||
            v["refinement"].get<long long>() > 4)
            fail(join(path, "refinement"), "expected an integer in [0, 4]");
        g.refinement = v["refinement"].get<int>();
    }
    if (!(g.r_max > g.r_min)) fail(join(path, "r_max"), "must exceed r_min");
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("<root>: expected a JSON object");
    check_keys(doc, "", {"interaction", "initial_data", "time_grid", "points", "grid", "quadrature", "mode",
                         "continuous_only", "compare", "spectrum", "output"});
    RunConfig rc{parse_interaction(doc), parse_data(doc), {}, {}, {}, {}, false, std::nullopt, Format::csv,
                 std::nullopt};
    if (doc.contains("time_grid")) rc.times = parse_times(doc["time_grid"]);
    if (doc.contains("points")) {
        const json& ps = array(doc["points"], "points");
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const std::string p = index("points", i);
            const Vec3 x = point(ps[i], p);
            if (rc.interaction.coincident_center(x) >= 0) fail(p, "coincides with an interaction center");
            rc.points.push_back(x);
        }
    }
    if (doc.contains("grid")) parse_grid(doc["grid"], rc);
    if (doc.contains("quadrature")) parse_quadrature(doc["quadrature"], rc);
    if (doc.contains("mode")) {
        const json& m = doc["mode"];
        if (m == "automatic")
            rc.evolve.mode = EvolveMode::automatic;
        else if (m == "closed_form")
            rc.evolve.mode = EvolveMode::closed_form;
        else if (m == "spectral")
            rc.evolve.mode = EvolveMode::spectral;
        else
            fail("mode", "expected \"automatic\", \"closed_form\" or \"spectral\"");
        if (rc.evolve.mode == EvolveMode::closed_form && rc.interaction.size() != 1)
            fail("mode", "closed_form needs a single center");
    }
    if (doc.contains("continuous_only")) rc.evolve.continuous_only = boolean(doc["continuous_only"], "continuous_only");
    if (doc.contains("compare")) {
        rc.compare = boolean(doc["compare"], "compare");
        if (rc.compare && rc.interaction.size() != 1) fail("compare", "needs a single center");
    }
    if (doc.contains("spectrum")) {
        const json& s = object(doc["spectrum"], "spectrum");
        check_keys(s, "spectrum", {"kappa_max"});
        if (s.contains("kappa_max")) rc.kappa_max = positive(s["kappa_max"], "spectrum.kappa_max");
    }
    if (doc.contains("output")) {
        const json& o = object(doc["output"], "output");
        check_keys(o, "output", {"format", "path"});
        if (o.contains("format")) {
            if (o["format"] == "csv")
                rc.format = Format::csv;
            else if (o["format"] == "json")
                rc.format = Format::json;
            else
                fail("output.format", "expected \"csv\" or \"json\"");
        }
        if (o.contains("path")) {
            if (!o["path"].is_string()) fail("output.path", "expected a string");
            rc.out = o["path"].get<std::string>();
        }
    }
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": invalid JSON (" + e.what() + ")");
    }
    return parse_config(doc);
}

}  // namespace deltasolve::cli
