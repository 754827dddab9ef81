#include "commands.hpp"

#include <cstdio>

#include "deltasolve/spectrum.hpp"

namespace deltasolve::cli {
namespace {

using nlohmann::json;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(std::initializer_list<const char*> cols) {
        bool first = true;
        for (const char* c : cols) {
            out_ << (first ? "" : ",") << c;
            first = false;
        }
        out_ << '\n';
    }
    template <class... T>
    void row(const T&... v) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(v), first = false), ...);
        out_ << '\n';
    }

private:
    static std::string cell(double v) { return num(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return v; }

    std::ostream& out_;
};

json vec_json(const Vec3& x) { return json::array({x[0], x[1], x[2]}); }

std::vector<Vec3> evaluation_points(const RunConfig& rc) {
    return rc.points.empty() ? rc.grid.points(rc.interaction) : rc.points;
}

std::vector<double> require_times(const RunConfig& rc) {
    if (rc.times.empty()) throw ConfigError("time_grid: missing required field");
    return rc.times;
}

}  // namespace

void cmd_spectrum(const RunConfig& rc, std::ostream& out) {
    const auto pairs = find_eigenvalues(rc.interaction, rc.kappa_max);
    const std::size_t n = rc.interaction.size();
    if (rc.format == Format::json) {
        json recs = json::array();
        for (const auto& p : pairs) {
            json vecs = json::array();
            for (const auto& v : p.nullvecs) vecs.push_back(std::vector<double>(v.data(), v.data() + v.size()));
            recs.push_back({{"energy", p.energy}, {"kappa", p.kappa}, {"multiplicity", p.multiplicity},
                            {"null_vectors", vecs}});
        }
        out << json{{"eigenvalues", recs}}.dump(2) << '\n';
        return;
    }
    out << "energy,kappa,multiplicity,vector";
    for (std::size_t j = 0; j < n; ++j) out << ",a" << j;
    out << '\n';
    for (const auto& p : pairs)
        for (std::size_t m = 0; m < p.nullvecs.size(); ++m) {
            out << num(p.energy) << ',' << num(p.kappa) << ',' << p.multiplicity << ',' << m;
            for (std::size_t j = 0; j < n; ++j) out << ',' << num(p.nullvecs[m](static_cast<Eigen::Index>(j)));
            out << '\n';
        }
}

void cmd_evolve(const RunConfig& rc, std::ostream& out) {
    const auto times = require_times(rc);
    const auto pts = evaluation_points(rc);
    std::vector<double> w(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) w[i] = weight(rc.interaction, pts[i]);

    if (rc.compare) {
        EvolveOptions cf = rc.evolve;
        cf.mode = EvolveMode::closed_form;
        EvolveOptions sp = rc.evolve;
        sp.mode = EvolveMode::spectral;
        const Propagator a(rc.interaction, rc.initial_data, cf);
        const Propagator b(rc.interaction, rc.initial_data, sp);
        CsvWriter csv(out);
        json rows = json::array();
        double worst = 0.0;
        if (rc.format == Format::csv)
            csv.header({"t", "x", "y", "z", "re_closed", "im_closed", "re_spectral", "im_spectral", "rel_diff",
                        "weight", "M"});
        for (double t : times) {
            const auto ra = a.evaluate(pts, t);
            const auto rb = b.evaluate(pts, t);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const cplx u = ra.values[i];
                const cplx v = rb.values[i];
                const double rel = std::abs(u - v) / std::max(std::abs(u), 1e-300);
                worst = std::max(worst, rel);
                if (rc.format == Format::csv)
                    csv.row(t, pts[i][0], pts[i][1], pts[i][2], u.real(), u.imag(), v.real(), v.imag(), rel, w[i],
                            rb.M);
                else
                    rows.push_back({{"t", t}, {"x", vec_json(pts[i])}, {"closed_form", {u.real(), u.imag()}},
                                    {"spectral", {v.real(), v.imag()}}, {"rel_diff", rel}, {"weight", w[i]},
                                    {"M", rb.M}});
            }
        }
        if (rc.format == Format::json) out << json{{"max_rel_diff", worst}, {"rows", rows}}.dump(2) << '\n';
        return;
    }

    const Propagator prop(rc.interaction, rc.initial_data, rc.evolve);
    CsvWriter csv(out);
    json rows = json::array();
    if (rc.format == Format::csv) csv.header({"t", "x", "y", "z", "re", "im", "abs", "weight", "M"});
    for (double t : times) {
        const auto res = prop.evaluate(pts, t);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const cplx u = res.values[i];
            if (rc.format == Format::csv)
                csv.row(t, pts[i][0], pts[i][1], pts[i][2], u.real(), u.imag(), std::abs(u), w[i], res.M);
            else
                rows.push_back({{"t", t}, {"x", vec_json(pts[i])}, {"re", u.real()}, {"im", u.imag()},
                                {"abs", std::abs(u)}, {"weight", w[i]}, {"M", res.M}});
        }
    }
    if (rc.format == Format::json) out << json{{"rows", rows}}.dump(2) << '\n';
}

void cmd_decay(const RunConfig& rc, std::ostream& out) {
    const auto times = require_times(rc);
    const DecayRecord rec = decay_scan(rc.interaction, rc.initial_data, times, rc.grid, rc.evolve);
    if (rc.format == Format::json) {
        json rows = json::array();
        for (std::size_t i = 0; i < rec.times.size(); ++i)
            rows.push_back({{"t", rec.times[i]}, {"weighted_sup", rec.norms[i]}, {"M", rec.cutoffs[i]},
                            {"ladder_error", rec.errors[i]}});
        out << json{{"slope", rec.slope},
                    {"constant", rec.constant},
                    {"r2", rec.r2},
                    {"dispersive_constant", rec.dispersive_constant},
                    {"weighted_l1_norm", rec.data_norm.value},
                    {"weighted_l1_norm_exact", rec.data_norm.exact},
                    {"rows", rows}}
                   .dump(2)
            << '\n';
        return;
    }
    out << "# slope=" << num(rec.slope) << '\n'
        << "# constant=" << num(rec.constant) << '\n'
        << "# r2=" << num(rec.r2) << '\n'
        << "# dispersive_constant=" << num(rec.dispersive_constant) << '\n'
        << "# weighted_l1_norm=" << num(rec.data_norm.value) << (rec.data_norm.exact ? "" : " (upper bound)") << '\n';
    CsvWriter csv(out);
    csv.header({"t", "weighted_sup", "M", "ladder_error"});
    for (std::size_t i = 0; i < rec.times.size(); ++i) csv.row(rec.times[i], rec.norms[i], rec.cutoffs[i], rec.errors[i]);
}

}  // namespace deltasolve::cli
