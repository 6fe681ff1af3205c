#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <nlohmann/json.hpp>

#include "birkhoff.hpp"
#include "bside.hpp"
#include "periods.hpp"
#include "scenario.hpp"

namespace gammaint {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "gammaint.report/1";

struct CheckRecord {
    std::string id;
    bool pass = false;
    Json measured;
    Json expected;
    Json tolerance; ///< null for exact checks
    std::string source; ///< "oracle", "identity", "expectation" or "invariant"
};

struct Report {
    std::string command;
    std::string scenario;
    std::vector<CheckRecord> checks;
    Json data = Json::object();
    double timing_ms = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    Json to_json(bool with_timing = true) const {
        Json j;
        j["schema"] = kReportSchema;
        j["command"] = command;
        j["scenario"] = scenario;
        j["status"] = all_pass() ? "pass" : "fail";
        Json cs = Json::array();
        for (const auto& c : checks) {
            Json r;
            r["id"] = c.id;
            r["status"] = c.pass ? "pass" : "fail";
            r["measured"] = c.measured;
            r["expected"] = c.expected;
            r["tolerance"] = c.tolerance;
            r["source"] = c.source;
            cs.push_back(r);
        }
        j["checks"] = cs;
        j["data"] = data;
        if (with_timing) j["timing_ms"] = timing_ms;
        return j;
    }

    std::string table() const {
        std::ostringstream os;
        os << command << " on " << scenario << ": " << (all_pass() ? "PASS" : "FAIL") << " (" << checks.size()
           << " checks)\n";
        for (const auto& c : checks) {
            os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  measured=" << c.measured.dump();
            if (!c.expected.is_null()) os << "  expected=" << c.expected.dump();
            if (!c.tolerance.is_null()) os << "  tol=" << c.tolerance.dump();
            os << "\n";
        }
        return os.str();
    }
};

struct RunOptions {
    std::optional<Rational> q_bound;
    std::optional<ZWindow> z_window;
    std::optional<double> tol;
};

/// A scenario with its derived model; commands read from here.
class Session {
public:
    Session(Scenario sc, RunOptions opts = {}) : sc_(std::move(sc)), opts_(opts) {
        model_ = std::make_unique<ToricModel>(sc_.fan(), sc_.nef_basis, sc_.sectors, sc_.nef_partition);
        env_ = std::make_unique<GammaEnv>(sc_.numeric.gamma_depth);
    }

    const Scenario& scenario() const { return sc_; }
    const ToricModel& model() const { return *model_; }
    const GammaEnv& env() const { return *env_; }
    Rational q_bound() const { return opts_.q_bound ? *opts_.q_bound : sc_.truncation.q_bound; }
    ZWindow window() const {
        if (opts_.z_window) return *opts_.z_window;
        if (sc_.truncation.z_window) return *sc_.truncation.z_window;
        return ZWindow{};
    }
    double tol() const { return opts_.tol ? *opts_.tol : sc_.numeric.tol; }
    /// Expectation node for a command, or an undefined node.
    YAML::Node expect(const std::string& key) const { return sc_.expect[key]; }

    std::vector<std::pair<std::string, KClass>> bundles() const {
        std::vector<std::pair<std::string, KClass>> out{{"O", KClass::structure_sheaf(model_->fan().m())}};
        for (const auto& b : sc_.bundles) out.push_back({b.name, to_kclass(b)});
        return out;
    }

private:
    Scenario sc_;
    RunOptions opts_;
    std::unique_ptr<ToricModel> model_;
    std::unique_ptr<GammaEnv> env_;
};

namespace detail {

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Json qvec_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline Json series_json(const OrbifoldRing& ring, const QSeries& s) {
    Json j;
    j["prefactor"] = s.prefactor;
    j["bound"] = to_string(s.bound);
    Json terms = Json::array();
    for (const auto& [e, lv] : s.terms)
        for (auto it = lv.rbegin(); it != lv.rend(); ++it) {
            Json t;
            t["q"] = format_monomial(e);
            t["z"] = it->first;
            t["coefficient"] = format_vector(ring, it->second);
            terms.push_back(t);
        }
    j["terms"] = terms;
    return j;
}

inline Json matrix_json(const QMatrix& m) {
    Json a = Json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        a.push_back(row);
    }
    return a;
}

inline Json complex_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline CheckRecord exact(std::string id, bool pass, Json measured, Json expected, std::string source) {
    return {std::move(id), pass, std::move(measured), std::move(expected), nullptr, std::move(source)};
}

inline CheckRecord numeric(std::string id, double measured, double tol, std::string source, Json expected = nullptr) {
    return {std::move(id), std::isfinite(measured) && measured < tol, measured, std::move(expected), tol,
            std::move(source)};
}

inline std::vector<Rational> yaml_rationals(const YAML::Node& n) {
    std::vector<Rational> out;
    for (const auto& x : n) out.push_back(parse_rational(x.as<std::string>()));
    return out;
}

inline std::vector<double> yaml_doubles(const YAML::Node& n) {
    std::vector<double> out;
    for (const auto& x : n) out.push_back(x.as<double>());
    return out;
}

/// Single-variable coefficient list c_0, c_1, ... from a rational-keyed map.
inline Json coefficient_list(const std::map<QVec, Rational>& terms) {
    Json a = Json::array();
    for (const auto& [e, c] : terms) a.push_back(Json{{"q", format_monomial(e)}, {"c", to_string(c)}});
    return a;
}

inline QVec untwisted_line(const ToricModel& model, const QVec& divisor) {
    return model.ring().untwisted_from_divisor(divisor);
}

} // namespace detail

inline Report cmd_box(const Session& s) {
    using namespace detail;
    Report r;
    const auto& box = s.model().box();
    Json entries = Json::array();
    for (size_t v = 0; v < box.size(); ++v) {
        const auto& e = box[v];
        Json j;
        j["index"] = v;
        j["v"] = e.v;
        j["age"] = to_string(e.age);
        j["cone"] = e.cone;
        j["inverse"] = e.inv;
        entries.push_back(j);
    }
    r.data["box"] = entries;
    bool involution = true;
    for (size_t v = 0; v < box.size(); ++v)
        if (box[box[v].inv].inv != v) involution = false;
    r.checks.push_back(exact("box.inverse-involution", involution, involution, true, "invariant"));
    if (auto ex = s.expect("box")) {
        Json measured = Json::array(), expected = Json::array();
        for (size_t v = 0; v < box.size(); ++v) measured.push_back(to_string(box[v].age));
        for (const auto& a : yaml_rationals(ex["ages"])) expected.push_back(to_string(a));
        r.checks.push_back(exact("box.ages", measured == expected, measured, expected, "expectation"));
    }
    return r;
}

inline Report cmd_ifun(const Session& s) {
    using namespace detail;
    Report r;
    const auto& model = s.model();
    const auto& ring = model.ring();
    Json series = Json::array();
    QSeries I0 = build_I(model, 0, s.q_bound(), s.window());
    for (size_t v = 0; v < model.box().size(); ++v) {
        QSeries I = v == 0 ? I0 : build_I(model, v, s.q_bound(), s.window());
        series.push_back(Json{{"sector", v}, {"I", series_json(ring, I)}});
        size_t bad = homogeneity_violations(model, I, false);
        r.checks.push_back(exact("ifun.homogeneity.v" + std::to_string(v), bad == 0, bad, 0, "invariant"));
        if (v > 0) {
            QSeries D = derive_Iv_from_I(model, v, I0);
            bool same = D.terms == truncate(I, D.bound).terms;
            r.checks.push_back(exact("ifun.log-field-derivation.v" + std::to_string(v), same, same, true, "identity"));
        }
    }
    r.data["I"] = series;
    if (model.partition()) {
        QSeries IV = build_I_twisted(model, 0, s.q_bound(), s.window());
        r.data["I_V"] = series_json(ring, IV);
        size_t bad = homogeneity_violations(model, IV, true);
        r.checks.push_back(exact("ifun.twisted-homogeneity", bad == 0, bad, 0, "invariant"));
    }
    return r;
}

inline Report cmd_mirror_map(const Session& s) {
    using namespace detail;
    Report r;
    const auto& model = s.model();
    const auto& ring = model.ring();
    bool twisted = model.partition().has_value();
    QSeries I = twisted ? build_I_twisted(model, 0, s.q_bound(), s.window()) : build_I(model, 0, s.q_bound(), s.window());
    MirrorMap mm = mirror_map(model, I);
    std::map<QVec, Rational> F(mm.F.terms.begin(), mm.F.terms.end());
    r.data["twisted"] = twisted;
    r.data["F"] = coefficient_list(F);
    Json corr = Json::array();
    for (const auto& [e, v] : mm.correction.terms)
        corr.push_back(Json{{"q", format_monomial(e)}, {"coefficient", format_vector(ring, v)}});
    r.data["G_over_F"] = corr;
    auto ex = s.expect("mirror_map");
    if (!ex) return r;
    if (ex["F"]) {
        auto want = yaml_rationals(ex["F"]);
        Json measured = Json::array(), expected = Json::array();
        for (size_t d = 0; d < want.size(); ++d) {
            QVec e{Rational(static_cast<long>(d))};
            measured.push_back(F.count(e) ? to_string(F.at(e)) : "0");
            expected.push_back(to_string(want[d]));
        }
        r.checks.push_back(exact("mirror-map.F", measured == expected, measured, expected, "oracle"));
    }
    if (ex["q1_coefficient"]) {
        if (model.k() != 1) fail(ErrorKind::Domain, "q1_coefficient expectation needs one Kahler parameter");
        Rational want = parse_rational(ex["q1_coefficient"].as<std::string>());
        QVec e{Rational(1)};
        QVec p = ring.embed_untwisted(model.p_bar()[0]);
        Json measured = nullptr;
        bool pass = false;
        if (mm.correction.terms.count(e)) {
            const QVec& g = mm.correction.terms.at(e);
            // g = c * p-bar
            std::optional<Rational> c;
            bool proportional = true;
            for (size_t i = 0; i < g.size(); ++i) {
                if (p[i] == 0) {
                    if (g[i] != 0) proportional = false;
                    continue;
                }
                Rational ci = g[i] / p[i];
                if (c && *c != ci) proportional = false;
                c = ci;
            }
            if (proportional && c) {
                measured = to_string(*c);
                pass = *c == want;
            } else {
                measured = format_vector(ring, g);
            }
        } else {
            measured = "0";
            pass = want == 0;
        }
        r.checks.push_back(exact("mirror-map.q1-coefficient", pass, measured, to_string(want), "oracle"));
    }
    if (ex["trivial"] && ex["trivial"].as<bool>()) {
        bool trivial = mm.correction.terms.empty();
        size_t nF = 0;
        for (const auto& [e, c] : F)
            if (total_degree(e) > 0) ++nF;
        r.checks.push_back(exact("mirror-map.trivial", trivial && nF == 0,
                                 Json{{"G_terms", mm.correction.terms.size()}, {"F_nonconstant_terms", nF}},
                                 Json{{"G_terms", 0}, {"F_nonconstant_terms", 0}}, "oracle"));
    }
    return r;
}

inline Report cmd_birkhoff(const Session& s) {
    using namespace detail;
    Report r;
    const auto& model = s.model();
    const auto& ring = model.ring();
    std::vector<bool> modes{false};
    if (model.partition()) modes.push_back(true);
    for (bool twisted : modes) {
        std::string tag = twisted ? "birkhoff.twisted" : "birkhoff";
        BirkhoffResult b = birkhoff_factorize(model, s.q_bound(), twisted, s.window());
        r.checks.push_back(exact(tag + ".remultiplication", b.remultiplies, b.remultiplies, true, "identity"));
        if (twisted) continue;
        bool unit = unitarity(model, b);
        r.checks.push_back(exact(tag + ".unitarity", unit, unit, true, "identity"));
        std::vector<MatSeries> A;
        try {
            A = quantum_products(model, b);
        } catch (const Error& e) {
            r.checks.push_back(exact(tag + ".z-free", false, e.what(), true, "identity"));
            continue;
        }
        r.checks.push_back(exact(tag + ".z-free", true, true, true, "identity"));
        bool flat = flatness(A, s.q_bound());
        r.checks.push_back(exact(tag + ".flatness", flat, flat, true, "identity"));
        Json ops = Json::array();
        for (const auto& o : b.operators) ops.push_back(Json{{"sector", o.sector}, {"exponents", o.exponents}});
        r.data["operators"] = ops;
        r.data["basis"] = [&] {
            Json l = Json::array();
            for (size_t g = 0; g < ring.dim(); ++g) l.push_back(ring.label(g));
            return l;
        }();
        Json prods = Json::array();
        for (size_t a = 0; a < A.size(); ++a) {
            Json terms = Json::array();
            for (const auto& [e, m] : A[a]) terms.push_back(Json{{"q", format_monomial(e)}, {"matrix", matrix_json(m)}});
            prods.push_back(terms);
        }
        r.data["quantum_products"] = prods;
        Json ups = Json::array();
        for (const auto& [e, l] : b.Upsilon.terms)
            for (const auto& [k, m] : l)
                ups.push_back(Json{{"q", format_monomial(e)}, {"z", k}, {"matrix", matrix_json(m)}});
        r.data["Upsilon"] = ups;

        if (auto ex = s.expect("birkhoff")) {
            for (const auto& rel : ex["relations"]) {
                size_t op = rel["operator"].as<size_t>();
                long power = rel["power"].as<long>();
                QVec qexp = yaml_qvec(rel["q"]);
                Rational bound = rel["order"] ? parse_rational(rel["order"].as<std::string>()) : s.q_bound();
                if (op >= A.size()) fail(ErrorKind::InvalidInput, "relation operator out of range");
                MatSeries P;
                P[QVec(model.k(), Rational(0))] = QMatrix::identity(ring.dim());
                for (long i = 0; i < power; ++i) P = mat_series_mul(P, A[op], bound);
                MatSeries want;
                want[qexp] = QMatrix::identity(ring.dim());
                bool pass = mat_series_equal(P, want);
                std::string id = "birkhoff.relation.A" + std::to_string(op) + "^" + std::to_string(power);
                Json measured = Json::array();
                for (const auto& [e, m] : P)
                    if (!m.is_zero()) measured.push_back(Json{{"q", format_monomial(e)}, {"matrix", matrix_json(m)}});
                r.checks.push_back(exact(id, pass, measured, format_monomial(qexp) + " * identity", "oracle"));
            }
        }
    }
    return r;
}

inline Report cmd_central_charge(const Session& s) {
    using namespace detail;
    Report r;
    const auto& model = s.model();
    bool twisted = model.partition().has_value();
    QSeries I = twisted ? build_I_twisted(model, 0, s.q_bound(), s.window()) : build_I(model, 0, s.q_bound(), s.window());
    auto ex = s.expect("central_charge");
    std::vector<double> qs = ex && ex["q"] ? yaml_doubles(ex["q"]) : std::vector<double>{};
    Json out = Json::array();
    for (const auto& [name, E] : s.bundles()) {
        PeriodSeries P = a_period(model, s.env(), I, E, 1.0, twisted);
        Json j;
        j["bundle"] = name;
        j["leading"] = [&] {
            Json t = Json::array();
            auto it = P.terms.begin();
            if (it != P.terms.end())
                for (const auto& [mono, c] : it->second) t.push_back(Json{{"log_q", mono}, {"c", complex_json(c)}});
            return t;
        }();
        Json vals = Json::array();
        for (double q : qs) {
            std::vector<double> qv(model.k(), q);
            vals.push_back(Json{{"q", q}, {"value", complex_json(P.evaluate(qv))}});
        }
        j["values"] = vals;
        out.push_back(j);
        if (ex && ex["bessel"] && ex["bessel"].as<bool>() && name == "O") {
            for (double q : qs) {
                double want = 2.0 * boost::math::cyl_bessel_k(0, 2.0 * std::sqrt(q));
                Complex got = P.evaluate({q});
                double rel = std::abs(got - want) / std::abs(want);
                std::ostringstream id;
                id << "central-charge.bessel.q=" << q;
                r.checks.push_back(numeric(id.str(), rel, ex["tol"] ? ex["tol"].as<double>() : 1e-5, "oracle", want));
            }
        }
    }
    r.data["periods"] = out;
    return r;
}

inline Report cmd_opt_identity(const Session& s) {
    using namespace detail;
    Report r;
    const auto& model = s.model();
    Json table = Json::array();
    for (size_t v = 0; v < model.box().size(); ++v) {
        if (!is_integer(model.box()[v].age)) {
            table.push_back(Json{{"sector", v}, {"skipped", "non-integral age"}});
            continue;
        }
        auto res = torus_residue_series(model, v, s.q_bound());
        auto mult = multinomial_period_series(model, v, s.q_bound());
        bool same = res.terms == mult.terms && res.two_pi_i_power == mult.two_pi_i_power;
        table.push_back(Json{{"sector", v},
                             {"two_pi_i_power", res.two_pi_i_power},
                             {"residue", coefficient_list(res.terms)},
                             {"multinomial", coefficient_list(mult.terms)}});
        r.checks.push_back(exact("opt-identity.v" + std::to_string(v), same, res.terms.size(), mult.terms.size(),
                                 "identity"));
        if (v == 0)
            if (auto ex = s.expect("opt_identity")) {
                auto want = yaml_rationals(ex["coefficients"]);
                Json measured = Json::array(), expected = Json::array();
                for (size_t d = 0; d < want.size(); ++d) {
                    QVec e{Rational(static_cast<long>(d))};
                    measured.push_back(res.terms.count(e) ? to_string(res.terms.at(e)) : "0");
                    expected.push_back(to_string(want[d]));
                }
                r.checks.push_back(exact("opt-identity.coefficients", measured == expected, measured, expected, "oracle"));
            }
    }
    r.data["table"] = table;
    return r;
}

inline Report cmd_gkz_check(const Session& s) {
    using namespace detail;
    Report r;
    const auto& model = s.model();
    Rational order = s.scenario().truncation.gkz_order;
    if (!is_integer(order)) fail(ErrorKind::InvalidInput, "gkz_order must be an integer");
    GKZCheck g = gkz_check(model, to_long(order));
    r.data["generators"] = g.generators;
    r.data["operators_checked"] = g.operators_checked;
    r.data["terms_compared"] = g.terms_compared;
    r.data["normalized_volume"] = g.normalized_volume.get_str();
    r.data["log_period_scaling"] = to_string(g.log_period_scaling_residual);
    r.data["failures"] = g.failure_notes;
    r.checks.push_back(exact("gkz.annihilation", g.failures == 0 && g.terms_compared > 0,
                             Json{{"failures", g.failures}, {"terms", g.terms_compared}}, Json{{"failures", 0}},
                             "identity"));
    return r;
}

inline Report cmd_osc_check(const Session& s) {
    using namespace detail;
    Report r;
    const auto& model = s.model();
    LGModel lg = build_W(model, s.scenario().alpha_section);
    r.data["W"] = format_W(model, lg);
    auto ex = s.expect("osc");
    if (ex && ex["q"]) {
        if (model.partition() && model.codim() > 0)
            fail(ErrorKind::Unsupported, "oscillatory quadrature is implemented for c = 0 only");
        double tol = ex["tol"] ? ex["tol"].as<double>() : 1e-5;
        QSeries I = build_I(model, 0, s.q_bound(), s.window());
        PeriodSeries P = a_period(model, s.env(), I, KClass::structure_sheaf(model.fan().m()));
        Json pts = Json::array();
        for (double q : yaml_doubles(ex["q"])) {
            std::vector<double> qv(model.k(), q);
            auto alpha = alpha_values(lg, qv);
            QuadratureResult quad = oscillatory_integral(model, alpha, 1.0, s.scenario().numeric.quad_rel_tol);
            Complex series = P.evaluate(qv);
            double rel = std::abs(series - quad.value) / std::abs(series);
            std::ostringstream id;
            id << "osc.series-vs-quadrature.q=" << q;
            r.checks.push_back(numeric(id.str(), rel, tol, "oracle"));
            Json pt{{"q", q}, {"quadrature", quad.value}, {"series", complex_json(series)},
                    {"quadrature_error", quad.error_estimate}, {"step", quad.step}};
            if (ex["bessel"] && ex["bessel"].as<bool>()) {
                double want = 2.0 * boost::math::cyl_bessel_k(0, 2.0 * std::sqrt(q));
                double relb = std::abs(quad.value - want) / want;
                std::ostringstream idb;
                idb << "osc.quadrature-vs-bessel.q=" << q;
                r.checks.push_back(numeric(idb.str(), relb, tol, "oracle", want));
                pt["bessel"] = want;
            }
            pts.push_back(pt);
        }
        r.data["points"] = pts;
    }
    if (auto cvx = s.expect("critical_values")) {
        CriticalValues cv = critical_values(model);
        Rational s0 = cvx["s"] ? parse_rational(cvx["s"].as<std::string>()) : ratio(2, 3);
        CriticalCheck chk = verify_critical_values(model, lg, s0);
        Rational want_scale = parse_rational(cvx["scale"].as<std::string>());
        long want_deg = cvx["degree"].as<long>();
        Json vals = Json::array();
        for (const auto& v : chk.values) vals.push_back(v.str());
        r.data["critical_values"] = Json{{"q", to_string(chk.q)}, {"values", vals}};
        r.checks.push_back(exact("critical-values.closed-form",
                                 cv.scale == want_scale && cv.relation_degree == want_deg,
                                 to_string(cv.scale) + "*q^(1/" + std::to_string(cv.relation_degree) + ")",
                                 to_string(want_scale) + "*q^(1/" + std::to_string(want_deg) + ")", "expectation"));
        bool solved = chk.gradients_vanish && chk.equations_hold && chk.distinct && chk.values == chk.expected &&
                      static_cast<long>(chk.values.size()) == want_deg;
        Json expected = Json::array();
        for (const auto& v : chk.expected) expected.push_back(v.str());
        r.checks.push_back(exact("critical-values.exact-solve", solved, vals, expected, "identity"));
    }
    return r;
}

inline Report cmd_euler_pairing(const Session& s) {
    using namespace detail;
    Report r;
    const auto& model = s.model();
    auto ex = s.expect("euler_pairing");
    if (ex && ex["range"]) {
        long range = ex["range"].as<long>();
        QVec D = yaml_qvec(ex["divisor"]);
        double worst = 0;
        Json table = Json::array();
        for (long a = -range; a <= range; ++a)
            for (long b = -range; b <= range; ++b) {
                KClass Ea = KClass::line(scale(D, Rational(a))), Eb = KClass::line(scale(D, Rational(b)));
                Rational chi = euler_chi(model, Ea, Eb);
                Complex pp = psi_pairing(model, s.env(), Ea, Eb);
                worst = std::max(worst, std::abs(pp - chi.get_d()));
                table.push_back(Json{{"a", a}, {"b", b}, {"chi", to_string(chi)}});
            }
        r.data["chi"] = table;
        r.checks.push_back(numeric("euler-pairing.psi-vs-chi", worst, s.tol(), "identity"));
        if (ex["oracle"] && ex["oracle"].as<std::string>() == "projective-plane") {
            bool ok = true;
            for (long a = -range; a <= range; ++a)
                for (long b = -range; b <= range; ++b) {
                    long d = b - a;
                    Rational want = Rational((d + 1) * (d + 2)) / 2;
                    if (euler_chi(model, KClass::line(scale(D, Rational(a))), KClass::line(scale(D, Rational(b)))) != want)
                        ok = false;
                }
            r.checks.push_back(exact("euler-pairing.chi-oracle", ok, ok, true, "oracle"));
        }
    }
    if (ex && ex["elliptic"]) {
        const auto& el = ex["elliptic"];
        QVec D = yaml_qvec(el["divisor"]);
        long factor = el["factor"].as<long>();
        auto idx = yaml_zvec(el["twists"]);
        Json measured = Json::array(), expected = Json::array();
        bool ok = true;
        for (long i : idx)
            for (long j : idx) {
                Rational chi = euler_chi_complete_intersection(model, KClass::line(scale(D, Rational(i))),
                                                               KClass::line(scale(D, Rational(j))));
                // <A + f i B, A + f j B> with <A, B> = 1
                Rational skew = Rational(factor * j) - Rational(factor * i);
                measured.push_back(to_string(chi));
                expected.push_back(to_string(skew));
                if (chi != skew) ok = false;
            }
        r.checks.push_back(exact("euler-pairing.elliptic-lattice", ok, measured, expected, "oracle"));
    }
    return r;
}

inline Report cmd_gamma_identity(const Session& s) {
    using namespace detail;
    Report r;
    double res = half_identity_residual(s.model(), s.env());
    double tol = 1e-10;
    if (auto ex = s.expect("gamma_identity"); ex && ex["tol"]) tol = ex["tol"].as<double>();
    r.checks.push_back(numeric("gamma-identity.todd-square-root", res, tol, "identity"));
    Json gc = Json::array();
    for (const auto& c : gamma_class(s.model(), s.env())) gc.push_back(complex_json(c));
    r.data["gamma_class"] = gc;
    return r;
}

inline Report cmd_monodromy_check(const Session& s) {
    using namespace detail;
    Report r;
    const auto& model = s.model();
    auto ex = s.expect("monodromy");
    Rational order = ex && ex["order"] ? parse_rational(ex["order"].as<std::string>()) : s.q_bound();
    double tol = ex && ex["tol"] ? ex["tol"].as<double>() : 1e-9;
    std::vector<QVec> xis;
    if (ex && ex["xi"])
        for (const auto& x : ex["xi"]) xis.push_back(yaml_qvec(x));
    else
        for (size_t i = 0; i < model.fan().m(); ++i) {
            QVec e(model.fan().m(), Rational(0));
            e[i] = 1;
            xis.push_back(e);
        }
    QSeries I = build_I(model, 0, order, s.window());
    Json res = Json::array();
    for (const auto& xi : xis)
        for (const auto& [name, E] : s.bundles()) {
            MonodromyResult m = monodromy_check(model, s.env(), I, E, xi);
            r.checks.push_back(numeric("monodromy." + name + ".xi=" + to_string(xi), m.residual, tol, "identity"));
            res.push_back(Json{{"bundle", name}, {"xi", qvec_json(xi)}, {"residual", m.residual}, {"scale", m.scale}});
        }
    r.data["monodromy"] = res;
    bool law = true;
    for (const auto& a : xis)
        for (const auto& b : xis)
            if (!(galois(model, a).compose(galois(model, b)) == galois(model, add(a, b)))) law = false;
    r.checks.push_back(exact("galois.composition", law, law, true, "identity"));
    return r;
}

using Command = std::function<Report(const Session&)>;

inline const std::vector<std::pair<std::string, Command>>& commands() {
    static const std::vector<std::pair<std::string, Command>> table{
        {"box", cmd_box},
        {"ifun", cmd_ifun},
        {"mirror-map", cmd_mirror_map},
        {"birkhoff", cmd_birkhoff},
        {"central-charge", cmd_central_charge},
        {"opt-identity", cmd_opt_identity},
        {"gkz-check", cmd_gkz_check},
        {"osc-check", cmd_osc_check},
        {"euler-pairing", cmd_euler_pairing},
        {"gamma-identity", cmd_gamma_identity},
        {"monodromy-check", cmd_monodromy_check},
    };
    return table;
}

/// Run one command; report-all runs the scenario's check list. Library errors become failing checks.
inline Report run(const std::string& command, const Session& s) {
    auto start = std::chrono::steady_clock::now();
    Report out;
    out.command = command;
    out.scenario = s.scenario().name;
    auto run_one = [&](const std::string& name, Report& into) {
        for (const auto& [cname, fn] : commands())
            if (cname == name) {
                try {
                    Report r = fn(s);
                    for (auto& c : r.checks) into.checks.push_back(std::move(c));
                    if (command == "report-all") into.data[name] = r.data;
                    else into.data = r.data;
                } catch (const Error& e) {
                    into.checks.push_back({name + ".error", false, std::string(e.what()),
                                           nullptr, nullptr, "invariant"});
                }
                return;
            }
        fail(ErrorKind::InvalidInput, "unknown command '" + name + "'");
    };
    if (command == "report-all")
        for (const auto& c : s.scenario().checks) run_one(c, out);
    else
        run_one(command, out);
    out.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace gammaint
