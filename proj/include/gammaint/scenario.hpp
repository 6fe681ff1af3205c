#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "gamma.hpp"
#include "ifunction.hpp"

namespace gammaint {

struct TruncationConfig {
    Rational q_bound = 8;
    std::optional<ZWindow> z_window; ///< default [-(n+4), n+4]
    Rational gkz_order = 6;
};

struct NumericConfig {
    double tol = 1e-8;
    size_t gamma_depth = 8;
    double quad_rel_tol = 1e-9;
};

/// Named K-class: sum of mult * O(sum c_i D_i).
struct BundleSpec {
    std::string name;
    std::vector<std::pair<long, QVec>> terms;
};

/// Everything a scenario file can carry. Expectations are optional and keyed by check id.
struct Scenario {
    std::string name;
    size_t rank = 0;
    std::vector<ZVec> rays;
    std::vector<ZVec> extended_rays;
    std::vector<std::vector<size_t>> cones;
    std::vector<std::vector<size_t>> nef_partition;
    std::vector<ZVec> nef_basis;
    std::vector<SectorSpec> sectors;
    std::vector<BundleSpec> bundles;
    TruncationConfig truncation;
    NumericConfig numeric;
    std::vector<ZVec> alpha_section;
    std::vector<std::string> checks;
    YAML::Node expect;

    StackyFan fan() const {
        StackyFan f;
        f.n = rank;
        f.rays = rays;
        f.extended = extended_rays;
        f.cones = cones;
        return f;
    }
};

namespace detail {

inline Rational yaml_rational(const YAML::Node& n) {
    if (!n.IsScalar()) fail(ErrorKind::InvalidInput, "expected a rational scalar");
    return parse_rational(n.as<std::string>());
}

inline QVec yaml_qvec(const YAML::Node& n) {
    if (!n.IsSequence()) fail(ErrorKind::InvalidInput, "expected a sequence of rationals");
    QVec out;
    for (const auto& x : n) out.push_back(yaml_rational(x));
    return out;
}

inline ZVec yaml_zvec(const YAML::Node& n) {
    if (!n.IsSequence()) fail(ErrorKind::InvalidInput, "expected a sequence of integers");
    ZVec out;
    for (const auto& x : n) {
        Rational r = yaml_rational(x);
        if (!is_integer(r)) fail(ErrorKind::InvalidInput, "expected an integer, got " + to_string(r));
        out.push_back(to_long(r));
    }
    return out;
}

inline std::vector<ZVec> yaml_zvecs(const YAML::Node& n) {
    std::vector<ZVec> out;
    if (!n) return out;
    if (!n.IsSequence()) fail(ErrorKind::InvalidInput, "expected a list of vectors");
    for (const auto& x : n) out.push_back(yaml_zvec(x));
    return out;
}

inline std::vector<std::vector<size_t>> yaml_index_sets(const YAML::Node& n) {
    std::vector<std::vector<size_t>> out;
    for (const auto& z : yaml_zvecs(n)) {
        std::vector<size_t> s;
        for (long x : z) {
            if (x < 0) fail(ErrorKind::InvalidInput, "negative index");
            s.push_back(static_cast<size_t>(x));
        }
        out.push_back(s);
    }
    return out;
}

inline YAML::Node emit_vec(const ZVec& v) {
    YAML::Node n(YAML::NodeType::Sequence);
    n.SetStyle(YAML::EmitterStyle::Flow);
    for (long x : v) n.push_back(x);
    return n;
}

inline YAML::Node emit_vec(const QVec& v) {
    YAML::Node n(YAML::NodeType::Sequence);
    n.SetStyle(YAML::EmitterStyle::Flow);
    for (const auto& x : v) n.push_back(to_string(x));
    return n;
}

template <class V>
YAML::Node emit_list(const std::vector<V>& vs) {
    YAML::Node n(YAML::NodeType::Sequence);
    for (const auto& v : vs) {
        if constexpr (std::is_same_v<V, std::vector<size_t>>) {
            ZVec z(v.begin(), v.end());
            n.push_back(emit_vec(z));
        } else {
            n.push_back(emit_vec(v));
        }
    }
    return n;
}

inline void check_keys(const YAML::Node& n, const std::vector<std::string>& allowed, const std::string& where) {
    for (const auto& kv : n) {
        auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail(ErrorKind::InvalidInput, "unknown key '" + key + "' in " + where);
    }
}

} // namespace detail

inline Scenario parse_scenario(const YAML::Node& root) {
    using namespace detail;
    if (!root.IsMap()) fail(ErrorKind::InvalidInput, "scenario must be a mapping");
    check_keys(root,
               {"name", "rank", "rays", "extended_rays", "cones", "nef_partition", "nef_basis", "sectors", "bundles",
                "truncation", "numeric", "alpha_section", "checks", "expect"},
               "scenario");
    Scenario s;
    if (!root["name"] || !root["rank"] || !root["rays"] || !root["cones"])
        fail(ErrorKind::InvalidInput, "scenario needs name, rank, rays and cones");
    s.name = root["name"].as<std::string>();
    long rank = root["rank"].as<long>();
    if (rank <= 0) fail(ErrorKind::InvalidInput, "rank must be positive");
    s.rank = static_cast<size_t>(rank);
    s.rays = yaml_zvecs(root["rays"]);
    s.extended_rays = yaml_zvecs(root["extended_rays"]);
    s.cones = yaml_index_sets(root["cones"]);
    s.nef_partition = yaml_index_sets(root["nef_partition"]);
    s.nef_basis = yaml_zvecs(root["nef_basis"]);
    s.alpha_section = yaml_zvecs(root["alpha_section"]);
    size_t N = s.rays.size() + s.extended_rays.size();
    for (const auto& v : s.rays)
        if (v.size() != s.rank) fail(ErrorKind::InvalidInput, "ray has the wrong dimension");
    for (const auto& v : s.extended_rays)
        if (v.size() != s.rank) fail(ErrorKind::InvalidInput, "extended ray has the wrong dimension");
    for (const auto& c : s.cones)
        for (size_t i : c)
            if (i >= s.rays.size()) fail(ErrorKind::InvalidInput, "cone index out of range");
    for (const auto& p : s.nef_partition)
        for (size_t i : p)
            if (i >= N) fail(ErrorKind::InvalidInput, "nef partition index out of range");
    for (const auto& v : s.nef_basis)
        if (v.size() != N) fail(ErrorKind::InvalidInput, "nef basis lift needs one entry per vector");
    for (const auto& v : s.alpha_section)
        if (v.size() != N) fail(ErrorKind::InvalidInput, "alpha section needs one entry per vector");

    if (const auto& sec = root["sectors"]) {
        for (const auto& x : sec) {
            check_keys(x, {"box", "point", "stabilizer"}, "sector");
            SectorSpec sp;
            sp.box = yaml_zvec(x["box"]);
            if (sp.box.size() != s.rank) fail(ErrorKind::InvalidInput, "sector box vector has the wrong dimension");
            sp.point = x["point"] ? x["point"].as<bool>() : true;
            if (!sp.point) fail(ErrorKind::Unsupported, "only point sectors can be given in scenario files");
            if (x["stabilizer"]) {
                sp.stabilizer = yaml_rational(x["stabilizer"]);
                if (*sp.stabilizer <= 0) fail(ErrorKind::InvalidInput, "stabilizer order must be positive");
            }
            s.sectors.push_back(sp);
        }
    }
    if (const auto& b = root["bundles"]) {
        for (const auto& x : b) {
            check_keys(x, {"name", "terms"}, "bundle");
            BundleSpec bs;
            bs.name = x["name"].as<std::string>();
            for (const auto& t : x["terms"]) {
                check_keys(t, {"mult", "divisor"}, "bundle term");
                long mult = t["mult"] ? t["mult"].as<long>() : 1;
                QVec d = yaml_qvec(t["divisor"]);
                if (d.size() != s.rays.size()) fail(ErrorKind::InvalidInput, "bundle divisor needs one entry per ray");
                bs.terms.push_back({mult, d});
            }
            s.bundles.push_back(bs);
        }
    }
    if (const auto& t = root["truncation"]) {
        check_keys(t, {"q_bound", "z_window", "gkz_order"}, "truncation");
        if (t["q_bound"]) s.truncation.q_bound = yaml_rational(t["q_bound"]);
        if (t["gkz_order"]) s.truncation.gkz_order = yaml_rational(t["gkz_order"]);
        if (t["z_window"]) {
            ZVec w = yaml_zvec(t["z_window"]);
            if (w.size() != 2 || w[0] > w[1]) fail(ErrorKind::InvalidInput, "z_window must be [lo, hi] with lo <= hi");
            s.truncation.z_window = ZWindow{static_cast<int>(w[0]), static_cast<int>(w[1])};
        }
        if (s.truncation.q_bound <= 0 || s.truncation.gkz_order <= 0)
            fail(ErrorKind::InvalidInput, "truncation bounds must be positive");
    }
    if (const auto& nm = root["numeric"]) {
        check_keys(nm, {"tol", "gamma_depth", "quad_rel_tol"}, "numeric");
        if (nm["tol"]) s.numeric.tol = nm["tol"].as<double>();
        if (nm["gamma_depth"]) s.numeric.gamma_depth = nm["gamma_depth"].as<size_t>();
        if (nm["quad_rel_tol"]) s.numeric.quad_rel_tol = nm["quad_rel_tol"].as<double>();
        if (!(s.numeric.tol > 0) || s.numeric.gamma_depth == 0 || !(s.numeric.quad_rel_tol > 0))
            fail(ErrorKind::InvalidInput, "numeric settings must be positive");
    }
    if (const auto& c = root["checks"])
        for (const auto& x : c) s.checks.push_back(x.as<std::string>());
    s.expect = root["expect"] ? YAML::Clone(root["expect"]) : YAML::Node(YAML::NodeType::Map);
    return s;
}

inline Scenario load_scenario_text(const std::string& text) {
    try {
        return parse_scenario(YAML::Load(text));
    } catch (const YAML::Exception& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed scenario: ") + e.what());
    }
}

inline Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open scenario " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_scenario_text(ss.str());
}

inline YAML::Node scenario_to_yaml(const Scenario& s) {
    using namespace detail;
    YAML::Node n;
    n["name"] = s.name;
    n["rank"] = s.rank;
    n["rays"] = emit_list(s.rays);
    if (!s.extended_rays.empty()) n["extended_rays"] = emit_list(s.extended_rays);
    n["cones"] = emit_list(s.cones);
    if (!s.nef_partition.empty()) n["nef_partition"] = emit_list(s.nef_partition);
    if (!s.nef_basis.empty()) n["nef_basis"] = emit_list(s.nef_basis);
    for (const auto& sp : s.sectors) {
        YAML::Node x;
        x["box"] = emit_vec(sp.box);
        x["point"] = sp.point;
        if (sp.stabilizer) x["stabilizer"] = to_string(*sp.stabilizer);
        n["sectors"].push_back(x);
    }
    for (const auto& b : s.bundles) {
        YAML::Node x;
        x["name"] = b.name;
        for (const auto& [mult, d] : b.terms) {
            YAML::Node t;
            t["mult"] = mult;
            t["divisor"] = emit_vec(d);
            x["terms"].push_back(t);
        }
        n["bundles"].push_back(x);
    }
    n["truncation"]["q_bound"] = to_string(s.truncation.q_bound);
    n["truncation"]["gkz_order"] = to_string(s.truncation.gkz_order);
    if (s.truncation.z_window)
        n["truncation"]["z_window"] = emit_vec(ZVec{s.truncation.z_window->lo, s.truncation.z_window->hi});
    n["numeric"]["tol"] = s.numeric.tol;
    n["numeric"]["gamma_depth"] = s.numeric.gamma_depth;
    n["numeric"]["quad_rel_tol"] = s.numeric.quad_rel_tol;
    if (!s.alpha_section.empty()) n["alpha_section"] = emit_list(s.alpha_section);
    for (const auto& c : s.checks) n["checks"].push_back(c);
    if (s.expect.size() > 0) n["expect"] = YAML::Clone(s.expect);
    return n;
}

inline std::string scenario_to_string(const Scenario& s) {
    YAML::Emitter out;
    out << scenario_to_yaml(s);
    return out.c_str();
}

inline bool operator==(const BundleSpec& a, const BundleSpec& b) { return a.name == b.name && a.terms == b.terms; }

/// Structural equality; expectations compare by their emitted text.
inline bool same_scenario(const Scenario& a, const Scenario& b) {
    auto sec_eq = [](const SectorSpec& x, const SectorSpec& y) {
        return x.box == y.box && x.point == y.point && x.stabilizer == y.stabilizer;
    };
    if (a.sectors.size() != b.sectors.size()) return false;
    for (size_t i = 0; i < a.sectors.size(); ++i)
        if (!sec_eq(a.sectors[i], b.sectors[i])) return false;
    auto zw = [](const std::optional<ZWindow>& w) { return w ? std::pair{w->lo, w->hi} : std::pair{1, 0}; };
    YAML::Emitter ea, eb;
    ea << a.expect;
    eb << b.expect;
    return a.name == b.name && a.rank == b.rank && a.rays == b.rays && a.extended_rays == b.extended_rays &&
           a.cones == b.cones && a.nef_partition == b.nef_partition && a.nef_basis == b.nef_basis &&
           a.bundles == b.bundles && a.truncation.q_bound == b.truncation.q_bound &&
           a.truncation.gkz_order == b.truncation.gkz_order && zw(a.truncation.z_window) == zw(b.truncation.z_window) &&
           a.numeric.tol == b.numeric.tol && a.numeric.gamma_depth == b.numeric.gamma_depth &&
           a.numeric.quad_rel_tol == b.numeric.quad_rel_tol && a.alpha_section == b.alpha_section &&
           a.checks == b.checks && std::string(ea.c_str()) == std::string(eb.c_str());
}

inline KClass to_kclass(const BundleSpec& b) { return KClass{b.terms}; }

} // namespace gammaint
