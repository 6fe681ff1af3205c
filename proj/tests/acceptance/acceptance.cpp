// One PASS/FAIL line per acceptance criterion; exit status 1 if any line fails.
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>

#include "gammaint/report.hpp"

using namespace gammaint;

namespace {

std::unique_ptr<Session> load(const std::string& name) {
    auto path = std::filesystem::path(GAMMAINT_SCENARIO_DIR) / (name + ".yaml");
    return std::make_unique<Session>(load_scenario_file(path.string()));
}

Integer multinomial_oracle(long d, long copies) {
    Integer num = 1, den = 1;
    for (long i = 1; i <= d * copies; ++i) num *= i;
    for (long c = 0; c < copies; ++c)
        for (long i = 1; i <= d; ++i) den *= i;
    return num / den;
}

std::string sci(double x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << x;
    return os.str();
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

Outcome opt_identity() {
    Outcome o;
    for (const char* name : {"cubic-p2", "quintic-p4", "wp112-style"}) {
        auto s = load(name);
        const auto& m = s->model();
        for (size_t v = 0; v < m.box().size(); ++v) {
            auto a = torus_residue_series(m, v, 8);
            auto b = multinomial_period_series(m, v, 8);
            o.require(a.terms == b.terms && !a.terms.empty(), std::string(name) + " v" + std::to_string(v));
        }
    }
    auto cubic = load("cubic-p2");
    auto c = torus_residue_series(cubic->model(), 0, 8);
    for (long d = 0; d <= 4; ++d) o.require(c.terms[{Rational(d)}] == Rational(multinomial_oracle(d, 3)), "cubic d=" + std::to_string(d));
    auto quintic = load("quintic-p4");
    auto q = torus_residue_series(quintic->model(), 0, 8);
    for (long d = 0; d <= 2; ++d) o.require(q.terms[{Rational(d)}] == Rational(multinomial_oracle(d, 5)), "quintic d=" + std::to_string(d));
    o.detail = o.pass ? "cubic 1,6,90,1680,34650; quintic 1,120,113400; all Box sectors to order 8" : o.detail;
    return o;
}

Outcome mirror_maps() {
    Outcome o;
    auto quintic = load("quintic-p4");
    const auto& m = quintic->model();
    MirrorMap mm = mirror_map(m, build_I_twisted(m, 0, 2));
    Rational harmonic = 0;
    for (long j = 2; j <= 5; ++j) harmonic += ratio(1, j);
    Rational oracle = 120 * 5 * harmonic;
    QVec H = m.ring().embed_untwisted(m.p_bar()[0]);
    auto it = mm.correction.terms.find({Rational(1)});
    o.require(it != mm.correction.terms.end() && it->second == scale(H, oracle), "quintic q^1 coefficient");
    auto p2 = load("p2");
    MirrorMap mp = mirror_map(p2->model(), build_I(p2->model(), 0, 6));
    o.require(mp.correction.terms.empty() && mp.F.terms.size() == 1, "P^2 mirror map not H log q");
    if (o.pass) o.detail = "quintic q^1 coefficient " + to_string(oracle) + "; P^2 trivial to order 6";
    return o;
}

Outcome gkz() {
    Outcome o;
    size_t terms = 0;
    for (const char* name : {"cubic-p2", "quintic-p4"}) {
        auto s = load(name);
        auto r = gkz_check(s->model(), 6);
        o.require(r.failures == 0 && r.terms_compared > 0, std::string(name) + " failures=" + std::to_string(r.failures));
        terms += r.terms_compared;
    }
    if (o.pass) o.detail = std::to_string(terms) + " coefficients annihilated exactly";
    return o;
}

Outcome half_identity() {
    Outcome o;
    double worst = 0;
    for (const char* name : {"p1", "p2", "p1xp1"}) {
        auto s = load(name);
        double r = half_identity_residual(s->model(), s->env());
        worst = std::max(worst, r);
        o.require(r < 1e-10, name);
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("max residual ") + sci(worst);
    return o;
}

Outcome euler_pairing() {
    Outcome o;
    auto s = load("p2");
    const auto& m = s->model();
    double worst = 0;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            long d = b - a;
            double oracle = (d + 1) * (d + 2) / 2.0;
            Complex pp = psi_pairing(m, s->env(), KClass::line({Rational(a), 0, 0}), KClass::line({Rational(b), 0, 0}));
            worst = std::max(worst, std::abs(pp - oracle));
        }
    o.require(worst < 1e-8, "max deviation " + sci(worst));
    if (o.pass) o.detail = "max |Psi-pairing - chi| = " + sci(worst);
    return o;
}

Outcome oscillatory() {
    Outcome o;
    double worst = 0;
    auto check = [&](const char* name, double q, bool bessel) {
        auto s = load(name);
        const auto& m = s->model();
        PeriodSeries P = a_period(m, s->env(), build_I(m, 0, 8), KClass::structure_sheaf(m.fan().m()));
        LGModel lg = build_W(m, s->scenario().alpha_section);
        auto quad = oscillatory_integral(m, alpha_values(lg, {q}), 1.0);
        Complex series = P.evaluate({q});
        double rel = std::abs(series - quad.value) / std::abs(series);
        worst = std::max(worst, rel);
        o.require(rel < 1e-5, std::string(name) + " q=" + std::to_string(q));
        if (bessel) {
            double b = 2.0 * boost::math::cyl_bessel_k(0, 2.0 * std::sqrt(q));
            o.require(std::abs(quad.value - b) / b < 1e-5, "Bessel at q=" + std::to_string(q));
        }
    };
    check("p1", 0.01, true);
    check("p1", 0.04, true);
    check("p2", 0.001, false);
    if (o.pass) o.detail = "max relative difference " + sci(worst);
    return o;
}

Outcome birkhoff() {
    Outcome o;
    for (const char* name : {"p1", "p2", "p1xp1", "wp112-style", "cubic-p2", "quintic-p4"}) {
        auto s = load(name);
        const auto& m = s->model();
        Rational bound = 6;
        auto b = birkhoff_factorize(m, bound, false);
        o.require(b.remultiplies, std::string(name) + " remultiplication");
        auto A = quantum_products(m, b);
        o.require(flatness(A, bound), std::string(name) + " flatness");
        if (m.partition()) o.require(birkhoff_factorize(m, bound, true).remultiplies, std::string(name) + " twisted");
        auto relation = [&](long p, const std::string& what) {
            size_t dim = m.ring().dim();
            MatSeries P{{QVec{Rational(0)}, QMatrix::identity(dim)}};
            for (long i = 0; i < p; ++i) P = mat_series_mul(P, A[0], bound);
            o.require(mat_series_equal(P, MatSeries{{QVec{Rational(1)}, QMatrix::identity(dim)}}), what);
        };
        if (std::string(name) == "p2") relation(3, "P^2 A^3 = q");
        if (std::string(name) == "p1") relation(2, "P^1 A^2 = q");
    }
    if (o.pass) o.detail = "six scenarios; P^2 A^3 = q, P^1 A^2 = q to order 6";
    return o;
}

Outcome elliptic() {
    Outcome o;
    auto s = load("cubic-p2");
    const auto& m = s->model();
    for (long i = -1; i <= 1; ++i)
        for (long j = -1; j <= 1; ++j) {
            Rational chi = euler_chi_complete_intersection(m, KClass::line({Rational(i), 0, 0}), KClass::line({Rational(j), 0, 0}));
            // C_i = A + 3iB, <A,B> = 1
            Rational skew = Rational(3 * j) - Rational(3 * i);
            o.require(chi == skew && chi == Rational(3 * (j - i)), "i=" + std::to_string(i) + " j=" + std::to_string(j));
        }
    if (o.pass) o.detail = "chi_Y(O(i),O(j)) = 3(j-i) for i,j in {-1,0,1}";
    return o;
}

Outcome monodromy() {
    Outcome o;
    auto s = load("p2");
    const auto& m = s->model();
    QSeries I = build_I(m, 0, 5);
    double worst = 0;
    for (long a = -1; a <= 1; ++a) {
        auto r = monodromy_check(m, s->env(), I, KClass::line({Rational(a), 0, 0}), {1, 0, 0});
        worst = std::max(worst, r.residual);
    }
    o.require(worst < 1e-9, "residual " + sci(worst));
    auto w = load("wp112-style");
    std::vector<QVec> xs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}};
    for (const auto& a : xs)
        for (const auto& b : xs)
            o.require(galois(w->model(), a).compose(galois(w->model(), b)) == galois(w->model(), add(a, b)), "Galois law");
    for (const auto& a : xs)
        for (const auto& b : xs)
            o.require(galois(m, a).compose(galois(m, b)) == galois(m, add(a, b)), "Galois law on P^2");
    if (o.pass) o.detail = "max residual " + sci(worst) + "; Galois law exact";
    return o;
}

Outcome critical() {
    Outcome o;
    auto s = load("cubic-p2");
    const auto& m = s->model();
    LGModel lg = build_W(m, s->scenario().alpha_section);
    auto cv = critical_values(m);
    o.require(cv.scale == 3 && cv.relation_degree == 3, "closed form");
    for (Rational t : {Rational(1), ratio(2, 3), ratio(-5, 7)}) {
        auto chk = verify_critical_values(m, lg, t);
        o.require(chk.gradients_vanish && chk.equations_hold && chk.distinct, "critical equations at s=" + to_string(t));
        // 3 s, 3 w s, 3 w^2 s with w^2 = -1 - w
        std::vector<Eisenstein> want{{3 * t, 0}, {0, 3 * t}, {-3 * t, -3 * t}};
        o.require(chk.values == want, "values at s=" + to_string(t));
    }
    if (o.pass) o.detail = "{3q^(1/3), 3wq^(1/3), 3w^2q^(1/3)} solved exactly in Q(w)";
    return o;
}

} // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 opt-identity", opt_identity},   {"2 mirror-map", mirror_maps},   {"3 gkz-annihilation", gkz},
        {"4 gamma-todd-identity", half_identity}, {"5 euler-pairing", euler_pairing}, {"6 oscillatory", oscillatory},
        {"7 birkhoff", birkhoff},           {"8 elliptic-lattice", elliptic}, {"9 monodromy-galois", monodromy},
        {"10 critical-values", critical},
    };
    bool all = true;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = e.what();
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << "  " << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
