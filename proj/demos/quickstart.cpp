// Builds the mirror quintic data from a fan and prints a few invariants.
#include <iostream>

#include "gammaint/report.hpp"

using namespace gammaint;

int main() {
    StackyFan fan;
    fan.n = 4;
    fan.rays = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, -1, -1}};
    for (size_t skip = 0; skip < 5; ++skip) {
        std::vector<size_t> cone;
        for (size_t i = 0; i < 5; ++i)
            if (i != skip) cone.push_back(i);
        fan.cones.push_back(cone);
    }
    ToricModel quintic(fan, {}, {}, {{0, 1, 2, 3, 4}});

    QSeries IV = build_I_twisted(quintic, 0, 3);
    MirrorMap mm = mirror_map(quintic, IV);
    std::cout << "F(q) = 1";
    for (const auto& [e, c] : mm.F.terms)
        if (total_degree(e) > 0) std::cout << " + " << c << "*" << format_monomial(e);
    std::cout << "\nG/F at q^1: " << format_vector(quintic.ring(), mm.correction.terms.at({Rational(1)})) << "\n";

    auto residue = torus_residue_series(quintic, 0, 3);
    std::cout << "compact-cycle period / (2 pi i)^" << residue.two_pi_i_power << ":";
    for (const auto& [e, c] : residue.terms) std::cout << " " << c;
    std::cout << "\n";

    auto gkz = gkz_check(quintic, 4, 2);
    std::cout << "GKZ operators checked: " << gkz.operators_checked << ", failures: " << gkz.failures << "\n";
}
