#pragma once

#include "gammaint/report.hpp"

namespace fixtures {

using namespace gammaint;

inline StackyFan p1() {
    StackyFan f;
    f.n = 1;
    f.rays = {{1}, {-1}};
    f.cones = {{0}, {1}};
    return f;
}

inline StackyFan p2() {
    StackyFan f;
    f.n = 2;
    f.rays = {{1, 0}, {0, 1}, {-1, -1}};
    f.cones = {{0, 1}, {1, 2}, {0, 2}};
    return f;
}

inline StackyFan p1xp1() {
    StackyFan f;
    f.n = 2;
    f.rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    f.cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    return f;
}

inline StackyFan wp112() {
    StackyFan f;
    f.n = 2;
    f.rays = {{1, 0}, {0, 1}, {-1, -2}};
    f.extended = {{0, -1}};
    f.cones = {{0, 1}, {1, 2}, {0, 2}};
    return f;
}

inline StackyFan p4() {
    StackyFan f;
    f.n = 4;
    f.rays = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, -1, -1}};
    for (size_t s = 0; s < 5; ++s) {
        std::vector<size_t> c;
        for (size_t i = 0; i < 5; ++i)
            if (i != s) c.push_back(i);
        f.cones.push_back(c);
    }
    return f;
}

/// Independent oracle: (sum d)! / prod d_i! with plain integer loops.
inline Integer multinomial(const std::vector<long>& d) {
    Integer num = 1, den = 1;
    long total = 0;
    for (long x : d) {
        for (long i = 1; i <= x; ++i) {
            ++total;
            num *= total;
            den *= i;
        }
    }
    return num / den;
}

} // namespace fixtures
