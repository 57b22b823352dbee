#ifndef VIDMINE_VEC_HPP
#define VIDMINE_VEC_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace vidmine::vec {

inline double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline double l2_norm(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

inline void add_in_place(std::vector<double>& a, std::span<const double> b) {
    assert(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
}

inline void sub_in_place(std::vector<double>& a, std::span<const double> b) {
    assert(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
}

inline std::vector<double> scaled(std::span<const double> a, double factor) {
    std::vector<double> out(a.begin(), a.end());
    for (double& v : out)
        v *= factor;
    return out;
}

} // namespace vidmine::vec

#endif
