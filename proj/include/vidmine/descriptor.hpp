#ifndef VIDMINE_DESCRIPTOR_HPP
#define VIDMINE_DESCRIPTOR_HPP

#include <vector>

namespace vidmine {

// L2-unit feature vector for a frame, shot, or document.
struct Descriptor {
    std::vector<double> values;
};

// True when | ||d|| - 1 | <= tol.
bool is_unit_norm(const Descriptor& d, double tol = 1e-9);

} // namespace vidmine

#endif
