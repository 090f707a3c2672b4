#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "barypoly/affine.hpp"
#include "barypoly/barypolygonal.hpp"

namespace testing {

inline barypoly::PointFamily random_family(std::mt19937_64& rng, std::size_t p, std::size_t d,
                                           double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> coord(lo, hi);
    for (;;) {
        std::vector<double> flat(p * d);
        for (auto& x : flat) x = coord(rng);
        auto family = barypoly::PointFamily::from_rows(d, flat);
        if (family.min_separation() > 1e-3) return family;
    }
}

inline barypoly::ParamVector random_params(std::mt19937_64& rng, std::size_t p, double lo = 0.0,
                                           double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> t(p);
    for (auto& x : t) {
        do x = dist(rng);
        while (x <= 0.0 || x >= 1.0);
    }
    return barypoly::ParamVector(t);
}

/// Sorted, pairwise distinct triple in ]lo;hi[.
inline std::vector<double> random_sorted_triple(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    for (;;) {
        std::vector<double> u{dist(rng), dist(rng), dist(rng)};
        std::sort(u.begin(), u.end());
        if (u[1] - u[0] > 1e-3 && u[2] - u[1] > 1e-3) return u;
    }
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Every opened element is closed in order; self-closing tags are skipped.
inline bool tags_balanced(const std::string& svg) {
    std::vector<std::string> stack;
    std::size_t pos = 0;
    while ((pos = svg.find('<', pos)) != std::string::npos) {
        const auto end = svg.find('>', pos);
        if (end == std::string::npos) return false;
        const std::string tag = svg.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        if (tag.empty() || tag[0] == '?' || tag[0] == '!' || tag.back() == '/') continue;
        const auto name_end = tag.find_first_of(" \t\n");
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
        } else {
            stack.push_back(tag.substr(0, name_end));
        }
    }
    return stack.empty();
}

}  // namespace testing
