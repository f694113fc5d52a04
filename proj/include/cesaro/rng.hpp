#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cesaro/halfplane.hpp"

namespace cesaro {

/// splitmix64: tiny, fully specified generator so seeded runs are
/// reproducible bit-for-bit across platforms and standard libraries.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Log-uniform in [lo, hi].
    double log_uniform(double lo, double hi) {
        return lo * std::exp(uniform01() * std::log(hi / lo));
    }

    /// Uniform on the closed unit disk.
    Complex unit_disk() {
        const double r = std::sqrt(uniform01());
        const double theta = 2.0 * pi * uniform01();
        return {r * std::cos(theta), r * std::sin(theta)};
    }

  private:
    std::uint64_t state_;
};

enum class GridKind { Linear, Log };

struct GridSpec {
    GridKind kind = GridKind::Log;
    double lo = 0.1;
    double hi = 10.0;
    int n = 5;

    void validate() const {
        if (!(lo < hi) || n < 1) throw std::invalid_argument("GridSpec: requires lo < hi and n >= 1");
        if (kind == GridKind::Log && !(lo > 0.0)) throw std::invalid_argument("GridSpec: log grid requires lo > 0");
    }
};

inline std::vector<double> make_grid(const GridSpec& g) {
    g.validate();
    std::vector<double> pts;
    pts.reserve(g.n);
    if (g.n == 1) {
        pts.push_back(g.lo);
        return pts;
    }
    for (int j = 0; j < g.n; ++j) {
        const double u = static_cast<double>(j) / (g.n - 1);
        if (g.kind == GridKind::Linear) {
            pts.push_back(g.lo + u * (g.hi - g.lo));
        } else {
            pts.push_back(g.lo * std::exp(u * std::log(g.hi / g.lo)));
        }
    }
    return pts;
}

}  // namespace cesaro
