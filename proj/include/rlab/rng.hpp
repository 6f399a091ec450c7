#pragma once

#include <cstdint>
#include <cmath>

#include "rlab/geometry.hpp"

namespace rlab {

/// splitmix64 stream. Sweeps derive one generator per item index from a base
/// seed, so results do not depend on thread scheduling or draw order across
/// items.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng for_item(std::uint64_t seed, std::uint64_t index) {
        Rng base(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        base.next();
        base.next();
        return base;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Vec3 unit_vector() {
        // Marsaglia rejection on the cube.
        for (;;) {
            Vec3 v(uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0));
            const double n2 = v.squaredNorm();
            if (n2 > 1e-6 && n2 <= 1.0) return v / std::sqrt(n2);
        }
    }

    /// Uniform rotation via random unit quaternion.
    Mat3 rotation() {
        for (;;) {
            const double q0 = uniform(-1.0, 1.0), q1 = uniform(-1.0, 1.0);
            const double q2 = uniform(-1.0, 1.0), q3 = uniform(-1.0, 1.0);
            const double n2 = q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3;
            if (n2 < 1e-6 || n2 > 1.0) continue;
            return Eigen::Quaterniond(q0, q1, q2, q3).normalized().toRotationMatrix();
        }
    }

private:
    std::uint64_t state_;
};

} // namespace rlab
