#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace airynet {

/// Deterministic random source. mt19937_64 output is fully specified by
/// the standard and the Box-Muller transform avoids the
/// implementation-defined std::normal_distribution, so sampled matrices
/// are reproducible across platforms for a fixed seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // in [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    Eigen::MatrixXcd complex_gaussian(Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                m(i, j) = std::complex<double>(gauss(), gauss()) / std::sqrt(2.0);
        return m;
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a, used for content fingerprints of inputs echoed into run records.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace airynet
