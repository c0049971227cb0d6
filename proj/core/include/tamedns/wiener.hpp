#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace tns {

/// Philox4x32-10 counter-based generator.  Stateless: the caller supplies the
/// 128-bit counter, the key is the seed.  Identical output on every platform.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

/// Two standard normals from counter (hi, lo) under the given seed, via
/// Box-Muller on the Philox output.
std::array<double, 2> philox_normal_pair(std::uint64_t seed, std::uint64_t hi,
                                         std::uint64_t lo);

/// Brownian increments of a J-dimensional truncated cylindrical Wiener
/// process: dW_j^n ~ N(0, dt), materialized from (seed, n, j) so a fixed
/// (seed, dt, n_steps, J) reproduces bitwise-identical paths.
class WienerPath {
public:
    WienerPath(std::uint64_t seed, double dt, int n_steps, int j_dims);

    double dt() const { return dt_; }
    int n_steps() const { return n_steps_; }
    int dims() const { return j_; }
    std::uint64_t seed() const { return seed_; }
    double horizon() const { return dt_ * n_steps_; }

    /// dW_j at step n.
    double increment(int n, int j) const { return inc_[std::size_t(n) * j_ + j]; }

    /// Sum consecutive increments into blocks of `factor` steps: the same
    /// Brownian path sampled on the coarser mesh dt*factor.  Requires
    /// n_steps divisible by factor.
    WienerPath coarsen(int factor) const;

private:
    WienerPath() = default;

    std::uint64_t seed_;
    double dt_;
    int n_steps_;
    int j_;
    std::vector<double> inc_;  // [n * J + j]
};

}  // namespace tns
