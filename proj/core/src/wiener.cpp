#include "tamedns/wiener.hpp"

#include <cmath>
#include <stdexcept>

namespace tns {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c,
                         const std::array<std::uint32_t, 2>& k) {
    std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
    std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
    std::array<std::uint32_t, 4> out;
    out[0] = std::uint32_t(p1 >> 32) ^ c[1] ^ k[0];
    out[1] = std::uint32_t(p1);
    out[2] = std::uint32_t(p0 >> 32) ^ c[3] ^ k[1];
    out[3] = std::uint32_t(p0);
    c = out;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

std::array<double, 2> philox_normal_pair(std::uint64_t seed, std::uint64_t hi,
                                         std::uint64_t lo) {
    std::array<std::uint32_t, 4> ctr{std::uint32_t(lo), std::uint32_t(lo >> 32),
                                     std::uint32_t(hi), std::uint32_t(hi >> 32)};
    std::array<std::uint32_t, 2> key{std::uint32_t(seed), std::uint32_t(seed >> 32)};
    auto w = philox4x32(ctr, key);
    std::uint64_t a = (std::uint64_t(w[0]) << 32) | w[1];
    std::uint64_t b = (std::uint64_t(w[2]) << 32) | w[3];
    // uniforms in (0,1], 53-bit mantissa; a=0 maps to 1 so log is safe
    double u1 = double((a >> 11) + 1) * 0x1p-53;
    double u2 = double(b >> 11) * 0x1p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(th), r * std::sin(th)};
}

WienerPath::WienerPath(std::uint64_t seed, double dt, int n_steps, int j_dims)
    : seed_(seed), dt_(dt), n_steps_(n_steps), j_(j_dims) {
    if (dt <= 0.0) throw std::invalid_argument("WienerPath: dt must be > 0");
    if (n_steps < 0 || j_dims < 0)
        throw std::invalid_argument("WienerPath: negative dimensions");
    inc_.resize(std::size_t(n_steps) * j_dims);
    const double sd = std::sqrt(dt);
    for (int n = 0; n < n_steps; ++n)
        for (int j = 0; j < j_; ++j) {
            // counter = (step, dim); one normal per (n, j), the second of the
            // Box-Muller pair is discarded to keep the indexing stateless
            auto z = philox_normal_pair(seed, std::uint64_t(n), std::uint64_t(j));
            inc_[std::size_t(n) * j_ + j] = sd * z[0];
        }
}

WienerPath WienerPath::coarsen(int factor) const {
    if (factor <= 0 || n_steps_ % factor != 0)
        throw std::invalid_argument("WienerPath::coarsen: factor must divide n_steps");
    WienerPath out;
    out.seed_ = seed_;
    out.dt_ = dt_ * factor;
    out.n_steps_ = n_steps_ / factor;
    out.j_ = j_;
    out.inc_.assign(std::size_t(out.n_steps_) * j_, 0.0);
    for (int n = 0; n < n_steps_; ++n)
        for (int j = 0; j < j_; ++j)
            out.inc_[std::size_t(n / factor) * j_ + j] += inc_[std::size_t(n) * j_ + j];
    return out;
}

}  // namespace tns
