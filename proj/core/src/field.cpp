#include "tamedns/field.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

#include "tamedns/transform.hpp"

namespace tns {

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}
SpectralField& SpectralField::operator-=(const SpectralField& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}
SpectralField& SpectralField::operator*=(double s) {
    for (auto& z : c_) z *= s;
    return *this;
}

bool SpectralField::finite() const {
    for (const auto& z : c_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double SpectralField::divergence_linf() const {
    double worst = 0.0;
    for (int idx = 0; idx < size(); ++idx) {
        auto k = grid_->wavevector(idx);
        cplx d = double(k[0]) * at(0, idx) + double(k[1]) * at(1, idx) +
                 double(k[2]) * at(2, idx);
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

void SpectralField::dealias() {
    for (int a = 0; a < 3; ++a)
        for (int idx = 0; idx < size(); ++idx)
            if (!grid_->dealiased(idx)) at(a, idx) = 0.0;
}

void SpectralField::hermitize() {
    for (int idx = 0; idx < size(); ++idx) {
        auto k = grid_->wavevector(idx);
        // slots at -n/2 have no mirror partner; drop them so conjugate
        // symmetry can hold exactly
        bool has_mirror = true;
        for (int a = 0; a < 3; ++a)
            if (k[a] == -grid_->n() / 2) has_mirror = false;
        if (!has_mirror) {
            for (int a = 0; a < 3; ++a) at(a, idx) = 0.0;
            continue;
        }
        int midx = grid_->index(-k[0], -k[1], -k[2]);
        if (midx < idx) continue;
        for (int a = 0; a < 3; ++a) {
            if (midx == idx) {
                at(a, idx) = cplx(at(a, idx).real(), 0.0);
            } else {
                cplx avg = 0.5 * (at(a, idx) + std::conj(at(a, midx)));
                at(a, idx) = avg;
                at(a, midx) = std::conj(avg);
            }
        }
    }
}

SpectralField leray_project(const SpectralField& f) {
    if (!f.finite())
        throw std::invalid_argument("leray_project: non-finite coefficients");
    SpectralField out = f;
    const TorusGrid& g = f.grid();
    for (int idx = 0; idx < g.size(); ++idx) {
        double ks = g.k_sq(idx);
        if (ks == 0.0) continue;
        auto k = g.wavevector(idx);
        cplx dot = double(k[0]) * f.at(0, idx) + double(k[1]) * f.at(1, idx) +
                   double(k[2]) * f.at(2, idx);
        cplx scale = dot / ks;
        for (int a = 0; a < 3; ++a) out.at(a, idx) -= double(k[a]) * scale;
    }
    return out;
}

double sobolev_norm_sq(const SpectralField& f, int m) {
    if (m < 0 || m > 2)
        throw std::invalid_argument("sobolev_norm_sq: m must be 0, 1 or 2");
    const TorusGrid& g = f.grid();
    double acc = 0.0;
    for (int idx = 0; idx < g.size(); ++idx) {
        double w = 1.0 + g.k_sq(idx);
        double wm = (m == 0) ? 1.0 : (m == 1 ? w : w * w);
        for (int a = 0; a < 3; ++a) acc += wm * std::norm(f.at(a, idx));
    }
    return acc * TorusGrid::volume;
}

double inner_product(const SpectralField& u, const SpectralField& v, int m) {
    if (!(u.grid() == v.grid()))
        throw std::invalid_argument("inner_product: grid mismatch");
    if (m < 0 || m > 1)
        throw std::invalid_argument("inner_product: m must be 0 or 1");
    const TorusGrid& g = u.grid();
    double acc = 0.0;
    for (int idx = 0; idx < g.size(); ++idx) {
        double w = (m == 0) ? 1.0 : 1.0 + g.k_sq(idx);
        for (int a = 0; a < 3; ++a)
            acc += w * (u.at(a, idx) * std::conj(v.at(a, idx))).real();
    }
    return acc * TorusGrid::volume;
}

double l4_norm(const SpectralField& f) {
    PhysicalField p = to_physical(f);
    const int n3 = p.n * p.n * p.n;
    double acc = 0.0;
    for (int i = 0; i < n3; ++i) {
        double s = p.v[0][i] * p.v[0][i] + p.v[1][i] * p.v[1][i] + p.v[2][i] * p.v[2][i];
        acc += s * s;
    }
    return std::pow(acc * TorusGrid::volume / n3, 0.25);
}

double linf_norm(const SpectralField& f) {
    PhysicalField p = to_physical(f);
    const int n3 = p.n * p.n * p.n;
    double worst = 0.0;
    for (int i = 0; i < n3; ++i) {
        double s = p.v[0][i] * p.v[0][i] + p.v[1][i] * p.v[1][i] + p.v[2][i] * p.v[2][i];
        worst = std::max(worst, s);
    }
    return std::sqrt(worst);
}

double mixed_grad_norm_sq(const SpectralField& f) {
    PhysicalField p = to_physical(f);
    const TorusGrid& g = f.grid();
    const int n3 = g.size();
    std::vector<double> grad_sq(n3, 0.0);
    SpectralField d(g);
    for (int a = 0; a < 3; ++a) {
        for (int j = 0; j < 3; ++j) {
            for (int idx = 0; idx < n3; ++idx) {
                auto k = g.wavevector(idx);
                d.at(0, idx) = cplx(0.0, double(k[j])) * f.at(a, idx);
            }
            // reuse component 0 as a scalar slot
            std::vector<double> dj = to_physical_component(d, 0);
            for (int i = 0; i < n3; ++i) grad_sq[i] += dj[i] * dj[i];
        }
    }
    double acc = 0.0;
    for (int i = 0; i < n3; ++i) {
        double usq = p.v[0][i] * p.v[0][i] + p.v[1][i] * p.v[1][i] + p.v[2][i] * p.v[2][i];
        acc += usq * grad_sq[i];
    }
    return acc * TorusGrid::volume / n3;
}

SpectralField random_div_free_field(const TorusGrid& grid, std::uint64_t seed,
                                    double amplitude, double decay) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return (double(rng() >> 11) + 0.5) / 9007199254740992.0;  // 2^53
    };
    auto normal = [&]() {
        double u1 = uniform(), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };
    SpectralField f(grid);
    for (int a = 0; a < 3; ++a)
        for (int idx = 0; idx < grid.size(); ++idx) {
            if (!grid.dealiased(idx) || grid.k_sq(idx) == 0.0) {
                // keep the sequence position independent of the mask
                normal();
                normal();
                continue;
            }
            double amp = std::exp(-decay * grid.k_sq(idx));
            f.at(a, idx) = amp * cplx(normal(), normal());
        }
    f.hermitize();
    f = leray_project(f);
    double nrm = std::sqrt(sobolev_norm_sq(f, 0));
    if (nrm > 0.0) f *= amplitude / nrm;
    return f;
}

namespace {
constexpr std::uint32_t kSnapshotMagic = 0x544e5346;  // "TNSF"
constexpr std::uint32_t kConventionTag = 1;           // exp(+ikx) synthesis, 1/n^3 analysis
}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& f) {
    std::uint32_t n = std::uint32_t(f.grid().n());
    double vol = TorusGrid::volume;
    os.write(reinterpret_cast<const char*>(&kSnapshotMagic), 4);
    os.write(reinterpret_cast<const char*>(&n), 4);
    os.write(reinterpret_cast<const char*>(&kConventionTag), 4);
    os.write(reinterpret_cast<const char*>(&vol), 8);
    os.write(reinterpret_cast<const char*>(f.data().data()),
             std::streamsize(f.data().size() * sizeof(cplx)));
}

SpectralField read_snapshot(std::istream& is, const TorusGrid& grid) {
    std::uint32_t magic = 0, n = 0, tag = 0;
    double vol = 0.0;
    is.read(reinterpret_cast<char*>(&magic), 4);
    is.read(reinterpret_cast<char*>(&n), 4);
    is.read(reinterpret_cast<char*>(&tag), 4);
    is.read(reinterpret_cast<char*>(&vol), 8);
    if (!is || magic != kSnapshotMagic || tag != kConventionTag)
        throw std::runtime_error("read_snapshot: bad header");
    if (int(n) != grid.n())
        throw std::runtime_error("read_snapshot: grid size mismatch");
    SpectralField f(grid);
    is.read(reinterpret_cast<char*>(f.data().data()),
            std::streamsize(f.data().size() * sizeof(cplx)));
    if (!is) throw std::runtime_error("read_snapshot: truncated payload");
    return f;
}

}  // namespace tns
