#include "tamedns/transform.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace tns {
namespace {

// FFTW's planner is not thread-safe; execution on a cached plan with
// fftw_execute_dft is.  Plans are created once per grid size with
// FFTW_UNALIGNED so they run on arbitrary caller buffers.
std::mutex plan_mutex;

struct PlanPair {
    fftw_plan fwd = nullptr;  // FFTW_FORWARD  (analysis, unnormalised)
    fftw_plan bwd = nullptr;  // FFTW_BACKWARD (synthesis)
};

PlanPair& plans_for(int n) {
    static std::vector<std::pair<int, PlanPair>> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    for (auto& e : cache)
        if (e.first == n) return e.second;
    std::vector<cplx> buf(std::size_t(n) * n * n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace_back(n, pp);
    return cache.back().second;
}

void run(fftw_plan plan, std::vector<cplx>& buf) {
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace

std::vector<double> to_physical_component(const SpectralField& f, int axis) {
    const int n = f.grid().n();
    const int n3 = f.grid().size();
    std::vector<cplx> buf(f.data().begin() + std::size_t(axis) * n3,
                          f.data().begin() + std::size_t(axis + 1) * n3);
    run(plans_for(n).bwd, buf);
    std::vector<double> out(n3);
    for (int i = 0; i < n3; ++i) out[i] = buf[i].real();
    return out;
}

PhysicalField to_physical(const SpectralField& f) {
    PhysicalField p;
    p.n = f.grid().n();
    for (int a = 0; a < 3; ++a) p.v[a] = to_physical_component(f, a);
    return p;
}

SpectralField to_spectral(const PhysicalField& p, const TorusGrid& grid) {
    if (p.n != grid.n())
        throw std::invalid_argument("to_spectral: size mismatch");
    const int n3 = grid.size();
    SpectralField f(grid);
    std::vector<cplx> buf(n3);
    for (int a = 0; a < 3; ++a) {
        for (int i = 0; i < n3; ++i) buf[i] = p.v[a][i];
        run(plans_for(p.n).fwd, buf);
        for (int i = 0; i < n3; ++i) f.at(a, i) = buf[i] / double(n3);
    }
    return f;
}

}  // namespace tns
