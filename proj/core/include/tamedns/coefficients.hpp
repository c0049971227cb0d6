#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tamedns/field.hpp"
#include "tamedns/modulus.hpp"
#include "tamedns/transport_noise.hpp"

namespace tns {

/// Scalar coefficient of time: base + amp * sin(omega * t + phase).
/// The analytic long-time average is base.
struct TimeFn {
    double base = 1.0;
    double amp = 0.0;
    double omega = 1.0;
    double phase = 0.0;

    double operator()(double t) const;
    double mean() const { return base; }
    bool constant() const { return amp == 0.0; }
    double lower() const { return base - std::abs(amp); }
    double upper() const { return base + std::abs(amp); }
};

/// Built-in drift families f(t, u).  Each ships with its analytic time
/// average so the averaging oracle has a ground truth to compare against.
struct DriftFamily {
    enum class Kind { Zero, Linear, Osgood, ConstantField };
    Kind kind = Kind::Zero;
    TimeFn time;           // scalar time factor multiplying the u-part
    double scale = 0.0;    // overall strength
    double fz_delta = 0.25;  // Osgood kink threshold for the coefficient map
    std::shared_ptr<SpectralField> base_field;  // ConstantField payload

    SpectralField eval(double t, const SpectralField& u) const;
    /// Analytic time average f*(u).
    SpectralField averaged(const SpectralField& u) const;
    bool active() const { return kind != Kind::Zero; }
};

/// Diffusion families g(t, u) as J Hilbert-Schmidt columns.
struct DiffusionFamily {
    enum class Kind { Zero, DiagLow, AdditiveLow };
    enum class TimeKind { Const, Sin, Decay };  // Decay: amp/(1+t) envelope
    Kind kind = Kind::Zero;
    TimeKind time_kind = TimeKind::Const;
    TimeFn time;           // used for Const/Sin; Decay uses time.base + time.amp/(1+t)
    double gamma = 0.0;    // column strength
    int columns = 0;
    double mode_cut_sq = 2.0;  // DiagLow acts on modes with |k|^2 <= cut

    double time_factor(double t) const;
    std::vector<SpectralField> eval(double t, const SpectralField& u) const;
    std::vector<SpectralField> averaged(const SpectralField& u) const;
    bool active() const { return kind != Kind::Zero && columns > 0; }
};

/// The full coefficient tuple (eta1, eta2, f, g, K) with the growth and
/// monotonicity metadata the validators certify.
struct CoefficientSet {
    TimeFn eta1{1.0, 0.0, 1.0, 0.0};
    TimeFn eta2{1.0, 0.0, 1.0, 0.0};
    DriftFamily f;
    DiffusionFamily g;
    TransportNoiseSpec transport;
    double growth_c = 1.0;
    double growth_m = 1.0;
    ModulusOfContinuity modulus = ModulusOfContinuity::linear();
    double mono_c = 1.0;
    double zeta = 0.5;

    double a1() const { return eta1.lower(); }
    double a2() const { return eta1.upper(); }
    double a3() const { return eta2.lower(); }
    double a4() const { return eta2.upper(); }
};

/// Substitute t -> t/epsilon in every time-dependent member.
CoefficientSet oscillate(const CoefficientSet& set, double epsilon);

struct EtaAverage {
    double mean = 0.0;        // (1/T) int_{t0}^{t0+T} eta
    double rate_bound = 0.0;  // sup over a t0 mesh of |mean - eta_star|
    double eta_star = 0.0;    // estimate from the largest window
};
EtaAverage empirical_average_eta(const std::function<double(double)>& eta,
                                 double t0, double T);

struct FieldAverage {
    SpectralField mean;
    double rate_estimate = 0.0;
};
/// (1/T) int f(s,u) ds on a frozen u.  When an analytic average is supplied
/// the rate is ||mean - f*(u)|| / (||u|| + M), else the cross-window
/// discrepancy between the two half-windows.
FieldAverage empirical_average_f(
    const std::function<SpectralField(double, const SpectralField&)>& f,
    const SpectralField& u, double t0, double T, double M,
    const SpectralField* analytic_avg = nullptr);

struct ColumnsAverage {
    std::vector<SpectralField> mean;
    double rate_estimate = 0.0;  // (1/T) int ||g(s,u)-g*(u)||^2_HS / (||u||^2+M)
};
ColumnsAverage empirical_average_g(
    const std::function<std::vector<SpectralField>(double, const SpectralField&)>& g,
    const SpectralField& u, double t0, double T, double M,
    const std::vector<SpectralField>* analytic_avg = nullptr);

struct MonotonicityReport {
    int pairs = 0;
    int violations = 0;
    double worst_margin = 0.0;  // max of lhs - c A(||u-v||^2); <= 0 means pass
    bool pass() const { return violations == 0; }
};

/// Certifies the inner-product form <u-v, f(u)-f(v)> <= c A(||u-v||^2) over a
/// corpus of close field pairs; set squared_form for the squared-distance
/// variant ||f(u)-f(v)||^2 <= c A(||u-v||^2).
MonotonicityReport verify_weak_monotonicity(
    const std::function<SpectralField(double, const SpectralField&)>& f,
    const ModulusOfContinuity& mod, double c, double zeta,
    const std::vector<std::pair<SpectralField, SpectralField>>& corpus,
    bool squared_form = false, double t = 0.3);

struct GrowthReport {
    int samples = 0;
    int violations = 0;
    double worst_ratio = 0.0;  // max (lhs) / (C||u||^2 + M)
    bool pass() const { return violations == 0; }
};

/// Samples the linear-growth bound <u,f(t,u)> v ||g(t,u)||^2 <= C||u||^2 + M.
GrowthReport verify_growth(const CoefficientSet& set,
                           const std::vector<SpectralField>& corpus);

}  // namespace tns
