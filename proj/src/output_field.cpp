#include "vomech/output_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <vector>

#include "vomech/constants.hpp"
#include "vomech/errors.hpp"
#include "vomech/quadrature.hpp"

namespace vomech {

namespace {

using cd = std::complex<double>;

// Filter in units of omega_m: centre om, duration eps.
struct UnitFilter {
    double om = 0.0;
    double eps = 0.0;
};

UnitFilter to_units(const FilterSpec& f, double omega_m) {
    return {f.omega / omega_m, f.tau * omega_m};
}

double sinc(double x) {
    return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

cd unit_filter_fourier(const UnitFilter& f, double w) {
    const double x = 0.5 * (w - f.om) * f.eps;
    return std::sqrt(f.eps / constants::two_pi) * std::polar(sinc(x), x);
}

// Fourier transforms of Re g(t) and Im g(t).
std::pair<cd, cd> real_imag_transforms(const UnitFilter& f, double w) {
    const cd gp = unit_filter_fourier(f, w);
    const cd gm = std::conj(unit_filter_fourier(f, -w));
    return {0.5 * (gp + gm), (gp - gm) / cd(0.0, 2.0)};
}

double unit_noise(const LinearModel& m, double w) {
    if (std::isinf(m.thermal_ratio)) return m.gamma_m * std::abs(w);
    if (w == 0.0) return m.gamma_m / m.thermal_ratio;
    return m.gamma_m * w / std::tanh(m.thermal_ratio * w);
}

void check_model(const LinearModel& m) {
    if (!(m.kappa > 0.0) || !(m.gamma_m > 0.0) || !std::isfinite(m.delta))
        throw ArgumentError("linear model needs positive kappa and gamma_m and finite delta");
    if (!(m.thermal_ratio > 0.0)) throw ArgumentError("linear model needs a positive thermal ratio");
}

void require_stable(const Matrix6& a) {
    const StabilityReport rep = is_stable_eigen(a);
    if (!rep.stable)
        throw UnstableError("drift matrix is not stable (max Re lambda = " +
                            std::to_string(rep.max_real_part) + ")");
}

simd::KernelModel kernel_model(const LinearModel& m, simd::IntegrandKind kind) {
    simd::KernelModel k;
    k.kappa = m.kappa;
    k.gamma_m = m.gamma_m;
    k.delta = m.delta;
    k.gx = {m.g_te.real(), m.g_tm.real()};
    k.gy = {m.g_te.imag(), m.g_tm.imag()};
    k.kind = kind;
    return k;
}

// Runs the kernel over any number of nodes, scattering each batch into the
// entry-major layout the quadrature expects.
template <class NodeFill>
void run_kernel(simd::KernelFn kernel, const simd::KernelModel& km, std::span<const double> omegas,
                std::span<double> values, NodeFill fill) {
    const std::size_t n = omegas.size();
    simd::NodeBatch batch;
    alignas(32) double out[simd::kOutputWidth * simd::kBatch];
    for (std::size_t start = 0; start < n; start += simd::kBatch) {
        batch.count = std::min(simd::kBatch, n - start);
        for (std::size_t i = 0; i < batch.count; ++i) fill(batch, i, omegas[start + i]);
        kernel(km, batch, out);
        for (std::size_t e = 0; e < simd::kOutputWidth; ++e)
            for (std::size_t i = 0; i < batch.count; ++i)
                values[e * n + start + i] = out[e * simd::kBatch + i];
    }
}

std::vector<double> spectral_breakpoints(const Matrix6& a, double window,
                                         std::initializer_list<double> extra) {
    std::vector<double> pts = {-window, window, 0.0, -1.0, 1.0};
    for (double x : extra) {
        pts.push_back(x);
        pts.push_back(-x);
    }
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Matrix6>(a, false).eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) pts.push_back(ev[i].imag());
    std::vector<double> kept;
    for (double x : pts)
        if (x >= -window && x <= window) kept.push_back(x);
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return kept;
}

struct Assembled {
    Matrix6 v;
    double imag_residue = 0.0;
};

Assembled assemble_hermitian(const std::vector<double>& value) {
    Assembled r;
    for (std::size_t row = 0; row < 6; ++row)
        for (std::size_t col = row; col < 6; ++col) {
            const std::size_t idx = simd::upper_index(row, col);
            r.v(row, col) = r.v(col, row) = value[2 * idx];
            r.imag_residue = std::max(r.imag_residue, std::abs(value[2 * idx + 1]));
        }
    // Relative to the matrix scale, like the quadrature tolerance; the
    // mechanical variances reach 1e3 to 1e4.
    r.imag_residue /= std::max(1.0, r.v.cwiseAbs().maxCoeff());
    return r;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

quad::Options quad_options(const IntegrationConfig& cfg) {
    return {cfg.abs_tol, cfg.rel_tol, cfg.max_panels};
}

double output_window(const IntegrationConfig& cfg, const UnitFilter& te, const UnitFilter& tm) {
    const double lobe = std::max(std::abs(te.om) + 40.0 * constants::pi / te.eps,
                                 std::abs(tm.om) + 40.0 * constants::pi / tm.eps);
    return std::max(cfg.cutoff, lobe);
}

Matrix6 output_projector() {
    Matrix6 p = Matrix6::Zero();
    p.diagonal().head<4>().setOnes();
    return p;
}

} // namespace

FilterSpec FilterSpec::from_epsilon(double epsilon, double omega_over_omega_m, double omega_m) {
    FilterSpec f;
    f.epsilon = epsilon;
    f.tau = epsilon / omega_m;
    f.omega = omega_over_omega_m * omega_m;
    return f;
}

void FilterSpec::validate(double omega_m) const {
    if (!std::isfinite(omega)) throw ParameterError("omega_over_omega_m", "filter centre must be finite");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("epsilon", "filter time must be positive");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw ParameterError("epsilon", "filter bandwidth parameter must be positive");
    if (std::abs(epsilon - omega_m * tau) > 1e-12 * epsilon)
        throw ParameterError("epsilon", "epsilon and tau disagree (epsilon must equal omega_m tau)");
}

void IntegrationConfig::validate() const {
    if (!(cutoff >= 4.0) || !std::isfinite(cutoff)) throw ArgumentError("integration cutoff must be at least 4");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ArgumentError("integration tolerances must be positive");
    if (max_panels < 16) throw ArgumentError("integration panel budget too small");
}

cd filter_fourier(const FilterSpec& spec, double omega) {
    const double x = 0.5 * (omega - spec.omega) * spec.tau;
    return std::sqrt(spec.tau / constants::two_pi) * std::polar(sinc(x), x);
}

double mech_noise_psd(double omega, const DerivedParams& dp, double temperature_k) {
    const double rate = dp.gamma_m / dp.omega_m;
    if (temperature_k == 0.0) return rate * std::abs(omega);
    if (omega == 0.0) return 2.0 * dp.gamma_m * constants::k_boltzmann * temperature_k / (constants::hbar * dp.omega_m);
    const double x = constants::hbar * omega / (2.0 * constants::k_boltzmann * temperature_k);
    return rate * omega / std::tanh(x);
}

ComplexMatrix6 transfer_matrix(double omega, const Matrix6& a) {
    ComplexMatrix6 m = a.cast<cd>();
    m.diagonal().array() += cd(0.0, omega);
    Eigen::FullPivLU<ComplexMatrix6> lu(m);
    if (!lu.isInvertible()) throw NumericError("i w + A is singular at w = " + std::to_string(omega));
    return lu.inverse();
}

ComplexMatrix6 output_integrand(const LinearModel& model, const FilterSpec& te, const FilterSpec& tm,
                                double omega_m, double w) {
    const Matrix6 a = drift_matrix(model);
    const UnitFilter filt[2] = {to_units(te, omega_m), to_units(tm, omega_m)};
    const double k = model.kappa;
    const Matrix6 p = output_projector();

    ComplexMatrix6 t = ComplexMatrix6::Zero();
    for (int j = 0; j < 2; ++j) {
        const auto [gx, gy] = real_imag_transforms(filt[j], w);
        const double s = std::sqrt(2.0 * k);
        t(2 * j, 2 * j) = t(2 * j + 1, 2 * j + 1) = s * gx;
        t(2 * j, 2 * j + 1) = -s * gy;
        t(2 * j + 1, 2 * j) = s * gy;
    }
    t(4, 4) = t(5, 5) = 1.0 / std::sqrt(constants::two_pi);

    Matrix6 d = Matrix6::Zero();
    d.diagonal() << k, k, k, k, 0.0, unit_noise(model, w);

    const ComplexMatrix6 kmat = transfer_matrix(w, a) + p.cast<cd>() / (2.0 * k);
    const ComplexMatrix6 tk = t * kmat;
    const ComplexMatrix6 tp = t * p.cast<cd>() / (2.0 * k);
    return tk * d.cast<cd>() * tk.adjoint() - tp * d.cast<cd>() * tp.adjoint();
}

void output_integrand_batch(const LinearModel& model, const FilterSpec& te, const FilterSpec& tm,
                            double omega_m, std::span<const double> omegas, std::span<double> values,
                            simd::Backend backend) {
    if (values.size() < simd::kOutputWidth * omegas.size())
        throw ArgumentError("output_integrand_batch: value buffer too small");
    const UnitFilter filt[2] = {to_units(te, omega_m), to_units(tm, omega_m)};
    const double s = std::sqrt(2.0 * model.kappa);
    auto fill = [&](simd::NodeBatch& b, std::size_t i, double w) {
        b.omega[i] = w;
        b.noise[i] = unit_noise(model, w);
        for (int j = 0; j < 2; ++j) {
            const auto [gx, gy] = real_imag_transforms(filt[j], w);
            b.tx_re[j][i] = s * gx.real();
            b.tx_im[j][i] = s * gx.imag();
            b.ty_re[j][i] = s * gy.real();
            b.ty_im[j][i] = s * gy.imag();
        }
    };
    run_kernel(simd::kernel_for(backend), kernel_model(model, simd::IntegrandKind::filtered_output),
               omegas, values, fill);
}

OutputCM output_cm(const SteadyState& ss, const DerivedParams& dp, const FilterSpec& te,
                   const FilterSpec& tm, const IntegrationConfig& cfg) {
    return output_cm(linear_model(ss, dp), te, tm, dp.omega_m, cfg);
}

OutputCM output_cm(const LinearModel& model, const FilterSpec& te, const FilterSpec& tm,
                   double omega_m, const IntegrationConfig& cfg, simd::Backend backend) {
    check_model(model);
    te.validate(omega_m);
    tm.validate(omega_m);
    cfg.validate();
    const Matrix6 a = drift_matrix(model);
    require_stable(a);

    const UnitFilter ut = to_units(te, omega_m);
    const UnitFilter um = to_units(tm, omega_m);
    const double window = output_window(cfg, ut, um);
    const std::vector<double> pts = spectral_breakpoints(a, window, {ut.om, um.om});

    quad::BatchIntegrand f = [&](std::span<const double> nodes, std::span<double> values) {
        output_integrand_batch(model, te, tm, omega_m, nodes, values, backend);
    };
    const quad::Result r = quad::integrate(f, simd::kOutputWidth, pts, quad_options(cfg));
    if (!r.converged)
        throw NumericError("output covariance quadrature did not converge within the panel budget", max_of(r.error));

    Assembled as = assemble_hermitian(r.value);
    if (as.imag_residue > 1e-9)
        throw NumericError("output covariance has a relative imaginary residue above 1e-9", as.imag_residue);

    OutputCM out;
    out.v = 0.5 * (as.v + as.v.transpose()) + 0.5 * output_projector();
    out.imag_residue = as.imag_residue;
    out.error_estimate = max_of(r.error);
    out.evaluations = r.evaluations;
    out.physicality = validate_cm(out.v);
    if (!out.physicality.physical)
        throw NumericError("output covariance violates the uncertainty relation", out.physicality.margin);
    return out;
}

Matrix6 wideband_covariance(const LinearModel& model, const Matrix6& diffusion,
                            const IntegrationConfig& cfg, simd::Backend backend) {
    check_model(model);
    cfg.validate();
    Matrix6 expected = Matrix6::Zero();
    expected.diagonal() << model.kappa, model.kappa, model.kappa, model.kappa, 0.0, diffusion(5, 5);
    if ((diffusion - expected).cwiseAbs().maxCoeff() != 0.0)
        throw ArgumentError("wideband_covariance expects diag(kappa, kappa, kappa, kappa, 0, N)");
    const Matrix6 a = drift_matrix(model);
    require_stable(a);

    const double noise = diffusion(5, 5);
    auto fill = [&](simd::NodeBatch& b, std::size_t i, double w) {
        b.omega[i] = w;
        b.noise[i] = noise;
        for (int j = 0; j < 2; ++j) b.tx_re[j][i] = b.tx_im[j][i] = b.ty_re[j][i] = b.ty_im[j][i] = 0.0;
    };
    const simd::KernelModel km = kernel_model(model, simd::IntegrandKind::wideband);
    const simd::KernelFn kernel = simd::kernel_for(backend);
    quad::BatchIntegrand f = [&](std::span<const double> nodes, std::span<double> values) {
        run_kernel(kernel, km, nodes, values, fill);
    };
    std::vector<double> pts = {0.0};
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Matrix6>(a, false).eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) pts.push_back(ev[i].imag());
    const quad::Result r = quad::integrate_real_line(f, simd::kOutputWidth, 1.0, pts, quad_options(cfg));
    if (!r.converged)
        throw NumericError("wideband quadrature did not converge within the panel budget", max_of(r.error));
    Assembled as = assemble_hermitian(r.value);
    if (as.imag_residue > 1e-9)
        throw NumericError("wideband covariance has a relative imaginary residue above 1e-9", as.imag_residue);
    return as.v;
}

OutputDecomposition output_cm_decomposition(const LinearModel& model, const FilterSpec& te,
                                            const FilterSpec& tm, double omega_m,
                                            const IntegrationConfig& cfg) {
    check_model(model);
    te.validate(omega_m);
    tm.validate(omega_m);
    cfg.validate();
    const Matrix6 a = drift_matrix(model);
    require_stable(a);
    const UnitFilter filt[2] = {to_units(te, omega_m), to_units(tm, omega_m)};
    const double window = output_window(cfg, filt[0], filt[1]);
    const std::vector<double> pts = spectral_breakpoints(a, window, {filt[0].om, filt[1].om});
    const double k = model.kappa;
    const Matrix6 p = output_projector();

    // Entries 0..35: T M D M^dag T^dag; 36..71: the cross term with the
    // reflected input. Real parts only, row-major.
    constexpr std::size_t width = 72;
    quad::BatchIntegrand f = [&](std::span<const double> nodes, std::span<double> values) {
        const std::size_t n = nodes.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double w = nodes[i];
            ComplexMatrix6 t = ComplexMatrix6::Zero();
            for (int j = 0; j < 2; ++j) {
                const auto [gx, gy] = real_imag_transforms(filt[j], w);
                const double s = std::sqrt(2.0 * k);
                t(2 * j, 2 * j) = t(2 * j + 1, 2 * j + 1) = s * gx;
                t(2 * j, 2 * j + 1) = -s * gy;
                t(2 * j + 1, 2 * j) = s * gy;
            }
            t(4, 4) = t(5, 5) = 1.0 / std::sqrt(constants::two_pi);
            Matrix6 d = Matrix6::Zero();
            d.diagonal() << k, k, k, k, 0.0, unit_noise(model, w);
            const ComplexMatrix6 tm_ = t * transfer_matrix(w, a);
            const ComplexMatrix6 tp = t * p.cast<cd>() / (2.0 * k);
            const ComplexMatrix6 intra = tm_ * d.cast<cd>() * tm_.adjoint();
            const ComplexMatrix6 half = tm_ * d.cast<cd>() * tp.adjoint();
            const ComplexMatrix6 cross = half + half.adjoint();
            for (std::size_t e = 0; e < 36; ++e) {
                values[e * n + i] = intra(e / 6, e % 6).real();
                values[(36 + e) * n + i] = cross(e / 6, e % 6).real();
            }
        }
    };
    const quad::Result r = quad::integrate(f, width, pts, quad_options(cfg));
    if (!r.converged)
        throw NumericError("decomposition quadrature did not converge within the panel budget", max_of(r.error));

    OutputDecomposition out;
    for (std::size_t e = 0; e < 36; ++e) {
        out.intracavity(e / 6, e % 6) = r.value[e];
        out.cross(e / 6, e % 6) = r.value[36 + e];
    }
    // The filtered reflected vacuum integrates to P/2 exactly by filter
    // normalization; it is the term output_cm adds analytically.
    out.reflection = 0.5 * p;
    return out;
}

void write_integrand_samples(std::ostream& os, const LinearModel& model, const FilterSpec& te,
                             const FilterSpec& tm, double omega_m, std::span<const double> omegas) {
    os << "omega";
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) os << ",F" << r << c;
    os << '\n' << std::setprecision(17);
    for (double w : omegas) {
        const ComplexMatrix6 f = output_integrand(model, te, tm, omega_m, w);
        os << w;
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) os << ',' << f(r, c).real();
        os << '\n';
    }
}

} // namespace vomech
