// dynamics.hpp — Propagators: exact matrix exponential (Hermitian via
// eigendecomposition, general via scaling-and-squaring), adaptive
// Dormand-Prince 5(4) integration of the amplitude equations, closed-form
// detuned/resonant solutions, and no-jump cavity decay.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ramansim/errors.hpp"
#include "ramansim/hilbert.hpp"
#include "ramansim/models.hpp"

namespace ramansim::dynamics {

using hilbert::Complex;
using hilbert::HilbertSpec;
using hilbert::Matrix;
using hilbert::Mode;
using hilbert::OperatorMatrix;
using hilbert::StateVector;
using hilbert::Vector;
using models::I;
using models::ManifoldSpec;
using models::SystemParams;

// ------------------------------- Trajectory ----------------------------------

struct Trajectory {
    std::vector<double> times;          // strictly increasing, units of 1/g
    std::vector<Vector> states;         // one amplitude vector per time
    std::vector<std::string> labels;    // one per tracked amplitude component
    std::string model_tag;

    std::size_t size() const { return times.size(); }

    // Largest |norm(state) - norm(state0)| over the trajectory
    double norm_drift() const {
        if (states.empty()) return 0.0;
        const double n0 = states.front().norm();
        double drift = 0.0;
        for (const auto& s : states) drift = std::max(drift, std::abs(s.norm() - n0));
        return drift;
    }
};

// ----------------------------- Matrix exponentials ---------------------------

// U(t) = exp(-i H t) for Hermitian H, by eigendecomposition
inline Matrix hermitian_propagator(const Matrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw numerical_error("hermitian_propagator: eigendecomposition failed");
    const Eigen::VectorXd& w = es.eigenvalues();
    Vector phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-I * w(k) * t);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// U(t) = exp(-i H t) for arbitrary H (Pade scaling-and-squaring)
inline Matrix general_propagator(const Matrix& h, double t) {
    return (Complex(0.0, -t) * h).exp();
}

inline Matrix propagator(const OperatorMatrix& h, double t) {
    return h.hermitian ? hermitian_propagator(h.mat, t) : general_propagator(h.mat, t);
}

// psi(t) = exp(-i H t) psi0. Non-Hermitian operators are routed to the
// general exponential.
inline StateVector evolve_exact(const OperatorMatrix& h, const StateVector& psi0, double t) {
    if (h.dim() != psi0.amps.size())
        throw contract_error("evolve_exact: operator/state dimension mismatch");
    return StateVector{propagator(h, t) * psi0.amps, psi0.spec};
}

// --------------------- Adaptive Dormand-Prince 5(4) core ---------------------

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    std::size_t max_steps = 100'000'000;
};

namespace detail {

// Dormand-Prince coefficients; the 5th-order solution is advanced (local
// extrapolation) and the embedded 4th-order difference drives the controller.
struct Dp5Tableau {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0,
                            e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                            e4 = 125.0 / 192.0 - 393.0 / 640.0,
                            e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                            e6 = 11.0 / 84.0 - 187.0 / 2100.0, e7 = -1.0 / 40.0;
    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
};

template <class Rhs>
class Dp5Stepper {
public:
    Dp5Stepper(Rhs rhs, OdeOptions opt) : rhs_(std::move(rhs)), opt_(opt) {
        if (opt_.rtol < 1e-13)
            throw contract_error("ode: rtol must be >= 1e-13, got " + std::to_string(opt_.rtol));
        if (opt_.atol <= 0.0) throw contract_error("ode: atol must be > 0");
    }

    // Advance y from t0 to t1, hitting t1 exactly; FSAL derivative is reused
    // across calls so a time grid costs nothing extra.
    void integrate_to(double& t, Vector& y, double t1) {
        if (t1 == t) return;
        if (!have_k1_) {
            k1_ = rhs_(t, y);
            have_k1_ = true;
        }
        if (h_ == 0.0) h_ = initial_step(t, y, t1);
        const double direction = (t1 > t) ? 1.0 : -1.0;
        std::size_t steps = 0;
        while (direction * (t1 - t) > 0.0) {
            if (++steps > opt_.max_steps)
                throw numerical_error("ode: step budget exhausted at t = " + std::to_string(t));
            double h = std::min(std::abs(h_), std::abs(t1 - t)) * direction;
            if (std::abs(h) <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0))
                throw numerical_error("ode: step-size underflow at t = " + std::to_string(t));
            const bool last = (std::abs(h) >= std::abs(t1 - t));

            const double err = attempt_step(t, y, h);
            if (err <= 1.0) {
                t = last ? t1 : t + h;
                y.swap(y_new_);
                k1_.swap(k7_);
                grow_step(h, err);
            } else {
                h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
            }
        }
    }

private:
    double initial_step(double t, const Vector& y, double t1) const {
        const double span = std::abs(t1 - t);
        Vector f = rhs_(t, y);
        const double ynorm = scaled_norm(y, y);
        const double fnorm = scaled_norm(f, y);
        double h = (fnorm > 1e-12) ? 0.01 * ynorm / fnorm : 1e-4 * span;
        if (h <= 0.0 || !std::isfinite(h)) h = 1e-4 * span;
        return std::min(h, span);
    }

    double scaled_norm(const Vector& v, const Vector& scale_ref) const {
        double m = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double sc = opt_.atol + opt_.rtol * std::abs(scale_ref(i));
            m = std::max(m, std::abs(v(i)) / sc);
        }
        return m;
    }

    // One trial step of size h from (t, y); fills y_new_, k7_; returns scaled error
    double attempt_step(double t, const Vector& y, double h) {
        using T = Dp5Tableau;
        k2_ = rhs_(t + T::c2 * h, y + h * (T::a21 * k1_));
        k3_ = rhs_(t + T::c3 * h, y + h * (T::a31 * k1_ + T::a32 * k2_));
        k4_ = rhs_(t + T::c4 * h, y + h * (T::a41 * k1_ + T::a42 * k2_ + T::a43 * k3_));
        k5_ = rhs_(t + T::c5 * h,
                   y + h * (T::a51 * k1_ + T::a52 * k2_ + T::a53 * k3_ + T::a54 * k4_));
        k6_ = rhs_(t + h, y + h * (T::a61 * k1_ + T::a62 * k2_ + T::a63 * k3_ +
                                   T::a64 * k4_ + T::a65 * k5_));
        y_new_ = y + h * (T::b1 * k1_ + T::b3 * k3_ + T::b4 * k4_ + T::b5 * k5_ + T::b6 * k6_);
        k7_ = rhs_(t + h, y_new_);
        const Vector err_vec = h * (T::e1 * k1_ + T::e3 * k3_ + T::e4 * k4_ + T::e5 * k5_ +
                                    T::e6 * k6_ + T::e7 * k7_);
        double err = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double sc =
                opt_.atol + opt_.rtol * std::max(std::abs(y(i)), std::abs(y_new_(i)));
            const double ratio = std::abs(err_vec(i)) / sc;
            if (!std::isfinite(ratio)) return std::numeric_limits<double>::infinity();
            err = std::max(err, ratio);
        }
        return err;
    }

    void grow_step(double h, double err) {
        const double factor =
            (err <= 0.0) ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
        h_ = std::abs(h) * factor;
    }

    Rhs rhs_;
    OdeOptions opt_;
    double h_ = 0.0;
    bool have_k1_ = false;
    Vector k1_, k2_, k3_, k4_, k5_, k6_, k7_, y_new_;
};

} // namespace detail

// Integrate y' = rhs(t, y) across an increasing time grid, recording the state
// at every grid point (the first grid entry is the initial time).
template <class Rhs>
Trajectory integrate_grid(Rhs&& rhs, const Vector& y0, const std::vector<double>& t_grid,
                          const OdeOptions& opt, std::string model_tag,
                          std::vector<std::string> labels) {
    if (t_grid.size() < 1) throw contract_error("ode: time grid must be nonempty");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw contract_error("ode: time grid must be strictly increasing");

    detail::Dp5Stepper<std::decay_t<Rhs>> stepper(std::forward<Rhs>(rhs), opt);
    Trajectory traj;
    traj.model_tag = std::move(model_tag);
    traj.labels = std::move(labels);
    traj.times.reserve(t_grid.size());
    traj.states.reserve(t_grid.size());

    double t = t_grid.front();
    Vector y = y0;
    traj.times.push_back(t);
    traj.states.push_back(y);
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        stepper.integrate_to(t, y, t_grid[i]);
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    return traj;
}

inline std::vector<double> uniform_grid(double t0, double t1, std::size_t n_samples) {
    if (n_samples < 2) throw contract_error("time grid needs at least 2 samples");
    std::vector<double> g(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        g[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    return g;
}

// ------------------------------- evolve_ode ----------------------------------

enum class RhsKind { full_manifold, adiabatic };

// Adaptive integration of the three-state (full_manifold) or eliminated
// two-state (adiabatic) amplitude equations over a time grid.
inline Trajectory evolve_ode(RhsKind kind, const SystemParams& p, const ManifoldSpec& m,
                             const Vector& d0, const std::vector<double>& t_grid,
                             double rtol = 1e-10, double atol = 1e-12) {
    p.validate();
    m.validate();
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;

    const auto names = models::manifold_labels(m);
    if (kind == RhsKind::full_manifold) {
        if (d0.size() != 3)
            throw contract_error("evolve_ode: full_manifold needs a 3-component state");
        auto rhs = [&p, m](double, const Vector& d) { return models::amplitude_rhs(p, m, d); };
        return integrate_grid(rhs, d0, t_grid, opt, "full_manifold",
                              {hilbert::label_string(names[0]), hilbert::label_string(names[1]),
                               hilbert::label_string(names[2])});
    }
    if (d0.size() != 2)
        throw contract_error("evolve_ode: adiabatic needs a 2-component state");
    p.require_nonzero_delta1("evolve_ode");
    auto rhs = [&p, m](double, const Vector& d) { return models::adiabatic_rhs(p, m, d); };
    return integrate_grid(rhs, d0, t_grid, opt, "adiabatic",
                          {hilbert::label_string(names[0]), hilbert::label_string(names[2])});
}

// --------------------------- Closed-form solutions ---------------------------

// Check that the closed forms apply: (n, mu) = (1, 0) and real equal couplings
inline void require_analytic_manifold(const SystemParams& p, const ManifoldSpec& m,
                                      const std::string& who) {
    if (m.n != 1 || m.mu != 0)
        throw contract_error(who + ": closed form is stated for the (n=1, mu=0) manifold, got (n=" +
                             std::to_string(m.n) + ", mu=" + std::to_string(m.mu) + ")");
    if (std::abs(p.g1_mag - p.g2_mag) > 1e-12 || !p.couplings_in_phase())
        throw contract_error(who + ": closed form assumes equal in-phase couplings g1 = g2");
}

// Detuned two-state solution on the (1,0) manifold:
//   d1(t) = e^{i nu t/2} [ (cos(Om t/2) + i (D/Om) sin(Om t/2)) d1(0)
//                          + (2 i g^2/(delta1 Om)) sin(Om t/2) d3(0) ]
//   d3(t) = same with d1 <-> d3 and D -> -D
inline std::pair<Complex, Complex> analytic_detuned(const SystemParams& p, const ManifoldSpec& m,
                                                    Complex d1_0, Complex d3_0, double t) {
    p.validate();
    p.require_nonzero_delta1("analytic_detuned");
    require_analytic_manifold(p, m, "analytic_detuned");
    const auto rates = models::derived_rates(p);
    const double D = p.two_photon_detuning();
    const double om = rates.omega_big;
    if (om == 0.0)
        throw contract_error("analytic_detuned: Omega = 0 (no coupling, no detuning) is singular");
    const Complex phase = std::exp(I * rates.nu * t / 2.0);
    const double c = std::cos(om * t / 2.0);
    const double s = std::sin(om * t / 2.0);
    const Complex cross = 2.0 * I * p.g_squared() / (p.delta1 * om) * s;
    const Complex d1 = phase * ((c + I * (D / om) * s) * d1_0 + cross * d3_0);
    const Complex d3 = phase * ((c - I * (D / om) * s) * d3_0 + cross * d1_0);
    return {d1, d3};
}

// Resonant limit: d_i(t) = (d1(0)+d3(0))(e^{i theta}-1)/2 + d_i(0),
// theta = 2 g^2 t / delta
inline std::pair<Complex, Complex> analytic_resonant(const SystemParams& p, Complex d1_0,
                                                     Complex d3_0, double t) {
    p.validate();
    p.require_nonzero_delta1("analytic_resonant");
    if (!p.two_photon_resonant())
        throw contract_error("analytic_resonant: requires two-photon resonance (delta1 = delta2), "
                             "got delta1 - delta2 = " + std::to_string(p.two_photon_detuning()));
    const double theta = models::theta_at(p, t);
    const Complex common = 0.5 * (d1_0 + d3_0) * (std::exp(I * theta) - 1.0);
    return {common + d1_0, common + d3_0};
}

// ------------------------------ Cavity decay ---------------------------------

inline Matrix full_decay_generator(const SystemParams& p, const HilbertSpec& spec) {
    Matrix h = models::full_rotated_hamiltonian(p, spec).mat;
    if (p.kappa > 0.0) {
        const Matrix na = hilbert::number_matrix(spec, Mode::a).mat;
        const Matrix nb = hilbert::number_matrix(spec, Mode::b).mat;
        h -= I * (p.kappa / 2.0) * (na + nb);
    }
    return h;
}

// No-jump conditional evolution under H_full - i (kappa/2)(a^dag a + b^dag b);
// the squared norm of the result is the no-photon-loss probability.
inline std::pair<StateVector, double> evolve_with_decay(const SystemParams& p,
                                                        const HilbertSpec& spec,
                                                        const StateVector& psi0, double t) {
    p.validate();
    if (psi0.amps.size() != spec.dimension())
        throw contract_error("evolve_with_decay: state/spec dimension mismatch");
    const Matrix h = full_decay_generator(p, spec);
    const Vector amps = general_propagator(h, t) * psi0.amps;
    const double survival = amps.squaredNorm();
    return {StateVector{amps, spec}, survival};
}

} // namespace ramansim::dynamics
