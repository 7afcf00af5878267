// models.hpp — Hamiltonian builders and amplitude-equation right-hand sides for
// the driven Raman system: full rotated-frame model, three-state manifold
// equations, adiabatically eliminated dynamics, effective Hamiltonians with and
// without Stark shifts, spin-form and arbitrary-phase variants.
//
// Conventions: hbar = 1, frequencies in units of the reference coupling g,
// times in units of 1/g. The rotated frame absorbs the interaction-picture
// phases e^{i*delta1*t}, e^{i*(delta1-delta2)*t} into the diagonal, so every
// generator here is time independent.

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ramansim/errors.hpp"
#include "ramansim/hilbert.hpp"

namespace ramansim::models {

using hilbert::AtomLevel;
using hilbert::Complex;
using hilbert::HilbertSpec;
using hilbert::Matrix;
using hilbert::Mode;
using hilbert::OperatorMatrix;
using hilbert::Vector;

inline constexpr Complex I{0.0, 1.0};

// ------------------------------ SystemParams --------------------------------

// Physical parameters, all in units of the reference coupling g.
struct SystemParams {
    double g1_mag = 1.0;   // |g1|, mode-a coupling on e<->g
    double g2_mag = 1.0;   // |g2|, mode-b coupling on e<->f
    double phi1 = 0.0;     // arg(g1), radians
    double phi2 = 0.0;     // arg(g2), radians
    double delta1 = 10.0;  // one-photon detuning of mode a
    double delta2 = 10.0;  // one-photon detuning of mode b
    double kappa = 0.0;    // cavity amplitude decay, 0 = lossless

    Complex g1() const { return std::polar(g1_mag, phi1); }
    Complex g2() const { return std::polar(g2_mag, phi2); }

    // Relative coupling phase: e^{i*phi} = g1 g2* / (|g1| |g2|)
    double relative_phase() const { return phi1 - phi2; }

    // Two-photon detuning delta1 - delta2
    double two_photon_detuning() const { return delta1 - delta2; }

    // g^2 used by the effective models; meaningful for equal magnitudes
    double g_squared() const { return g1_mag * g2_mag; }

    bool couplings_in_phase(double tol = 1e-12) const {
        return std::abs(std::remainder(relative_phase(), 2.0 * M_PI)) <= tol;
    }

    bool two_photon_resonant(double tol = 1e-12) const {
        return std::abs(two_photon_detuning()) <= tol;
    }

    void validate() const {
        if (g1_mag < 0.0 || g2_mag < 0.0)
            throw contract_error("SystemParams: coupling magnitudes must be >= 0");
        if (kappa < 0.0)
            throw contract_error("SystemParams: kappa must be >= 0");
    }

    void require_nonzero_delta1(const std::string& who) const {
        if (delta1 == 0.0)
            throw contract_error(who + ": delta1 = 0 is singular (appears in 1/delta1)");
    }

    bool operator==(const SystemParams&) const = default;
};

// Advisory validity notes for the adiabatic elimination; the large-detuning
// regime needs |delta1| >> g and |delta1 - delta2| << g.
inline std::vector<std::string> adiabaticity_warnings(const SystemParams& p) {
    std::vector<std::string> out;
    if (std::abs(p.delta1) < 5.0 * p.g1_mag)
        out.push_back("adiabatic validity: |delta1| = " + std::to_string(std::abs(p.delta1)) +
                      " is below 5*g1; the eliminated model may be inaccurate");
    if (std::abs(p.two_photon_detuning()) > p.g1_mag)
        out.push_back("adiabatic validity: |delta1 - delta2| = " +
                      std::to_string(std::abs(p.two_photon_detuning())) +
                      " exceeds g1; the eliminated model assumes it is small");
    return out;
}

// ------------------------------ ManifoldSpec --------------------------------

// Raman-coupled three-state family {|g,n,mu>, |e,n-1,mu>, |f,n-1,mu+1>}
// labelled by the initial photon numbers (n, mu).
struct ManifoldSpec {
    int n = 1;    // initial photons in mode a; >= 1 so |e,n-1,mu> exists
    int mu = 0;   // initial photons in mode b

    void validate() const {
        if (n < 1) throw contract_error("ManifoldSpec: n must be >= 1");
        if (mu < 0) throw contract_error("ManifoldSpec: mu must be >= 0");
    }

    bool operator==(const ManifoldSpec&) const = default;
};

// ------------------------------ DerivedRates --------------------------------

// Effective two-state rates for the (n=1, mu=0) manifold.
struct DerivedRates {
    double omega_big = 0.0;  // Omega = sqrt[(2g^2/delta1)^2 + (delta1-delta2)^2]
    double nu = 0.0;         // nu = 2g^2/delta1 - (delta1 - delta2)
};

inline DerivedRates derived_rates(const SystemParams& p) {
    p.validate();
    p.require_nonzero_delta1("derived_rates");
    const double two_g2_over_d = 2.0 * p.g_squared() / p.delta1;
    const double d = p.two_photon_detuning();
    return DerivedRates{std::hypot(two_g2_over_d, d), two_g2_over_d - d};
}

// theta = 2 g^2 t / delta1, the resonant Raman pulse area
inline double theta_at(const SystemParams& p, double t) {
    p.require_nonzero_delta1("theta_at");
    return 2.0 * p.g_squared() * t / p.delta1;
}

// -------------------------- Full rotated-frame model -------------------------

// H/hbar = delta1 |e><e| + (delta1-delta2) |f><f|
//          + (g1 |e><g| a + g2 |e><f| b + h.c.)
// The auxiliary |k>, when present, gets no terms at all.
inline OperatorMatrix full_rotated_hamiltonian(const SystemParams& p,
                                               const HilbertSpec& spec) {
    p.validate();
    spec.validate();
    const Matrix a = hilbert::annihilation_matrix(spec, Mode::a).mat;
    const Matrix b = hilbert::annihilation_matrix(spec, Mode::b).mat;
    const Matrix eg = hilbert::atom_transition_matrix(spec, AtomLevel::e, AtomLevel::g).mat;
    const Matrix ef = hilbert::atom_transition_matrix(spec, AtomLevel::e, AtomLevel::f).mat;
    const Matrix ee = hilbert::atom_transition_matrix(spec, AtomLevel::e, AtomLevel::e).mat;
    const Matrix ff = hilbert::atom_transition_matrix(spec, AtomLevel::f, AtomLevel::f).mat;

    Matrix h = p.delta1 * ee + p.two_photon_detuning() * ff;
    const Matrix v = p.g1() * eg * a + p.g2() * ef * b;
    h += v + v.adjoint();
    return OperatorMatrix::hermitian_checked(std::move(h));
}

// Total-excitation counter |e><e| + a^dag a + b^dag b; commutes with the full
// model, so each Raman manifold is exactly closed. |f> carries weight 0: the
// e<->f arm trades the f-excitation against a b-photon, and |g,n,mu>,
// |e,n-1,mu>, |f,n-1,mu+1> all sit at n + mu.
inline OperatorMatrix excitation_number(const HilbertSpec& spec) {
    const Matrix ee = hilbert::atom_transition_matrix(spec, AtomLevel::e, AtomLevel::e).mat;
    const Matrix na = hilbert::number_matrix(spec, Mode::a).mat;
    const Matrix nb = hilbert::number_matrix(spec, Mode::b).mat;
    return OperatorMatrix::hermitian_checked(ee + na + nb);
}

// Manifold basis labels (d1, d2, d3) for given (n, mu)
inline std::vector<hilbert::BasisIndex> manifold_labels(const ManifoldSpec& m) {
    m.validate();
    return {hilbert::BasisIndex{AtomLevel::g, m.n, m.mu},
            hilbert::BasisIndex{AtomLevel::e, m.n - 1, m.mu},
            hilbert::BasisIndex{AtomLevel::f, m.n - 1, m.mu + 1}};
}

// --------------------------- Amplitude equations -----------------------------

// Three-state amplitude equations in the rotated frame:
//   d1' = -i g1* sqrt(n) d2
//   d2' = -i [g1 sqrt(n) d1 + g2 sqrt(mu+1) d3] - i delta1 d2
//   d3' = -i g2* sqrt(mu+1) d2 - i (delta1-delta2) d3
inline Vector amplitude_rhs(const SystemParams& p, const ManifoldSpec& m, const Vector& d) {
    m.validate();
    const double sn = std::sqrt(static_cast<double>(m.n));
    const double sm = std::sqrt(static_cast<double>(m.mu + 1));
    const Complex g1 = p.g1();
    const Complex g2 = p.g2();
    Vector out(3);
    out(0) = -I * std::conj(g1) * sn * d(1);
    out(1) = -I * (g1 * sn * d(0) + g2 * sm * d(2)) - I * p.delta1 * d(1);
    out(2) = -I * std::conj(g2) * sm * d(1) - I * p.two_photon_detuning() * d(2);
    return out;
}

// Adiabatic limit (d2' ~ 0, d2 = -[g1 sqrt(n) d1 + g2 sqrt(mu+1) d3]/delta1):
//   d1' = +i g1* sqrt(n)  [g1 sqrt(n) d1 + g2 sqrt(mu+1) d3] / delta1
//   d3' = +i g2* sqrt(mu+1) [ ... ] / delta1 - i (delta1-delta2) d3
inline Vector adiabatic_rhs(const SystemParams& p, const ManifoldSpec& m, const Vector& d13) {
    m.validate();
    p.require_nonzero_delta1("adiabatic_rhs");
    const double sn = std::sqrt(static_cast<double>(m.n));
    const double sm = std::sqrt(static_cast<double>(m.mu + 1));
    const Complex s = (p.g1() * sn * d13(0) + p.g2() * sm * d13(1)) / p.delta1;
    Vector out(2);
    out(0) = I * std::conj(p.g1()) * sn * s;
    out(1) = I * std::conj(p.g2()) * sm * s - I * p.two_photon_detuning() * d13(1);
    return out;
}

// --------------------------- Effective Hamiltonians --------------------------

// include_stark = true:
//   H/hbar = -(1/delta1) [ |g1|^2 |g><g| a^dag a + |g2|^2 |f><f| b^dag b
//                          + g1* g2 |g><f| a^dag b + g1 g2* |f><g| a b^dag ]
//            + (delta1-delta2) |f><f|
// which for real equal couplings is the textbook Raman form with Stark shifts.
//
// include_stark = false (two-photon resonance required):
//   H/hbar = -(1/delta1) [ g1* g2 |g><f| a^dag b + g1 g2* |f><g| a b^dag ]
// i.e. -(g^2/delta) (S^- a^dag b + S^+ a b^dag) for real equal couplings.
inline OperatorMatrix effective_hamiltonian(const SystemParams& p, const HilbertSpec& spec,
                                            bool include_stark) {
    p.validate();
    spec.validate();
    p.require_nonzero_delta1("effective_hamiltonian");
    if (!include_stark && !p.two_photon_resonant())
        throw contract_error("effective_hamiltonian: the Stark-free form is only stated "
                             "under two-photon resonance (delta1 = delta2), got delta1 - delta2 = " +
                             std::to_string(p.two_photon_detuning()));

    const Matrix a = hilbert::annihilation_matrix(spec, Mode::a).mat;
    const Matrix b = hilbert::annihilation_matrix(spec, Mode::b).mat;
    const Matrix gf = hilbert::atom_transition_matrix(spec, AtomLevel::g, AtomLevel::f).mat;
    const Matrix gg = hilbert::atom_transition_matrix(spec, AtomLevel::g, AtomLevel::g).mat;
    const Matrix ff = hilbert::atom_transition_matrix(spec, AtomLevel::f, AtomLevel::f).mat;

    const Complex g1 = p.g1();
    const Complex g2 = p.g2();
    const Matrix swap_gf = std::conj(g1) * g2 * gf * (a.adjoint() * b);

    Matrix h = -(swap_gf + swap_gf.adjoint()) / p.delta1;
    if (include_stark) {
        h -= (p.g1_mag * p.g1_mag * gg * (a.adjoint() * a) +
              p.g2_mag * p.g2_mag * ff * (b.adjoint() * b)) /
             p.delta1;
        h += p.two_photon_detuning() * ff;
    }
    return OperatorMatrix::hermitian_checked(std::move(h));
}

// ----------------------------- Spin-form variants ----------------------------

// Qubit subspace order, frozen: {|g>|g_R>, |g>|e_R>, |f>|g_R>, |f>|e_R>}
// with the photonic qubit |g_R> = |0_a,1_b>, |e_R> = |1_a,0_b>.
inline std::vector<hilbert::BasisIndex> qubit_subspace_labels() {
    return {hilbert::BasisIndex{AtomLevel::g, 0, 1}, hilbert::BasisIndex{AtomLevel::g, 1, 0},
            hilbert::BasisIndex{AtomLevel::f, 0, 1}, hilbert::BasisIndex{AtomLevel::f, 1, 0}};
}

namespace spin {

// 2x2 spin-1/2 blocks in the (down, up) order used above:
// atomic qubit down = |g>, up = |f>; photonic qubit down = |g_R>, up = |e_R>.
inline Matrix up2()    { Matrix m(2, 2); m << 0, 0, 1, 0; return m; }  // |up><down|
inline Matrix down2()  { return up2().adjoint(); }
inline Matrix z2()     { Matrix m(2, 2); m << -0.5, 0, 0, 0.5; return m; }
inline Matrix id2()    { return Matrix::Identity(2, 2); }

inline Matrix kron4(const Matrix& atom, const Matrix& photon) {
    Matrix out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block(2 * i, 2 * j, 2, 2) = atom(i, j) * photon;
    return out;
}

inline Matrix Sp() { return kron4(up2(), id2()); }
inline Matrix Sm() { return kron4(down2(), id2()); }
inline Matrix Sz() { return kron4(z2(), id2()); }
inline Matrix Rp() { return kron4(id2(), up2()); }
inline Matrix Rm() { return kron4(id2(), down2()); }
inline Matrix Rz() { return kron4(id2(), z2()); }

// S.R = Sx Rx + Sy Ry + Sz Rz = (S+ R- + S- R+)/2 + Sz Rz
inline Matrix dot_SR() {
    return 0.5 * (Sp() * Rm() + Sm() * Rp()) + Sz() * Rz();
}

} // namespace spin

enum class SpinForm { exchange, dot_product };

// exchange:     H = -(g^2/delta1) [S+R- + S-R+ - 2 Sz Rz + 1/2]
//                   + (delta1-delta2) (Sz + 1/2)
// dot_product:  H = (2 g^2/delta) [S.R - 1/4]   (resonant, g2 = -g1 case)
// Both returned as 4x4 matrices on the frozen qubit-subspace order.
inline OperatorMatrix spin_form_hamiltonian(const SystemParams& p, SpinForm form) {
    p.validate();
    p.require_nonzero_delta1("spin_form_hamiltonian");
    const double g2 = p.g_squared();
    Matrix h;
    if (form == SpinForm::exchange) {
        if (!p.couplings_in_phase())
            throw contract_error("spin_form_hamiltonian: the exchange form assumes in-phase "
                                 "couplings (phi1 = phi2)");
        h = -(g2 / p.delta1) *
                (spin::Sp() * spin::Rm() + spin::Sm() * spin::Rp() -
                 2.0 * spin::Sz() * spin::Rz() + 0.5 * Matrix::Identity(4, 4)) +
            p.two_photon_detuning() * (spin::Sz() + 0.5 * Matrix::Identity(4, 4));
    } else {
        if (!p.two_photon_resonant())
            throw contract_error("spin_form_hamiltonian: the dot-product form requires "
                                 "two-photon resonance (delta1 = delta2)");
        h = (2.0 * g2 / p.delta1) * (spin::dot_SR() - 0.25 * Matrix::Identity(4, 4));
    }
    return OperatorMatrix::hermitian_checked(std::move(h));
}

} // namespace ramansim::models
