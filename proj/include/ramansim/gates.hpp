// gates.hpp — Gate-level protocols and verification: QPG detuning/timing
// conditions, truth-table evaluation for all gate families, Hadamard sandwich
// for CNOT, SWAP unitaries (including coupling-phase variants), projector
// identity, fidelity/leakage metrics, and the cavity-decay feasibility bound.
//
// Truth-table convention: columns are propagated in the rotated frame.
// A computational basis state that is an exact eigenstate of the chosen model
// (a dark state) only accrues its free phase there; that phase is removed, so
// dark rows read exactly 1 while Raman-coupled rows keep the rotated-frame
// amplitudes of the closed-form solutions. This is the reference in which the
// gate tables are stated.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ramansim/dynamics.hpp"
#include "ramansim/errors.hpp"
#include "ramansim/hilbert.hpp"
#include "ramansim/models.hpp"

namespace ramansim::gates {

using hilbert::AtomLevel;
using hilbert::BasisIndex;
using hilbert::Complex;
using hilbert::HilbertSpec;
using hilbert::Matrix;
using hilbert::OperatorMatrix;
using hilbert::Vector;
using models::I;
using models::ManifoldSpec;
using models::SystemParams;

// ---------------------------- Kinds and models -------------------------------

enum class GateKind {
    qpg_photon_atom,    // photonic-b / atomic-ground phase gate
    qpg_aux_atom,       // phase gate on {|k>, |g>} x photonic qubit
    cnot,               // Hadamard-QPG-Hadamard
    swap,               // resonant spin-exchange SWAP
    swap_phase,         // SWAP with arbitrary coupling phase
    qpg_no_stark_2pi,   // Stark-free 2*pi-pulse phase gate
};

enum class GateModel { full, effective_stark, effective_no_stark, analytic };

inline const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::qpg_photon_atom: return "qpg_photon_atom";
        case GateKind::qpg_aux_atom: return "qpg_aux_atom";
        case GateKind::cnot: return "cnot";
        case GateKind::swap: return "swap";
        case GateKind::swap_phase: return "swap_phase";
        case GateKind::qpg_no_stark_2pi: return "qpg_no_stark_2pi";
    }
    return "?";
}

inline const char* model_name(GateModel m) {
    switch (m) {
        case GateModel::full: return "full";
        case GateModel::effective_stark: return "effective_stark";
        case GateModel::effective_no_stark: return "effective_no_stark";
        case GateModel::analytic: return "analytic";
    }
    return "?";
}

struct GateSpec {
    GateKind kind = GateKind::qpg_photon_atom;
    GateModel model = GateModel::analytic;
    SystemParams params;
    double gate_time = 0.0;   // units of 1/g; must be > 0
};

// ------------------------- QPG condition and timing --------------------------

// Detuning condition making nu vanish: delta2 = delta1 - 2 g^2 / delta1
inline double qpg_detuning_for(double delta1, double g_squared = 1.0) {
    if (delta1 == 0.0)
        throw contract_error("qpg_detuning_for: delta1 = 0 is singular");
    return delta1 - 2.0 * g_squared / delta1;
}

// Half Rabi period at the QPG condition: T = pi delta1 / (sqrt(2) g^2)
inline double qpg_gate_time(double delta1, double g_squared = 1.0) {
    if (delta1 <= 0.0)
        throw contract_error("qpg_gate_time: delta1 must be > 0");
    return M_PI * delta1 / (std::sqrt(2.0) * g_squared);
}

// Protocol time per gate family: QPG kinds use the detuned half period,
// SWAP kinds theta = pi, the Stark-free phase gate theta = 2*pi.
inline double default_gate_time(GateKind kind, const SystemParams& p) {
    p.require_nonzero_delta1("default_gate_time");
    switch (kind) {
        case GateKind::qpg_photon_atom:
        case GateKind::qpg_aux_atom:
        case GateKind::cnot:
            return qpg_gate_time(p.delta1, p.g_squared());
        case GateKind::swap:
        case GateKind::swap_phase:
            return M_PI * p.delta1 / (2.0 * p.g_squared());
        case GateKind::qpg_no_stark_2pi:
            return M_PI * p.delta1 / p.g_squared();
    }
    throw contract_error("default_gate_time: unknown gate kind");
}

// --------------------------- Decay feasibility -------------------------------

struct Feasibility {
    double value = 0.0;   // pi delta1 kappa / (sqrt(2) g^2)
    bool feasible = false;
};

// The gate must complete within the cavity lifetime: T < 1/kappa, i.e.
// pi delta1 kappa / (sqrt(2) g^2) < 1.
inline Feasibility decay_feasibility(double delta1, double kappa, double g_squared = 1.0) {
    if (delta1 <= 0.0)
        throw contract_error("decay_feasibility: delta1 must be > 0");
    if (kappa < 0.0)
        throw contract_error("decay_feasibility: kappa must be >= 0");
    const double value = M_PI * delta1 * kappa / (std::sqrt(2.0) * g_squared);
    return Feasibility{value, value < 1.0};
}

// ------------------------ Computational bases, targets -----------------------

// Frozen row/column orders matching the printed truth tables.
inline std::vector<BasisIndex> computational_basis(GateKind kind) {
    switch (kind) {
        case GateKind::qpg_photon_atom:
        case GateKind::cnot:
        case GateKind::qpg_no_stark_2pi:
            // {|0_b,g>, |0_b,f>, |1_b,g>, |1_b,f>}, mode a in vacuum
            return {BasisIndex{AtomLevel::g, 0, 0}, BasisIndex{AtomLevel::f, 0, 0},
                    BasisIndex{AtomLevel::g, 0, 1}, BasisIndex{AtomLevel::f, 0, 1}};
        case GateKind::qpg_aux_atom:
            // {|k,g_R>, |k,e_R>, |g,g_R>, |g,e_R>}
            return {BasisIndex{AtomLevel::k, 0, 1}, BasisIndex{AtomLevel::k, 1, 0},
                    BasisIndex{AtomLevel::g, 0, 1}, BasisIndex{AtomLevel::g, 1, 0}};
        case GateKind::swap:
        case GateKind::swap_phase:
            // {|g,g_R>, |g,e_R>, |f,g_R>, |f,e_R>}
            return {BasisIndex{AtomLevel::g, 0, 1}, BasisIndex{AtomLevel::g, 1, 0},
                    BasisIndex{AtomLevel::f, 0, 1}, BasisIndex{AtomLevel::f, 1, 0}};
    }
    throw contract_error("computational_basis: unknown gate kind");
}

// Target table; columns are inputs in the frozen order
inline Matrix ideal_table(GateKind kind, double phi = 0.0) {
    Matrix m = Matrix::Zero(4, 4);
    switch (kind) {
        case GateKind::qpg_photon_atom:
        case GateKind::qpg_aux_atom:
        case GateKind::qpg_no_stark_2pi:
            m(0, 0) = 1.0; m(1, 1) = 1.0; m(2, 2) = 1.0; m(3, 3) = -1.0;
            return m;
        case GateKind::cnot:
            m(0, 0) = 1.0; m(1, 1) = 1.0; m(3, 2) = 1.0; m(2, 3) = 1.0;
            return m;
        case GateKind::swap:
        case GateKind::swap_phase:
            m(0, 0) = 1.0; m(3, 3) = 1.0;
            m(2, 1) = -std::exp(I * phi);    // |g>|e_R> -> -e^{i phi} |f>|g_R>
            m(1, 2) = -std::exp(-I * phi);   // |f>|g_R> -> -e^{-i phi} |g>|e_R>
            return m;
    }
    throw contract_error("ideal_table: unknown gate kind");
}

// ------------------------------- GateReport ----------------------------------

struct GateReport {
    GateKind kind = GateKind::qpg_photon_atom;
    GateModel model = GateModel::analytic;
    SystemParams params;
    double gate_time = 0.0;
    std::vector<BasisIndex> basis;    // frozen computational order
    Matrix truth_table;               // (i,j) = <basis_i| U |basis_j>
    Matrix ideal;
    double fidelity = 0.0;
    double leakage = 0.0;
    Eigen::MatrixXd phase_errors;     // arg(actual * conj(ideal)); NaN off-pattern
    Feasibility feasibility;
    std::vector<std::string> warnings;
};

// ----------------------------- Fidelity metric -------------------------------

// fidelity = |tr(P U_ideal^dag U_actual P)| / d on the d-dimensional subspace,
// leakage = mean probability of ending outside it. subspace[i] gives the row
// of u_actual carrying ideal row i.
inline std::pair<double, double> gate_fidelity(const Matrix& u_actual, const Matrix& u_ideal,
                                               const std::vector<int>& subspace) {
    const auto d = static_cast<Eigen::Index>(subspace.size());
    if (u_ideal.rows() != d || u_ideal.cols() != d)
        throw contract_error("gate_fidelity: ideal matrix does not match subspace size");
    if (u_actual.rows() != u_actual.cols())
        throw contract_error("gate_fidelity: actual matrix must be square");
    for (int idx : subspace)
        if (idx < 0 || idx >= u_actual.rows())
            throw contract_error("gate_fidelity: subspace index out of range");

    Matrix block(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) block(i, j) = u_actual(subspace[i], subspace[j]);

    const double fid = std::abs((u_ideal.adjoint() * block).trace()) / static_cast<double>(d);
    double kept = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) kept += block.col(j).squaredNorm();
    const double leak = std::max(0.0, 1.0 - kept / static_cast<double>(d));
    return {fid, leak};
}

// ------------------------------ Hadamard -------------------------------------

// |g> -> (|g>+|f>)/sqrt(2), |f> -> (|g>-|f>)/sqrt(2), identity elsewhere
inline OperatorMatrix hadamard_atom(const HilbertSpec& spec) {
    spec.validate();
    const double r = 1.0 / std::sqrt(2.0);
    const Matrix gg = hilbert::atom_transition_matrix(spec, AtomLevel::g, AtomLevel::g).mat;
    const Matrix ff = hilbert::atom_transition_matrix(spec, AtomLevel::f, AtomLevel::f).mat;
    const Matrix gf = hilbert::atom_transition_matrix(spec, AtomLevel::g, AtomLevel::f).mat;
    const Matrix fg = hilbert::atom_transition_matrix(spec, AtomLevel::f, AtomLevel::g).mat;
    Matrix h = hilbert::identity(spec) - gg - ff + r * (gg + gf + fg - ff);
    return OperatorMatrix::hermitian_checked(std::move(h));
}

// --------------------------- Model propagators -------------------------------

namespace detail {

// Closed-form full-space unitary: identity except the (n=1, mu=0) Raman pair
// {|g,1,0>, |f,0,1>}, which carries the two-state solution (the detuned form,
// or the Stark-free Rabi form when stark_free is set).
inline Matrix analytic_unitary(const SystemParams& p, const HilbertSpec& spec, double t,
                               bool stark_free) {
    p.require_nonzero_delta1("analytic model");
    if (std::abs(p.g1_mag - p.g2_mag) > 1e-12 || !p.couplings_in_phase())
        throw contract_error("analytic model: closed forms assume equal in-phase couplings");
    Matrix u = hilbert::identity(spec);
    const int i1 = hilbert::basis_index(spec, BasisIndex{AtomLevel::g, 1, 0});
    const int i3 = hilbert::basis_index(spec, BasisIndex{AtomLevel::f, 0, 1});
    if (stark_free) {
        if (!p.two_photon_resonant())
            throw contract_error("analytic model: the Stark-free form requires two-photon "
                                 "resonance (delta1 = delta2)");
        const double x = p.g_squared() * t / p.delta1;
        u(i1, i1) = std::cos(x);
        u(i3, i3) = std::cos(x);
        u(i1, i3) = I * std::sin(x);
        u(i3, i1) = I * std::sin(x);
        return u;
    }
    const auto rates = models::derived_rates(p);
    if (rates.omega_big == 0.0) return u;   // fully decoupled: nothing moves
    const double D = p.two_photon_detuning();
    const Complex phase = std::exp(I * rates.nu * t / 2.0);
    const double c = std::cos(rates.omega_big * t / 2.0);
    const double s = std::sin(rates.omega_big * t / 2.0);
    const Complex cross = 2.0 * I * p.g_squared() / (p.delta1 * rates.omega_big) * s;
    u(i1, i1) = phase * (c + I * (D / rates.omega_big) * s);
    u(i3, i3) = phase * (c - I * (D / rates.omega_big) * s);
    u(i1, i3) = phase * cross;
    u(i3, i1) = phase * cross;
    return u;
}

inline OperatorMatrix model_hamiltonian(const GateSpec& gate, const HilbertSpec& spec) {
    switch (gate.model) {
        case GateModel::full:
            return models::full_rotated_hamiltonian(gate.params, spec);
        case GateModel::effective_stark:
            return models::effective_hamiltonian(gate.params, spec, true);
        case GateModel::effective_no_stark:
            return models::effective_hamiltonian(gate.params, spec, false);
        case GateModel::analytic:
            throw contract_error("model_hamiltonian: the analytic model has no matrix generator");
    }
    throw contract_error("model_hamiltonian: unknown model");
}

} // namespace detail

// Rotated-frame propagator for the gate, with the free phase of every dark
// computational basis state removed (see file header). Always unitary.
inline Matrix gate_unitary(const GateSpec& gate, const HilbertSpec& spec) {
    spec.validate();
    gate.params.validate();
    if (!(gate.gate_time > 0.0))
        throw contract_error("gate_unitary: gate_time must be > 0");
    if (gate.kind == GateKind::qpg_aux_atom && spec.n_levels < 4)
        throw contract_error("gate_unitary: the auxiliary-state gate needs n_levels = 4");
    if (spec.n_max_a < 1 || spec.n_max_b < 1)
        throw contract_error("gate_unitary: gate scenarios need n_max_a, n_max_b >= 1");

    if (gate.model == GateModel::analytic)
        return detail::analytic_unitary(gate.params, spec, gate.gate_time,
                                        gate.kind == GateKind::qpg_no_stark_2pi);

    const OperatorMatrix h = detail::model_hamiltonian(gate, spec);
    Matrix u = dynamics::hermitian_propagator(h.mat, gate.gate_time);

    // Dark computational states: H|j> = lambda|j> exactly, so the referenced
    // column is exactly |j>.
    const double scale = std::max(1.0, h.mat.cwiseAbs().maxCoeff());
    for (const BasisIndex& label : computational_basis(gate.kind)) {
        const int j = hilbert::basis_index(spec, label);
        double residual = 0.0;
        for (Eigen::Index r = 0; r < h.mat.rows(); ++r)
            if (r != j) residual = std::max(residual, std::abs(h.mat(r, j)));
        if (residual <= 1e-12 * scale) {
            u.col(j).setZero();
            u(j, j) = 1.0;
        }
    }
    return u;
}

// --------------------------- Truth-table evaluation --------------------------

inline GateReport evaluate_truth_table(const GateSpec& gate, const HilbertSpec& spec) {
    const SystemParams& p = gate.params;
    p.validate();

    if ((gate.kind == GateKind::swap || gate.kind == GateKind::swap_phase) &&
        !p.two_photon_resonant())
        throw contract_error("evaluate_truth_table: SWAP gates require two-photon resonance "
                             "(delta1 = delta2), got delta1 - delta2 = " +
                             std::to_string(p.two_photon_detuning()));
    if (gate.kind == GateKind::qpg_no_stark_2pi && !p.two_photon_resonant())
        throw contract_error("evaluate_truth_table: the 2pi-pulse phase gate is stated under "
                             "two-photon resonance (delta1 = delta2)");

    GateReport rep;
    rep.kind = gate.kind;
    rep.model = gate.model;
    rep.params = p;
    rep.gate_time = gate.gate_time;
    rep.basis = computational_basis(gate.kind);
    rep.ideal = ideal_table(gate.kind, p.relative_phase());

    // Advisory checks: the QPG only works at the detuning/timing condition,
    // and the eliminated models rely on large detuning.
    if (gate.kind == GateKind::qpg_photon_atom || gate.kind == GateKind::qpg_aux_atom) {
        if (p.two_photon_resonant())
            rep.warnings.push_back("two-photon resonance breaks the phase-gate condition "
                                   "delta1 - delta2 = 2 g^2 / delta1");
        else if (std::abs(p.delta2 - qpg_detuning_for(p.delta1, p.g_squared())) > 1e-9)
            rep.warnings.push_back("detunings do not satisfy the phase-gate condition "
                                   "delta1 - delta2 = 2 g^2 / delta1");
        else if (std::abs(gate.gate_time - qpg_gate_time(p.delta1, p.g_squared())) > 1e-9)
            rep.warnings.push_back("gate_time differs from the phase-gate half period "
                                   "T = pi delta1 / (sqrt(2) g^2)");
    }
    if (gate.model != GateModel::full)
        for (auto& w : models::adiabaticity_warnings(p)) rep.warnings.push_back(std::move(w));

    const Matrix u = gate_unitary(gate, spec);

    std::vector<int> idx;
    idx.reserve(rep.basis.size());
    for (const auto& label : rep.basis) idx.push_back(hilbert::basis_index(spec, label));

    rep.truth_table = Matrix::Zero(4, 4);
    for (int jc = 0; jc < 4; ++jc)
        for (int ir = 0; ir < 4; ++ir) rep.truth_table(ir, jc) = u(idx[ir], idx[jc]);

    std::tie(rep.fidelity, rep.leakage) = gate_fidelity(u, rep.ideal, idx);

    rep.phase_errors = Eigen::MatrixXd::Constant(4, 4, std::numeric_limits<double>::quiet_NaN());
    for (int jc = 0; jc < 4; ++jc)
        for (int ir = 0; ir < 4; ++ir)
            if (std::abs(rep.ideal(ir, jc)) > 1e-12)
                rep.phase_errors(ir, jc) =
                    std::arg(rep.truth_table(ir, jc) * std::conj(rep.ideal(ir, jc)));

    rep.feasibility = (p.delta1 > 0.0) ? decay_feasibility(p.delta1, p.kappa, p.g_squared())
                                       : Feasibility{};
    return rep;
}

// ------------------------------- CNOT ----------------------------------------

// Hadamard on the atom, phase gate, Hadamard again; the field qubit controls
// the atomic qubit. The detuning condition is a hard precondition here.
inline GateReport cnot_via_sandwich(const SystemParams& p, const HilbertSpec& spec,
                                    GateModel model) {
    p.validate();
    p.require_nonzero_delta1("cnot_via_sandwich");
    const double want_delta2 = qpg_detuning_for(p.delta1, p.g_squared());
    if (std::abs(p.delta2 - want_delta2) > 1e-9)
        throw contract_error("cnot_via_sandwich: detunings must satisfy the phase-gate "
                             "condition delta1 - delta2 = 2 g^2 / delta1 (expected delta2 = " +
                             std::to_string(want_delta2) + ")");

    GateSpec qpg{GateKind::qpg_photon_atom, model, p,
                 qpg_gate_time(p.delta1, p.g_squared())};
    const Matrix u_qpg = gate_unitary(qpg, spec);
    const Matrix had = hadamard_atom(spec).mat;
    const Matrix u_cnot = had * u_qpg * had;

    GateReport rep;
    rep.kind = GateKind::cnot;
    rep.model = model;
    rep.params = p;
    rep.gate_time = qpg.gate_time;
    rep.basis = computational_basis(GateKind::cnot);
    rep.ideal = ideal_table(GateKind::cnot);
    if (model != GateModel::full)
        for (auto& w : models::adiabaticity_warnings(p)) rep.warnings.push_back(std::move(w));

    std::vector<int> idx;
    for (const auto& label : rep.basis) idx.push_back(hilbert::basis_index(spec, label));
    rep.truth_table = Matrix::Zero(4, 4);
    for (int jc = 0; jc < 4; ++jc)
        for (int ir = 0; ir < 4; ++ir) rep.truth_table(ir, jc) = u_cnot(idx[ir], idx[jc]);
    std::tie(rep.fidelity, rep.leakage) = gate_fidelity(u_cnot, rep.ideal, idx);

    rep.phase_errors = Eigen::MatrixXd::Constant(4, 4, std::numeric_limits<double>::quiet_NaN());
    for (int jc = 0; jc < 4; ++jc)
        for (int ir = 0; ir < 4; ++ir)
            if (std::abs(rep.ideal(ir, jc)) > 1e-12)
                rep.phase_errors(ir, jc) =
                    std::arg(rep.truth_table(ir, jc) * std::conj(rep.ideal(ir, jc)));

    rep.feasibility = (p.delta1 > 0.0) ? decay_feasibility(p.delta1, p.kappa, p.g_squared())
                                       : Feasibility{};
    return rep;
}

// ------------------------- SWAP unitaries and projector ----------------------

enum class SwapConvention { exchange, dot_product };

// Triplet projector P = 3/4 + S.R; idempotent, rank 3
inline OperatorMatrix projector_P() {
    Matrix p = 0.75 * Matrix::Identity(4, 4) + models::spin::dot_SR();
    return OperatorMatrix::hermitian_checked(std::move(p));
}

// exchange:    U(theta)  = exp[ i theta ( (e^{i phi} S+R- + e^{-i phi} S-R+)/2
//                                         - Sz Rz + 1/4 ) ]
// dot_product: U'(theta) = exp[ -i theta (S.R - 1/4) ]   (phi is not used)
// Both act on the frozen qubit-subspace order; theta = pi gives the SWAP.
inline OperatorMatrix swap_unitary(double theta, double phase_phi, SwapConvention convention) {
    using namespace models::spin;
    Matrix gen;
    if (convention == SwapConvention::exchange) {
        gen = 0.5 * (std::exp(I * phase_phi) * Sp() * Rm() +
                     std::exp(-I * phase_phi) * Sm() * Rp()) -
              Sz() * Rz() + 0.25 * Matrix::Identity(4, 4);
        // exp(+i theta gen)
        return OperatorMatrix::general(dynamics::hermitian_propagator(gen, -theta));
    }
    gen = dot_SR() - 0.25 * Matrix::Identity(4, 4);
    return OperatorMatrix::general(dynamics::hermitian_propagator(gen, theta));
}

// SWAP with coupling phase phi, built by exponentiating the general-phase
// effective Hamiltonian at theta = pi. Off-diagonal phases follow
// e^{i phi} = g1 g2* / (|g1| |g2|).
inline GateReport swap_with_phase(double phi, double delta = 10.0,
                                  const HilbertSpec& spec = HilbertSpec{}) {
    SystemParams p;
    p.phi1 = phi;
    p.phi2 = 0.0;
    p.delta1 = delta;
    p.delta2 = delta;
    GateSpec gate{GateKind::swap_phase, GateModel::effective_stark, p,
                  default_gate_time(GateKind::swap_phase, p)};
    return evaluate_truth_table(gate, spec);
}

} // namespace ramansim::gates
