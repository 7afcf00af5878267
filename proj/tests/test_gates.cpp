#include <catch2/catch_amalgamated.hpp>

#include "ramansim/gates.hpp"

#include <random>

#include "helpers.hpp"

using namespace ramansim;
using namespace ramansim::gates;
using hilbert::AtomLevel;
using test_helpers::cdist;
using test_helpers::max_abs;
using test_helpers::max_abs_diff;

namespace {

const hilbert::HilbertSpec kSpec{3, 2, 2};
const hilbert::HilbertSpec kAux{4, 2, 2};

SystemParams qpg_params(double delta1) {
    SystemParams p;
    p.delta1 = delta1;
    p.delta2 = qpg_detuning_for(delta1);
    return p;
}

GateSpec qpg_gate(double delta1, GateModel model) {
    return GateSpec{GateKind::qpg_photon_atom, model, qpg_params(delta1),
                    qpg_gate_time(delta1)};
}

} // namespace

TEST_CASE("detuning condition and gate time") {
    CHECK(std::abs(qpg_detuning_for(10.0) - 9.8) < 1e-14);
    CHECK(std::abs(qpg_detuning_for(100.0) - 99.98) < 1e-14);
    CHECK_THROWS_AS(qpg_detuning_for(0.0), contract_error);

    CHECK(std::abs(qpg_gate_time(10.0) - 10.0 * M_PI / std::sqrt(2.0)) < 1e-12);
    // both printed forms coincide: sqrt(2) pi / (delta1 - delta2)
    const double d2 = qpg_detuning_for(10.0);
    CHECK(std::abs(qpg_gate_time(10.0) - std::sqrt(2.0) * M_PI / (10.0 - d2)) < 1e-12);

    // the condition zeroes nu and makes Omega T / 2 = pi
    const SystemParams p = qpg_params(10.0);
    const auto rates = models::derived_rates(p);
    CHECK(std::abs(rates.nu) <= 1e-12);
    CHECK(std::abs(rates.omega_big * qpg_gate_time(10.0) / 2.0 - M_PI) <= 1e-12);
}

TEST_CASE("analytic phase gate reproduces the printed table") {
    const auto rep = evaluate_truth_table(qpg_gate(10.0, GateModel::analytic), kSpec);
    const Matrix want = ideal_table(GateKind::qpg_photon_atom);
    CHECK(max_abs_diff(rep.truth_table, want) <= 1e-10);
    CHECK(rep.fidelity >= 1.0 - 1e-12);
    CHECK(rep.leakage <= 1e-12);
    CHECK(rep.warnings.empty());
    for (int j = 0; j < 4; ++j) CHECK(rep.truth_table.col(j).norm() <= 1.0 + 1e-9);

    // phase deviations vanish on the table pattern and are NaN off it
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) {
            if (i == j) CHECK(std::abs(rep.phase_errors(i, j)) <= 1e-10);
            else CHECK(std::isnan(rep.phase_errors(i, j)));
        }
}

TEST_CASE("stark-free 2pi pulse gives the clean phase gate") {
    SystemParams p;
    p.delta1 = 10.0;
    p.delta2 = 10.0;
    GateSpec gate{GateKind::qpg_no_stark_2pi, GateModel::effective_no_stark, p,
                  default_gate_time(GateKind::qpg_no_stark_2pi, p)};
    const auto rep = evaluate_truth_table(gate, kSpec);
    CHECK(max_abs_diff(rep.truth_table, ideal_table(GateKind::qpg_no_stark_2pi)) <= 1e-10);

    // same timing with the Stark terms kept: the 2pi pulse returns to identity
    GateSpec stark = gate;
    stark.model = GateModel::effective_stark;
    const auto rep2 = evaluate_truth_table(stark, kSpec);
    CHECK(cdist(rep2.truth_table(3, 3), Complex(1.0)) < 1e-10);
    CHECK(std::abs(rep2.fidelity - 0.5) < 1e-10);   // |tr(diag(1,1,1,-1))|/4
}

TEST_CASE("resonant operation breaks the phase gate (Stark terms kept)") {
    SystemParams p;
    p.delta1 = 10.0;
    p.delta2 = 10.0;
    // theta = pi/2: the would-be phase-flipped state ends in a superposition
    const double t = (M_PI / 2.0) * p.delta1 / 2.0;
    GateSpec gate{GateKind::qpg_photon_atom, GateModel::effective_stark, p, t};
    const auto rep = evaluate_truth_table(gate, kSpec);
    CHECK(cdist(rep.truth_table(3, 3), std::exp(Complex(0, M_PI / 4)) / std::sqrt(2.0)) < 1e-10);
    CHECK(rep.fidelity < 0.9);
    CHECK_FALSE(rep.warnings.empty());

    // the self-amplitude (e^{i theta}+1)/2 never reaches -1 anywhere on the grid
    for (int k = 1; k <= 100; ++k) {
        const double theta = 2.0 * M_PI * k / 101.0;
        GateSpec g2{GateKind::qpg_photon_atom, GateModel::effective_stark, p,
                    theta * p.delta1 / 2.0};
        const auto r2 = evaluate_truth_table(g2, kSpec);
        CHECK(cdist(r2.truth_table(3, 3), Complex(-1.0)) > 1e-6);
    }
}

TEST_CASE("auxiliary-level phase gate: decoupled rows are exact") {
    SystemParams p = qpg_params(10.0);
    GateSpec gate{GateKind::qpg_aux_atom, GateModel::analytic, p, qpg_gate_time(10.0)};
    const auto rep = evaluate_truth_table(gate, kAux);
    CHECK(max_abs_diff(rep.truth_table, ideal_table(GateKind::qpg_aux_atom)) <= 1e-10);

    // also under the full model: |k> has no couplings at all
    GateSpec full = gate;
    full.model = GateModel::full;
    const auto repf = evaluate_truth_table(full, kAux);
    CHECK(cdist(repf.truth_table(0, 0), Complex(1.0)) == 0.0);
    CHECK(cdist(repf.truth_table(1, 1), Complex(1.0)) == 0.0);
    CHECK(repf.fidelity > 0.99);

    // needs the fourth level
    CHECK_THROWS_AS(evaluate_truth_table(gate, kSpec), contract_error);
}

TEST_CASE("hadamard on the atom: involution and the conjugation identity") {
    const Matrix h = hadamard_atom(kSpec).mat;
    CHECK(max_abs_diff(h * h, hilbert::identity(kSpec)) <= 1e-14);

    const auto f10 = hilbert::make_basis_state(kSpec, {AtomLevel::f, 1, 0});
    CHECK(((h * h * f10.amps) - f10.amps).norm() <= 1e-14);

    // H Z H = X on the {|g>,|f>} pair
    const Matrix gg = hilbert::atom_transition_matrix(kSpec, AtomLevel::g, AtomLevel::g).mat;
    const Matrix ff = hilbert::atom_transition_matrix(kSpec, AtomLevel::f, AtomLevel::f).mat;
    const Matrix gf = hilbert::atom_transition_matrix(kSpec, AtomLevel::g, AtomLevel::f).mat;
    const Matrix fg = hilbert::atom_transition_matrix(kSpec, AtomLevel::f, AtomLevel::g).mat;
    const Matrix ee = hilbert::atom_transition_matrix(kSpec, AtomLevel::e, AtomLevel::e).mat;
    const Matrix z = gg - ff + ee;
    const Matrix x = gf + fg + ee;
    CHECK(max_abs_diff(h * z * h, x) <= 1e-14);
}

TEST_CASE("cnot sandwich: analytic table and the matrix identity") {
    SystemParams p = qpg_params(10.0);
    const auto rep = cnot_via_sandwich(p, kSpec, GateModel::analytic);
    CHECK(max_abs_diff(rep.truth_table, ideal_table(GateKind::cnot)) <= 1e-10);
    CHECK(rep.fidelity >= 1.0 - 1e-12);

    // the sandwich equals H U H applied columnwise
    GateSpec qpg{GateKind::qpg_photon_atom, GateModel::analytic, p, qpg_gate_time(10.0)};
    const Matrix u = gate_unitary(qpg, kSpec);
    const Matrix had = hadamard_atom(kSpec).mat;
    const Matrix u_cnot = had * u * had;
    const auto basis = computational_basis(GateKind::cnot);
    for (int jc = 0; jc < 4; ++jc)
        for (int ir = 0; ir < 4; ++ir) {
            const int r = hilbert::basis_index(kSpec, basis[ir]);
            const int c = hilbert::basis_index(kSpec, basis[jc]);
            CHECK(cdist(rep.truth_table(ir, jc), u_cnot(r, c)) <= 1e-12);
        }

    // linearity: a control superposition comes out entangled
    Vector in = Vector::Zero(kSpec.dimension());
    in(hilbert::basis_index(kSpec, {AtomLevel::g, 0, 0})) = 1.0 / std::sqrt(2.0);
    in(hilbert::basis_index(kSpec, {AtomLevel::g, 0, 1})) = 1.0 / std::sqrt(2.0);
    Vector want = Vector::Zero(kSpec.dimension());
    want(hilbert::basis_index(kSpec, {AtomLevel::g, 0, 0})) = 1.0 / std::sqrt(2.0);
    want(hilbert::basis_index(kSpec, {AtomLevel::f, 0, 1})) = 1.0 / std::sqrt(2.0);
    const Vector out = u_cnot * in;
    CHECK(std::abs((want.adjoint() * out).value()) >= 1.0 - 1e-9);

    // wrong detuning is a hard precondition here
    SystemParams bad = p;
    bad.delta2 = p.delta1;
    CHECK_THROWS_AS(cnot_via_sandwich(bad, kSpec, GateModel::analytic), contract_error);
}

TEST_CASE("cnot under the full model at large detuning") {
    SystemParams p = qpg_params(100.0);
    const auto rep = cnot_via_sandwich(p, kSpec, GateModel::full);
    CHECK(rep.fidelity >= 0.99);
    CHECK(rep.leakage <= 1e-3);
}

TEST_CASE("swap unitary: printed signs, identity, group law") {
    const Matrix u_pi = swap_unitary(M_PI, 0.0, SwapConvention::exchange).mat;
    Matrix want = Matrix::Zero(4, 4);
    want(0, 0) = 1.0;
    want(3, 3) = 1.0;
    want(2, 1) = -1.0;
    want(1, 2) = -1.0;
    CHECK(max_abs_diff(u_pi, want) <= 1e-12);

    CHECK(max_abs_diff(swap_unitary(0.0, 0.0, SwapConvention::exchange).mat,
                       Matrix::Identity(4, 4)) <= 1e-14);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uth(-6.0, 6.0);
    for (int rep = 0; rep < 10; ++rep) {
        const double t1 = uth(rng);
        const double t2 = uth(rng);
        for (auto conv : {SwapConvention::exchange, SwapConvention::dot_product}) {
            const Matrix a = swap_unitary(t1, 0.0, conv).mat;
            const Matrix b = swap_unitary(t2, 0.0, conv).mat;
            const Matrix ab = swap_unitary(t1 + t2, 0.0, conv).mat;
            CHECK(max_abs_diff(a * b, ab) <= 1e-12);
            CHECK(max_abs_diff(a * a.adjoint(), Matrix::Identity(4, 4)) <= 1e-12);
        }
    }
}

TEST_CASE("projector and the closed form of the dot-product unitary") {
    const Matrix p = projector_P().mat;
    CHECK(max_abs_diff(p * p, p) <= 1e-14);
    CHECK(std::abs(p.trace().real() - 3.0) < 1e-14);
    CHECK(std::abs(p.trace().imag()) < 1e-15);

    // annihilates the singlet (|g>|e_R> - |f>|g_R>)/sqrt(2)
    Vector singlet = Vector::Zero(4);
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);
    CHECK((p * singlet).norm() <= 1e-14);

    // U'(theta) = [1 + (e^{-i theta} - 1) P] e^{i theta}
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uth(-2.0 * M_PI, 2.0 * M_PI);
    for (int rep = 0; rep < 20; ++rep) {
        const double theta = uth(rng);
        const Matrix direct = swap_unitary(theta, 0.0, SwapConvention::dot_product).mat;
        const Matrix closed =
            (Matrix::Identity(4, 4) + (std::exp(Complex(0, -theta)) - 1.0) * p) *
            std::exp(Complex(0, theta));
        CHECK(max_abs_diff(direct, closed) <= 1e-12);
    }

    // both conventions express the SWAP at theta = pi, differing by Z x Z
    Matrix zz = Matrix::Zero(4, 4);
    zz(0, 0) = 1.0;
    zz(1, 1) = -1.0;
    zz(2, 2) = -1.0;
    zz(3, 3) = 1.0;
    const Matrix exch = swap_unitary(M_PI, 0.0, SwapConvention::exchange).mat;
    const Matrix dot = swap_unitary(M_PI, 0.0, SwapConvention::dot_product).mat;
    CHECK(max_abs_diff(exch, zz * dot) <= 1e-12);
}

TEST_CASE("swap truth table via the effective model matches the printed signs") {
    SystemParams p;
    p.delta1 = 10.0;
    p.delta2 = 10.0;
    GateSpec gate{GateKind::swap, GateModel::effective_stark, p,
                  default_gate_time(GateKind::swap, p)};
    const auto rep = evaluate_truth_table(gate, kSpec);
    CHECK(max_abs_diff(rep.truth_table, ideal_table(GateKind::swap)) <= 1e-12);
    CHECK(rep.fidelity >= 1.0 - 1e-12);

    SystemParams detuned = p;
    detuned.delta2 = 9.0;
    GateSpec bad{GateKind::swap, GateModel::effective_stark, detuned, gate.gate_time};
    CHECK_THROWS_AS(evaluate_truth_table(bad, kSpec), contract_error);
}

TEST_CASE("swap with coupling phase: off-diagonal phases follow e^{i phi}") {
    for (double phi : {0.0, M_PI / 4.0, M_PI / 2.0, M_PI}) {
        const auto rep = swap_with_phase(phi);
        const Matrix want = ideal_table(GateKind::swap_phase, phi);
        INFO("phi = " << phi);
        CHECK(max_abs_diff(rep.truth_table, want) <= 1e-12);
        CHECK(cdist(rep.truth_table(2, 1), -std::exp(Complex(0, phi))) <= 1e-12);
        CHECK(cdist(rep.truth_table(1, 2), -std::exp(Complex(0, -phi))) <= 1e-12);
    }

    // phi = 0 reduces to the in-phase table; phi = pi flips the signs to +1
    const auto rep0 = swap_with_phase(0.0);
    CHECK(max_abs_diff(rep0.truth_table, ideal_table(GateKind::swap)) <= 1e-12);
    const auto rep_pi = swap_with_phase(M_PI);
    CHECK(cdist(rep_pi.truth_table(2, 1), Complex(1.0)) <= 1e-12);
    CHECK(cdist(rep_pi.truth_table(1, 2), Complex(1.0)) <= 1e-12);

    // conjugate-phase symmetry and unitarity at random phi
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uphi(-M_PI, M_PI);
    for (int rep = 0; rep < 8; ++rep) {
        const double phi = uphi(rng);
        const auto r = swap_with_phase(phi);
        CHECK(cdist(r.truth_table(2, 1), std::conj(r.truth_table(1, 2))) <= 1e-12);
        CHECK(max_abs_diff(r.truth_table * r.truth_table.adjoint(), Matrix::Identity(4, 4)) <=
              1e-12);
    }
}

TEST_CASE("fidelity metric: identity, global phase, dimension checks") {
    const Matrix ideal = ideal_table(GateKind::swap);
    const std::vector<int> sub{0, 1, 2, 3};
    auto [f1, l1] = gate_fidelity(ideal, ideal, sub);
    CHECK(std::abs(f1 - 1.0) < 1e-15);
    CHECK(std::abs(l1) < 1e-15);

    const Matrix phased = std::exp(Complex(0, 0.7)) * ideal;
    auto [f2, l2] = gate_fidelity(phased, ideal, sub);
    CHECK(std::abs(f2 - 1.0) < 1e-14);
    CHECK(std::abs(l2) < 1e-14);

    CHECK_THROWS_AS(gate_fidelity(ideal, Matrix::Identity(3, 3), sub), contract_error);
    CHECK_THROWS_AS(gate_fidelity(ideal, ideal, {0, 1, 2, 7}), contract_error);
}

TEST_CASE("full-model phase gate at large detuning is accurate") {
    const auto rep = evaluate_truth_table(qpg_gate(100.0, GateModel::full), kSpec);
    CHECK(rep.fidelity >= 0.99);
    CHECK(rep.leakage <= 1e-3);
}

TEST_CASE("decay feasibility bound") {
    const auto f1 = decay_feasibility(10.0, 0.01);
    CHECK(std::abs(f1.value - 0.2221441469) < 1e-9);
    CHECK(f1.feasible);

    const auto f2 = decay_feasibility(10.0, 0.0);
    CHECK(f2.value == 0.0);
    CHECK(f2.feasible);

    const auto f3 = decay_feasibility(10.0, 0.05);
    CHECK(std::abs(f3.value - 1.1107207345) < 1e-9);
    CHECK_FALSE(f3.feasible);

    // logical equivalence with T < 1/kappa over a grid
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j) {
            const double delta1 = 5.0 * i;
            const double kappa = 0.005 * j;
            const auto f = decay_feasibility(delta1, kappa);
            REQUIRE(std::abs(f.value - 1.0) > 1e-9);   // grid avoids the boundary
            CHECK(f.feasible == (qpg_gate_time(delta1) < 1.0 / kappa));
        }

    CHECK_THROWS_AS(decay_feasibility(-1.0, 0.01), contract_error);
    CHECK_THROWS_AS(decay_feasibility(10.0, -0.01), contract_error);
}

TEST_CASE("gate reports carry condition warnings when misconfigured") {
    // correct detuning but wrong time
    SystemParams p = qpg_params(10.0);
    GateSpec gate{GateKind::qpg_photon_atom, GateModel::analytic, p, 5.0};
    const auto rep = evaluate_truth_table(gate, kSpec);
    CHECK_FALSE(rep.warnings.empty());
    CHECK(rep.fidelity < 1.0 - 1e-3);
}
