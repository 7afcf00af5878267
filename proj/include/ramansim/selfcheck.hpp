// selfcheck.hpp — The `verify` battery: every module-level invariant run as a
// named check with a pass/fail line. Randomized draws are driven by the
// configured seed, so runs are reproducible.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ramansim/dynamics.hpp"
#include "ramansim/gates.hpp"
#include "ramansim/hilbert.hpp"
#include "ramansim/models.hpp"

namespace ramansim::cli {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

namespace selfcheck_detail {

using hilbert::AtomLevel;
using hilbert::Complex;
using hilbert::HilbertSpec;
using hilbert::Matrix;
using hilbert::Vector;
using models::SystemParams;

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline Vector random_unit(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(u(rng), u(rng));
    return v / v.norm();
}

inline SystemParams qpg_params(double delta1) {
    SystemParams p;
    p.delta1 = delta1;
    p.delta2 = gates::qpg_detuning_for(delta1);
    return p;
}

struct Harness {
    std::mt19937_64 rng;
    std::vector<CheckResult> results;

    explicit Harness(std::uint64_t seed) : rng(seed) {}

    void check(const std::string& name, double worst, double bound) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "worst %.3e vs bound %.0e", worst, bound);
        results.push_back({name, worst <= bound, buf});
    }

    void check_bool(const std::string& name, bool ok, const std::string& detail) {
        results.push_back({name, ok, detail});
    }
};

inline void hilbert_checks(Harness& h) {
    const HilbertSpec spec{3, 2, 2};

    bool bijective = true;
    for (const auto& label : hilbert::all_labels(spec))
        bijective = bijective &&
                    (hilbert::basis_label(spec, hilbert::basis_index(spec, label)) == label);
    h.check_bool("hilbert: index bijection", bijective, "all labels round-trip");

    const Matrix a = hilbert::annihilation_matrix(spec, hilbert::Mode::a).mat;
    const Matrix b = hilbert::annihilation_matrix(spec, hilbert::Mode::b).mat;
    h.check("hilbert: [a, b] = 0", max_abs(a * b - b * a), 1e-14);

    double worst = 0.0;
    const Matrix na = hilbert::number_matrix(spec, hilbert::Mode::a).mat;
    for (const auto& label : hilbert::all_labels(spec)) {
        const auto psi = hilbert::make_basis_state(spec, label);
        worst = std::max(worst, (na * psi.amps - double(label.n_a) * psi.amps).norm());
    }
    h.check("hilbert: number operator eigenvalues", worst, 1e-14);

    const Matrix ge = hilbert::atom_transition_matrix(spec, AtomLevel::g, AtomLevel::e).mat;
    const Matrix ef = hilbert::atom_transition_matrix(spec, AtomLevel::e, AtomLevel::f).mat;
    const Matrix gf = hilbert::atom_transition_matrix(spec, AtomLevel::g, AtomLevel::f).mat;
    h.check("hilbert: dyadic composition", max_abs(ge * ef - gf), 1e-14);
}

inline void model_checks(Harness& h) {
    const HilbertSpec spec{3, 2, 2};
    SystemParams p = qpg_params(10.0);
    p.phi1 = 0.3;
    p.phi2 = -0.2;

    const Matrix hf = models::full_rotated_hamiltonian(p, spec).mat;
    h.check("models: full model hermiticity", hilbert::hermiticity_defect(hf), 1e-12);

    const Matrix n = models::excitation_number(spec).mat;
    h.check("models: excitation conservation", max_abs(hf * n - n * hf), 1e-12);

    double worst = 0.0;
    for (int nn : {1, 2})
        for (int mu : {0, 1}) {
            const models::ManifoldSpec m{nn, mu};
            const auto labels = models::manifold_labels(m);
            const double sn = std::sqrt(double(nn));
            const double sm = std::sqrt(double(mu + 1));
            Matrix h3 = Matrix::Zero(3, 3);
            h3(0, 1) = std::conj(p.g1()) * sn;
            h3(1, 0) = p.g1() * sn;
            h3(1, 1) = p.delta1;
            h3(1, 2) = p.g2() * sm;
            h3(2, 1) = std::conj(p.g2()) * sm;
            h3(2, 2) = p.two_photon_detuning();
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    worst = std::max(worst,
                                     std::abs(hf(hilbert::basis_index(spec, labels[r]),
                                                 hilbert::basis_index(spec, labels[c])) -
                                              h3(r, c)));
        }
    h.check("models: manifold restriction = amplitude equations", worst, 1e-13);

    SystemParams res;
    res.delta1 = 10.0;
    res.delta2 = 10.0;
    SystemParams phased = res;
    phased.phi1 = 0.8;
    phased.phi2 = 0.8;
    h.check("models: general phases reduce to the real form",
            max_abs(models::effective_hamiltonian(res, spec, true).mat -
                    models::effective_hamiltonian(phased, spec, true).mat),
            1e-14);

    const Matrix he = models::effective_hamiltonian(res, spec, true).mat;
    const int g10 = hilbert::basis_index(spec, {AtomLevel::g, 1, 0});
    const int f01 = hilbert::basis_index(spec, {AtomLevel::f, 0, 1});
    h.check("models: Stark shift equals coupling magnitude",
            std::abs(std::abs(he(g10, g10)) - std::abs(he(f01, g10))), 1e-14);

    SystemParams shifted = qpg_params(12.0);
    const Matrix h_eff = models::effective_hamiltonian(shifted, spec, true).mat;
    const auto qlabels = models::qubit_subspace_labels();
    Matrix restricted(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            restricted(r, c) = h_eff(hilbert::basis_index(spec, qlabels[r]),
                                     hilbert::basis_index(spec, qlabels[c]));
    h.check("models: spin form = qubit-subspace restriction",
            max_abs(models::spin_form_hamiltonian(shifted, models::SpinForm::exchange).mat -
                    restricted),
            1e-12);
}

inline void dynamics_checks(Harness& h) {
    const HilbertSpec spec{3, 2, 2};
    const SystemParams p = qpg_params(10.0);

    const auto hfull = models::full_rotated_hamiltonian(p, spec);
    const Matrix u1 = dynamics::propagator(hfull, 1.7);
    const Matrix u2 = dynamics::propagator(hfull, 2.4);
    const Matrix u12 = dynamics::propagator(hfull, 4.1);
    h.check("dynamics: propagator composition", max_abs(u2 * u1 - u12), 1e-12);

    // ODE vs exact on the manifold
    double worst = 0.0;
    std::uniform_real_distribution<double> ud(20.0, 100.0);
    std::uniform_real_distribution<double> ut(1.0, 6.0);
    for (int rep = 0; rep < 3; ++rep) {
        SystemParams q = qpg_params(ud(h.rng));
        const models::ManifoldSpec m{1, 0};
        const auto labels = models::manifold_labels(m);
        const Matrix hq = models::full_rotated_hamiltonian(q, spec).mat;
        Matrix h3(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                h3(r, c) = hq(hilbert::basis_index(spec, labels[r]),
                              hilbert::basis_index(spec, labels[c]));
        const Vector d0 = random_unit(h.rng, 3);
        const double t = ut(h.rng);
        const Vector exact = dynamics::hermitian_propagator(h3, t) * d0;
        const auto traj =
            dynamics::evolve_ode(dynamics::RhsKind::full_manifold, q, m, d0, {0.0, t}, 1e-12, 1e-14);
        worst = std::max(worst, (traj.states.back() - exact).norm());
    }
    h.check("dynamics: ode matches exact propagation", worst, 1e-8);

    // closed form solves the adiabatic equations
    worst = 0.0;
    {
        const SystemParams q = qpg_params(50.0);
        const models::ManifoldSpec m{1, 0};
        Vector d0(2);
        d0 << std::sqrt(0.5), Complex(0.1, 0.7);
        d0 /= d0.norm();
        std::vector<double> grid{0.0};
        std::uniform_real_distribution<double> utt(0.5, 60.0);
        std::vector<double> ts;
        for (int i = 0; i < 10; ++i) ts.push_back(utt(h.rng));
        std::sort(ts.begin(), ts.end());
        for (double t : ts) grid.push_back(t);
        const auto traj =
            dynamics::evolve_ode(dynamics::RhsKind::adiabatic, q, m, d0, grid, 1e-12, 1e-14);
        for (std::size_t i = 1; i < traj.size(); ++i) {
            const auto [d1, d3] = dynamics::analytic_detuned(q, m, d0(0), d0(1), traj.times[i]);
            worst = std::max(worst, std::abs(traj.states[i](0) - d1));
            worst = std::max(worst, std::abs(traj.states[i](1) - d3));
        }
    }
    h.check("dynamics: closed form solves the adiabatic equations", worst, 1e-8);

    // detuned form reduces to the resonant form
    worst = 0.0;
    {
        SystemParams res;
        res.delta1 = 9.0;
        res.delta2 = 9.0;
        std::uniform_real_distribution<double> utt(0.0, 50.0);
        for (int i = 0; i < 10; ++i) {
            const double t = utt(h.rng);
            const Vector d0 = random_unit(h.rng, 2);
            const auto [a1, a3] = dynamics::analytic_detuned(res, {1, 0}, d0(0), d0(1), t);
            const auto [b1, b3] = dynamics::analytic_resonant(res, d0(0), d0(1), t);
            worst = std::max(worst, std::abs(a1 - b1));
            worst = std::max(worst, std::abs(a3 - b3));
            worst = std::max(worst, std::abs(std::norm(a1) + std::norm(a3) - 1.0));
        }
    }
    h.check("dynamics: resonant reduction and unitary two-state flow", worst, 1e-12);

    // adiabatic convergence across delta1
    {
        std::vector<double> errs;
        const auto psi0 = hilbert::make_basis_state(spec, {AtomLevel::f, 0, 1});
        for (double delta1 : {20.0, 50.0, 100.0}) {
            const SystemParams q = qpg_params(delta1);
            const double dt = gates::qpg_gate_time(delta1) / 200.0;
            const Matrix uf = dynamics::propagator(models::full_rotated_hamiltonian(q, spec), dt);
            const Matrix ue =
                dynamics::propagator(models::effective_hamiltonian(q, spec, true), dt);
            Vector full = psi0.amps;
            Vector eff = psi0.amps;
            double err = 0.0;
            for (int i = 0; i < 200; ++i) {
                full = uf * full;
                eff = ue * eff;
                err = std::max(err, 1.0 - std::abs((eff.adjoint() * full).value()));
            }
            errs.push_back(err);
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.3e > %.3e > %.3e", errs[0], errs[1], errs[2]);
        h.check_bool("dynamics: adiabatic error decreases with delta1",
                     errs[0] > errs[1] && errs[1] > errs[2], buf);
    }
}

inline void gate_checks(Harness& h) {
    const HilbertSpec spec{3, 2, 2};
    const SystemParams p = qpg_params(10.0);
    const double T = gates::qpg_gate_time(10.0);

    const auto rep = gates::evaluate_truth_table(
        gates::GateSpec{gates::GateKind::qpg_photon_atom, gates::GateModel::analytic, p, T}, spec);
    h.check("gates: printed phase-gate table (analytic)",
            max_abs(rep.truth_table - gates::ideal_table(gates::GateKind::qpg_photon_atom)),
            1e-10);

    // CNOT sandwich equals H U H columnwise
    {
        const auto cnot = gates::cnot_via_sandwich(p, spec, gates::GateModel::analytic);
        const Matrix u = gates::gate_unitary(
            gates::GateSpec{gates::GateKind::qpg_photon_atom, gates::GateModel::analytic, p, T},
            spec);
        const Matrix had = gates::hadamard_atom(spec).mat;
        const Matrix alg = had * u * had;
        double worst = 0.0;
        const auto basis = gates::computational_basis(gates::GateKind::cnot);
        for (int jc = 0; jc < 4; ++jc)
            for (int ir = 0; ir < 4; ++ir)
                worst = std::max(worst, std::abs(cnot.truth_table(ir, jc) -
                                                 alg(hilbert::basis_index(spec, basis[ir]),
                                                     hilbert::basis_index(spec, basis[jc]))));
        h.check("gates: cnot sandwich algebra", worst, 1e-12);
    }

    // one-parameter group and unitarity of the swap family
    {
        std::uniform_real_distribution<double> uth(-5.0, 5.0);
        double worst = 0.0;
        for (int rep2 = 0; rep2 < 6; ++rep2) {
            const double t1 = uth(h.rng);
            const double t2 = uth(h.rng);
            for (auto conv : {gates::SwapConvention::exchange, gates::SwapConvention::dot_product}) {
                const Matrix a = gates::swap_unitary(t1, 0.0, conv).mat;
                const Matrix b = gates::swap_unitary(t2, 0.0, conv).mat;
                const Matrix ab = gates::swap_unitary(t1 + t2, 0.0, conv).mat;
                worst = std::max(worst, max_abs(a * b - ab));
                worst = std::max(worst, max_abs(a * a.adjoint() - Matrix::Identity(4, 4)));
            }
        }
        h.check("gates: swap one-parameter group", worst, 1e-12);
    }

    // the two swap conventions differ by Z x Z at theta = pi
    {
        Matrix zz = Matrix::Zero(4, 4);
        zz(0, 0) = 1.0; zz(1, 1) = -1.0; zz(2, 2) = -1.0; zz(3, 3) = 1.0;
        const Matrix exch = gates::swap_unitary(M_PI, 0.0, gates::SwapConvention::exchange).mat;
        const Matrix dotp = gates::swap_unitary(M_PI, 0.0, gates::SwapConvention::dot_product).mat;
        h.check("gates: swap conventions agree up to Z x Z", max_abs(exch - zz * dotp), 1e-12);
    }

    // feasibility is exactly T < 1/kappa
    {
        bool consistent = true;
        for (int i = 1; i <= 10; ++i)
            for (int j = 1; j <= 10; ++j) {
                const double delta1 = 5.0 * i;
                const double kappa = 0.005 * j;
                const auto f = gates::decay_feasibility(delta1, kappa);
                consistent =
                    consistent && (f.feasible == (gates::qpg_gate_time(delta1) < 1.0 / kappa));
            }
        h.check_bool("gates: feasibility equals T < 1/kappa", consistent, "10x10 grid");
    }

    // with Stark terms at resonance the self-amplitude never reaches -1
    {
        SystemParams res;
        res.delta1 = 10.0;
        res.delta2 = 10.0;
        double closest = 1e9;
        for (int k = 1; k <= 100; ++k) {
            const double theta = 2.0 * M_PI * k / 101.0;
            const auto [d1, d3] =
                dynamics::analytic_resonant(res, 0.0, 1.0, theta * res.delta1 / 2.0);
            closest = std::min(closest, std::abs(d3 - Complex(-1.0)));
            (void)d1;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "min distance from -1: %.3f", closest);
        h.check_bool("gates: resonant phase flip is impossible with Stark terms",
                     closest > 1e-6, buf);
    }
}

} // namespace selfcheck_detail

// Run the whole invariant battery; returns per-check results.
inline std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
    selfcheck_detail::Harness h(seed);
    selfcheck_detail::hilbert_checks(h);
    selfcheck_detail::model_checks(h);
    selfcheck_detail::dynamics_checks(h);
    selfcheck_detail::gate_checks(h);
    return std::move(h.results);
}

} // namespace ramansim::cli
