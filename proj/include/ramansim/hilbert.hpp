// hilbert.hpp — Truncated two-mode Fock space with a small atomic ladder:
// basis enumeration, elementary operators, tensor embedding.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "ramansim/errors.hpp"

namespace ramansim::hilbert {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Atomic levels: |g>, |f> metastable, |e> excited, |k> optional decoupled
// auxiliary. Numeric values fix the basis order and are frozen.
enum class AtomLevel : int { g = 0, e = 1, f = 2, k = 3 };

inline const char* level_name(AtomLevel l) {
    switch (l) {
        case AtomLevel::g: return "g";
        case AtomLevel::e: return "e";
        case AtomLevel::f: return "f";
        case AtomLevel::k: return "k";
    }
    return "?";
}

enum class Mode { a, b };

// ------------------------------ HilbertSpec ---------------------------------

// Truncation of the atom ⊗ mode-a ⊗ mode-b space. Basis order is frozen:
// atom index slowest, then n_a, then n_b fastest.
struct HilbertSpec {
    int n_levels = 3;   // 3, or 4 when the auxiliary |k> is enabled
    int n_max_a = 2;    // max photon number kept in mode a
    int n_max_b = 2;    // max photon number kept in mode b

    int dim_a() const { return n_max_a + 1; }
    int dim_b() const { return n_max_b + 1; }
    int dimension() const { return n_levels * dim_a() * dim_b(); }

    void validate() const {
        if (n_levels != 3 && n_levels != 4)
            throw contract_error("HilbertSpec: n_levels must be 3 or 4, got " +
                                 std::to_string(n_levels));
        if (n_max_a < 0 || n_max_b < 0)
            throw contract_error("HilbertSpec: photon truncations must be >= 0");
    }

    bool operator==(const HilbertSpec&) const = default;
};

// ------------------------------- BasisIndex ---------------------------------

struct BasisIndex {
    AtomLevel atom = AtomLevel::g;
    int n_a = 0;
    int n_b = 0;

    bool operator==(const BasisIndex&) const = default;
};

inline std::string label_string(const BasisIndex& s) {
    return std::string(level_name(s.atom)) + "_" + std::to_string(s.n_a) + "_" +
           std::to_string(s.n_b);
}

inline void check_in_bounds(const HilbertSpec& spec, const BasisIndex& s) {
    spec.validate();
    const int a = static_cast<int>(s.atom);
    if (a < 0 || a >= spec.n_levels)
        throw contract_error("basis label out of range: atom level '" +
                             std::string(level_name(s.atom)) + "' needs n_levels > " +
                             std::to_string(a));
    if (s.n_a < 0 || s.n_a > spec.n_max_a)
        throw contract_error("basis label out of range: n_a = " + std::to_string(s.n_a) +
                             " not in [0, " + std::to_string(spec.n_max_a) + "]");
    if (s.n_b < 0 || s.n_b > spec.n_max_b)
        throw contract_error("basis label out of range: n_b = " + std::to_string(s.n_b) +
                             " not in [0, " + std::to_string(spec.n_max_b) + "]");
}

// Flat index; bijective onto 0..dimension-1
inline int basis_index(const HilbertSpec& spec, const BasisIndex& s) {
    check_in_bounds(spec, s);
    return (static_cast<int>(s.atom) * spec.dim_a() + s.n_a) * spec.dim_b() + s.n_b;
}

inline BasisIndex basis_label(const HilbertSpec& spec, int index) {
    spec.validate();
    if (index < 0 || index >= spec.dimension())
        throw contract_error("basis index " + std::to_string(index) + " not in [0, " +
                             std::to_string(spec.dimension()) + ")");
    const int n_b = index % spec.dim_b();
    const int rest = index / spec.dim_b();
    const int n_a = rest % spec.dim_a();
    const int atom = rest / spec.dim_a();
    return BasisIndex{static_cast<AtomLevel>(atom), n_a, n_b};
}

inline std::vector<BasisIndex> all_labels(const HilbertSpec& spec) {
    spec.validate();
    std::vector<BasisIndex> out;
    out.reserve(static_cast<std::size_t>(spec.dimension()));
    for (int i = 0; i < spec.dimension(); ++i) out.push_back(basis_label(spec, i));
    return out;
}

// ------------------------------- StateVector --------------------------------

struct StateVector {
    Vector amps;
    HilbertSpec spec;

    double norm() const { return amps.norm(); }

    Complex amplitude(const BasisIndex& s) const {
        return amps(basis_index(spec, s));
    }
};

inline StateVector make_basis_state(const HilbertSpec& spec, const BasisIndex& s) {
    const int i = basis_index(spec, s);
    Vector v = Vector::Zero(spec.dimension());
    v(i) = 1.0;
    return StateVector{std::move(v), spec};
}

// ------------------------------ OperatorMatrix ------------------------------

inline double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Dense operator with a Hermitian tag. The tag is trusted by the propagators,
// so the factories verify it on construction.
struct OperatorMatrix {
    Matrix mat;
    bool hermitian = false;

    static OperatorMatrix hermitian_checked(Matrix m, double tol = 1e-12) {
        if (m.rows() != m.cols())
            throw contract_error("OperatorMatrix: matrix must be square");
        const double defect = hermiticity_defect(m);
        if (defect > tol)
            throw contract_error("OperatorMatrix: hermitian flag requested but max|H - H^dag| = " +
                                 std::to_string(defect));
        return OperatorMatrix{std::move(m), true};
    }

    static OperatorMatrix general(Matrix m) {
        if (m.rows() != m.cols())
            throw contract_error("OperatorMatrix: matrix must be square");
        return OperatorMatrix{std::move(m), false};
    }

    Eigen::Index dim() const { return mat.rows(); }
};

// --------------------------- Elementary operators ---------------------------

// Single-mode ladder: <n-1| a |n> = sqrt(n) within the truncation
inline Matrix mode_annihilation(int dim) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
    return m;
}

// Embed per-factor operators as atom ⊗ a ⊗ b with the frozen index order
inline Matrix embed(const HilbertSpec& spec, const Matrix& atom_op, const Matrix& a_op,
                    const Matrix& b_op) {
    const int d = spec.dimension();
    Matrix out = Matrix::Zero(d, d);
    for (int ra = 0; ra < spec.n_levels; ++ra)
        for (int ca = 0; ca < spec.n_levels; ++ca) {
            const Complex va = atom_op(ra, ca);
            if (va == Complex(0.0)) continue;
            for (int rn = 0; rn < spec.dim_a(); ++rn)
                for (int cn = 0; cn < spec.dim_a(); ++cn) {
                    const Complex vn = a_op(rn, cn);
                    if (vn == Complex(0.0)) continue;
                    for (int rm = 0; rm < spec.dim_b(); ++rm)
                        for (int cm = 0; cm < spec.dim_b(); ++cm) {
                            const Complex vm = b_op(rm, cm);
                            if (vm == Complex(0.0)) continue;
                            const int r = (ra * spec.dim_a() + rn) * spec.dim_b() + rm;
                            const int c = (ca * spec.dim_a() + cn) * spec.dim_b() + cm;
                            out(r, c) = va * vn * vm;
                        }
                }
        }
    return out;
}

// Mode annihilation embedded with identities on the atom and the other mode
inline OperatorMatrix annihilation_matrix(const HilbertSpec& spec, Mode mode) {
    spec.validate();
    const Matrix ia = Matrix::Identity(spec.n_levels, spec.n_levels);
    const Matrix in_a = Matrix::Identity(spec.dim_a(), spec.dim_a());
    const Matrix in_b = Matrix::Identity(spec.dim_b(), spec.dim_b());
    Matrix m = (mode == Mode::a)
                   ? embed(spec, ia, mode_annihilation(spec.dim_a()), in_b)
                   : embed(spec, ia, in_a, mode_annihilation(spec.dim_b()));
    return OperatorMatrix::general(std::move(m));
}

// |bra><ket| on the atom, identity on both photon modes
inline OperatorMatrix atom_transition_matrix(const HilbertSpec& spec, AtomLevel bra,
                                             AtomLevel ket) {
    spec.validate();
    const int ib = static_cast<int>(bra);
    const int ik = static_cast<int>(ket);
    if (ib >= spec.n_levels)
        throw contract_error("atom_transition_matrix: level '" +
                             std::string(level_name(bra)) + "' not present in spec");
    if (ik >= spec.n_levels)
        throw contract_error("atom_transition_matrix: level '" +
                             std::string(level_name(ket)) + "' not present in spec");
    Matrix dyad = Matrix::Zero(spec.n_levels, spec.n_levels);
    dyad(ib, ik) = 1.0;
    const Matrix in_a = Matrix::Identity(spec.dim_a(), spec.dim_a());
    const Matrix in_b = Matrix::Identity(spec.dim_b(), spec.dim_b());
    return OperatorMatrix::general(embed(spec, dyad, in_a, in_b));
}

inline OperatorMatrix number_matrix(const HilbertSpec& spec, Mode mode) {
    const Matrix a = annihilation_matrix(spec, mode).mat;
    return OperatorMatrix::hermitian_checked(a.adjoint() * a);
}

inline Matrix identity(const HilbertSpec& spec) {
    return Matrix::Identity(spec.dimension(), spec.dimension());
}

} // namespace ramansim::hilbert
