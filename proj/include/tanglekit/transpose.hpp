#pragma once

#include "tanglekit/fonts.hpp"
#include "tanglekit/state.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <utility>

namespace tanglekit {

enum class TransposeKind { Global, KWay };

/// Hermitian 2^n x 2^n matrix tagged as the global or K-way partial
/// transpose of a pure state with respect to qubit p.
struct TransposedMatrix {
    TransposeKind kind;
    int k;  // meaningful for KWay only
    int p;
    Eigen::MatrixXcd m;
};

/// Global partial transpose with respect to qubit p: element (I, J) is
/// a_{I with p bit of J} * conj(a_{J with p bit of I}).
inline TransposedMatrix global_pt(const PureState& state, int p) {
    const int n = state.n();
    if (p < 1 || p > n)
        throw std::out_of_range("global_pt: qubit out of range");
    const std::uint32_t dim = state.dim();
    const std::uint32_t pm = qubit_mask(n, p);
    Eigen::MatrixXcd m(dim, dim);
    for (std::uint32_t col = 0; col < dim; ++col) {
        for (std::uint32_t row = 0; row < dim; ++row) {
            const std::uint32_t ri = (row & ~pm) | (col & pm);
            const std::uint32_t cj = (col & ~pm) | (row & pm);
            m(row, col) = state[ri] * std::conj(state[cj]);
        }
    }
    return {TransposeKind::Global, n, p, std::move(m)};
}

/// K-way partial transpose with respect to qubit p: starts from the pure
/// density matrix and replaces exactly the elements whose bra/ket bit
/// tuples differ at p and in K positions total by their transposed values.
/// Elements differing only at p belong to the K = 2 operator; that
/// assignment makes the expansion
///     sum_{K=2..n} kway_pt(K) - (n-2) rho == global_pt
/// hold elementwise, which the tests check.
inline TransposedMatrix kway_pt(const PureState& state, int p, int K) {
    const int n = state.n();
    if (p < 1 || p > n)
        throw std::out_of_range("kway_pt: qubit out of range");
    if (K < 2 || K > n)
        throw std::invalid_argument("kway_pt: K must be in [2, n]");
    const std::uint32_t dim = state.dim();
    const std::uint32_t pm = qubit_mask(n, p);
    Eigen::MatrixXcd m(dim, dim);
    for (std::uint32_t col = 0; col < dim; ++col) {
        for (std::uint32_t row = 0; row < dim; ++row) {
            const std::uint32_t diff = row ^ col;
            const int d = std::popcount(diff);
            if ((diff & pm) && (d == K || (K == 2 && d == 1))) {
                const std::uint32_t ri = (row & ~pm) | (col & pm);
                const std::uint32_t cj = (col & ~pm) | (row & pm);
                m(row, col) = state[ri] * std::conj(state[cj]);
            } else {
                m(row, col) = state[row] * std::conj(state[col]);
            }
        }
    }
    return {TransposeKind::KWay, K, p, std::move(m)};
}

/// Trace norm minus one, via Hermitian eigendecomposition. Rejects inputs
/// whose Hermiticity deviation exceeds 1e-10.
inline double negativity(const TransposedMatrix& tm) {
    const double herm_dev = (tm.m - tm.m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-10)
        throw std::invalid_argument("negativity: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(tm.m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum() - 1.0;
}

struct FontEigenPair {
    double min_eigenvalue;  ///< smallest eigenvalue of the 4x4 submatrix
    double neg_abs_det;     ///< -|font determinant|
};

/// Extracts the 4x4 principal submatrix of global_pt(state, p) spanned by
/// {|i>, |j>, |i, p flipped>, |j, p flipped>} for the given font. The
/// submatrix is the partial transpose of an (unnormalized) two-qubit pure
/// state, so its only negative eigenvalue is -|det| of the font matrix;
/// both numbers are returned for comparison.
inline FontEigenPair font_submatrix_min_eig(const PureState& state, int p,
                                            const FontSpec& spec) {
    check_spec_state(state, spec, "font_submatrix_min_eig");
    if (spec.p() != p)
        throw std::invalid_argument("font_submatrix_min_eig: spec targets a different qubit");
    const int n = state.n();
    const std::uint32_t pm = qubit_mask(n, p);
    const std::uint32_t i = spec.index_i();
    const std::uint32_t j = spec.index_j();
    const std::uint32_t idx[4] = {i, j, i ^ pm, j ^ pm};
    Eigen::Matrix4cd sub;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const std::uint32_t ri = (idx[r] & ~pm) | (idx[c] & pm);
            const std::uint32_t cj = (idx[c] & ~pm) | (idx[r] & pm);
            sub(r, c) = state[ri] * std::conj(state[cj]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(sub, Eigen::EigenvaluesOnly);
    return {solver.eigenvalues().minCoeff(), -std::abs(font_det(state, spec))};
}

}  // namespace tanglekit
