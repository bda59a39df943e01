#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tanglekit {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;
using Unitary2 = Eigen::Matrix2cd;

inline constexpr int kMaxQubits = 12;

/// Bit convention used throughout the library: qubit 1 is the MOST
/// significant bit of a linear amplitude index, so the bit of qubit m
/// (1-based) in an n-qubit index is (idx >> (n - m)) & 1. This matches the
/// left-to-right reading of a ket |i1 i2 ... in>.
inline std::uint32_t qubit_mask(int n, int m) {
    if (n < 1 || n > kMaxQubits)
        throw std::out_of_range("qubit_mask: n out of range");
    if (m < 1 || m > n)
        throw std::out_of_range("qubit_mask: qubit index out of range");
    return 1u << (n - m);
}

inline int qubit_bit(std::uint32_t idx, int n, int m) {
    return static_cast<int>((idx >> (n - m)) & 1u);
}

inline std::uint32_t bits_to_index(std::span<const int> bits) {
    const int n = static_cast<int>(bits.size());
    if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("bits_to_index: length out of range");
    std::uint32_t idx = 0;
    for (int m = 1; m <= n; ++m) {
        const int b = bits[static_cast<std::size_t>(m - 1)];
        if (b != 0 && b != 1)
            throw std::invalid_argument("bits_to_index: bits must be 0 or 1");
        idx |= static_cast<std::uint32_t>(b) << (n - m);
    }
    return idx;
}

inline std::vector<int> index_to_bits(std::uint32_t idx, int n) {
    if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("index_to_bits: n out of range");
    if (idx >= (1u << n))
        throw std::invalid_argument("index_to_bits: index out of range");
    std::vector<int> bits(static_cast<std::size_t>(n));
    for (int m = 1; m <= n; ++m)
        bits[static_cast<std::size_t>(m - 1)] = qubit_bit(idx, n, m);
    return bits;
}

/// Unit-norm pure state of n qubits, stored as a dense amplitude vector of
/// length 2^n in the MSB index convention. Immutable after construction;
/// the constructor rescales to unit norm and records how far the input was
/// from normalized.
class PureState {
public:
    PureState(int n, Amplitudes amp) : n_(n), amp_(std::move(amp)) {
        if (n_ < 1 || n_ > kMaxQubits)
            throw std::invalid_argument("PureState: qubit count must be in [1, 12]");
        if (amp_.size() != (1L << n_))
            throw std::invalid_argument("PureState: amplitude vector must have 2^n entries");
        const double norm = amp_.norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw std::invalid_argument("PureState: amplitudes must have finite nonzero norm");
        norm_deviation_ = std::abs(norm - 1.0);
        // rescale only when actually off unit norm; norm-preserving operations
        // (permutations, unitaries) must not perturb amplitudes by an ulp
        if (norm_deviation_ > 1e-12) amp_ /= norm;
    }

    int n() const { return n_; }
    std::uint32_t dim() const { return 1u << n_; }
    const Amplitudes& amp() const { return amp_; }
    Complex operator[](std::uint32_t idx) const { return amp_[idx]; }

    /// |norm - 1| of the amplitudes as passed in, before rescaling.
    double norm_deviation() const { return norm_deviation_; }

    int bit(std::uint32_t idx, int m) const { return qubit_bit(idx, n_, m); }

private:
    int n_;
    Amplitudes amp_;
    double norm_deviation_ = 0.0;
};

/// 2x2 unitary acting on one named qubit (1-based).
class LocalUnitary {
public:
    LocalUnitary(int qubit, Unitary2 u) : qubit_(qubit), u_(std::move(u)) {
        if (qubit_ < 1)
            throw std::invalid_argument("LocalUnitary: qubit index must be >= 1");
        const double dev = (u_.adjoint() * u_ - Unitary2::Identity()).cwiseAbs().maxCoeff();
        if (dev > 1e-10)
            throw std::invalid_argument("LocalUnitary: matrix is not unitary (deviation " +
                                        std::to_string(dev) + ")");
    }

    /// One-parameter family (1/sqrt(1+|x|^2)) * [[1, -conj(x)], [x, 1]].
    /// from_x(0) is exactly the identity.
    static LocalUnitary from_x(int qubit, Complex x) {
        const double c = 1.0 / std::sqrt(1.0 + std::norm(x));
        Unitary2 u;
        u << c, -c * std::conj(x), c * x, c;
        return LocalUnitary(qubit, u);
    }

    int qubit() const { return qubit_; }
    const Unitary2& matrix() const { return u_; }

private:
    int qubit_;
    Unitary2 u_;
};

/// Contracts the 2x2 unitary against the target qubit's bit. Norm is
/// preserved up to roundoff; no renormalization is applied.
inline PureState apply_local_unitary(const PureState& state, const LocalUnitary& lu) {
    const int n = state.n();
    if (lu.qubit() > n)
        throw std::out_of_range("apply_local_unitary: qubit exceeds state size");
    const std::uint32_t pm = qubit_mask(n, lu.qubit());
    const Unitary2& u = lu.matrix();
    Amplitudes out(state.dim());
    for (std::uint32_t idx = 0; idx < state.dim(); ++idx) {
        if (idx & pm) continue;
        const Complex a0 = state[idx];
        const Complex a1 = state[idx | pm];
        out[idx]      = u(0, 0) * a0 + u(0, 1) * a1;
        out[idx | pm] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return PureState(n, std::move(out));
}

/// Relabels qubits: perm[m-1] is the new position of qubit m. The amplitude
/// at the permuted bit tuple equals the original amplitude at the source
/// tuple, so norms are preserved exactly.
inline PureState apply_permutation(const PureState& state, const std::vector<int>& perm) {
    const int n = state.n();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("apply_permutation: permutation length must equal n");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int image : perm) {
        if (image < 1 || image > n || seen[static_cast<std::size_t>(image - 1)])
            throw std::invalid_argument("apply_permutation: not a bijection on {1..n}");
        seen[static_cast<std::size_t>(image - 1)] = true;
    }
    Amplitudes out(state.dim());
    for (std::uint32_t idx = 0; idx < state.dim(); ++idx) {
        std::uint32_t jdx = 0;
        for (int m = 1; m <= n; ++m)
            jdx |= static_cast<std::uint32_t>(state.bit(idx, m)) << (n - perm[static_cast<std::size_t>(m - 1)]);
        out[jdx] = state[idx];
    }
    return PureState(n, std::move(out));
}

namespace detail {

inline void set_amp(Amplitudes& a, std::string_view ket, Complex v) {
    std::uint32_t idx = 0;
    for (char c : ket) idx = (idx << 1) | static_cast<std::uint32_t>(c - '0');
    a[idx] = v;
}

}  // namespace detail

/// Named benchmark states. Recognized names: "ghz" (n >= 2), "w" (n >= 2),
/// "bell" (n = 2), "chi" (n = 4), and "basis(k)" / "basis:k" for the
/// computational basis state |k> of any n.
inline PureState named_state(std::string_view name, int n) {
    if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("named_state: qubit count must be in [1, 12]");
    const std::uint32_t dim = 1u << n;
    Amplitudes a = Amplitudes::Zero(dim);
    if (name == "ghz") {
        if (n < 2) throw std::invalid_argument("named_state: ghz requires n >= 2");
        a[0] = a[dim - 1] = std::sqrt(0.5);
    } else if (name == "w") {
        if (n < 2) throw std::invalid_argument("named_state: w requires n >= 2");
        const double v = 1.0 / std::sqrt(static_cast<double>(n));
        for (int m = 0; m < n; ++m) a[1u << m] = v;
    } else if (name == "bell") {
        if (n != 2) throw std::invalid_argument("named_state: bell requires n = 2");
        a[0] = a[3] = std::sqrt(0.5);
    } else if (name == "chi") {
        if (n != 4) throw std::invalid_argument("named_state: chi requires n = 4");
        const double v = std::sqrt(0.125);
        detail::set_amp(a, "0000", v);
        detail::set_amp(a, "1111", v);
        detail::set_amp(a, "0011", -v);
        detail::set_amp(a, "1100", v);
        detail::set_amp(a, "1010", v);
        detail::set_amp(a, "0101", -v);
        detail::set_amp(a, "0110", v);
        detail::set_amp(a, "1001", v);
    } else if (name.starts_with("basis")) {
        std::string_view rest = name.substr(5);
        if (rest.starts_with(":")) rest = rest.substr(1);
        else if (rest.starts_with("(") && rest.ends_with(")")) rest = rest.substr(1, rest.size() - 2);
        else throw std::invalid_argument("named_state: expected basis(k) or basis:k");
        std::size_t pos = 0;
        unsigned long k = 0;
        try {
            k = std::stoul(std::string(rest), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("named_state: basis index is not a number");
        }
        if (pos != rest.size() || k >= dim)
            throw std::invalid_argument("named_state: basis index out of range for n");
        a[k] = 1.0;
    } else {
        throw std::invalid_argument("named_state: unknown name '" + std::string(name) + "'");
    }
    return PureState(n, std::move(a));
}

/// Uniform (Fubini-Study) random pure state: independent standard complex
/// Gaussian amplitudes followed by normalization. Deterministic per seed.
inline PureState random_state(int n, std::uint64_t seed) {
    if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("random_state: qubit count must be in [1, 12]");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Amplitudes a(1u << n);
    for (std::uint32_t idx = 0; idx < a.size(); ++idx) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a[idx] = Complex(re, im);
    }
    a /= a.norm();
    return PureState(n, std::move(a));
}

/// Haar-distributed element of SU(2): a unit quaternion mapped to
/// [[alpha, -conj(beta)], [beta, conj(alpha)]]. Determinant is exactly
/// |alpha|^2 + |beta|^2 = 1 up to roundoff.
inline LocalUnitary haar_su2(std::uint64_t seed, int qubit = 1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double g0 = gauss(rng), g1 = gauss(rng), g2 = gauss(rng), g3 = gauss(rng);
    Complex al(g0, g1), be(g2, g3);
    const double nn = std::sqrt(std::norm(al) + std::norm(be));
    if (!(nn > 0.0)) return haar_su2(seed + 0x9e3779b97f4a7c15ULL, qubit);
    al /= nn;
    be /= nn;
    Unitary2 u;
    u << al, -std::conj(be), be, std::conj(al);
    return LocalUnitary(qubit, u);
}

/// Haar-distributed element of U(2): haar_su2 times a uniform global phase.
inline LocalUnitary haar_u2(std::uint64_t seed, int qubit = 1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double g0 = gauss(rng), g1 = gauss(rng), g2 = gauss(rng), g3 = gauss(rng);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
    const double theta = unif(rng);
    Complex al(g0, g1), be(g2, g3);
    const double nn = std::sqrt(std::norm(al) + std::norm(be));
    if (!(nn > 0.0)) return haar_u2(seed + 0x9e3779b97f4a7c15ULL, qubit);
    al /= nn;
    be /= nn;
    const Complex phase = std::polar(1.0, theta);
    Unitary2 u;
    u << al, -std::conj(be), be, std::conj(al);
    u *= phase;
    return LocalUnitary(qubit, u);
}

}  // namespace tanglekit
