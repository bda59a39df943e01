#pragma once

#include "tanglekit/state.hpp"

#include <bit>
#include <compare>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace tanglekit {

/// A negativity font: the 2x2 matrix of amplitudes
///
///     [ a_i            a_{j, p->i_p} ]
///     [ a_{i, p->j_p}  a_j           ]
///
/// where i and j are basis indices that differ in exactly the "vary" qubits
/// (p among them, K = |vary| in [2, n]) and agree on the spectator qubits.
/// The superscript bits fix i on the vary qubits, the spectator map fixes
/// the shared bits elsewhere, and j flips every vary bit of i.
///
/// Canonical form pins sup[p] = 0 and sup[r0] = 0 for r0 the smallest vary
/// qubit other than p; the four sign-related variants of a font (row swap,
/// column swap, both) are thereby represented once.
class FontSpec {
public:
    FontSpec(int n, int p, std::uint32_t vary_mask, std::uint32_t sup_bits,
             std::uint32_t spectator_bits)
        : n_(n), p_(p), vary_mask_(vary_mask), sup_bits_(sup_bits),
          spectator_bits_(spectator_bits) {
        if (n_ < 2 || n_ > kMaxQubits)
            throw std::invalid_argument("FontSpec: n must be in [2, 12]");
        if (p_ < 1 || p_ > n_)
            throw std::invalid_argument("FontSpec: target qubit out of range");
        const std::uint32_t all = (1u << n_) - 1;
        if (vary_mask_ & ~all)
            throw std::invalid_argument("FontSpec: vary set exceeds qubit range");
        if (!(vary_mask_ & qubit_mask(n_, p_)))
            throw std::invalid_argument("FontSpec: target qubit must vary");
        if (std::popcount(vary_mask_) < 2)
            throw std::invalid_argument("FontSpec: at least two qubits must vary");
        if (sup_bits_ & ~vary_mask_)
            throw std::invalid_argument("FontSpec: superscript bits must lie on vary qubits");
        if (spectator_bits_ & vary_mask_)
            throw std::invalid_argument("FontSpec: spectator bits must lie off vary qubits");
        if (spectator_bits_ & ~all)
            throw std::invalid_argument("FontSpec: spectator bits exceed qubit range");
    }

    /// Builds a spec from qubit lists: vary as 1-based indices, sup and
    /// spectators as maps qubit -> bit. sup must cover exactly the vary set
    /// and spectators exactly its complement in {1..n}.
    FontSpec(int n, int p, const std::vector<int>& vary, const std::map<int, int>& sup,
             const std::map<int, int>& spectators)
        : FontSpec(n, p, pack_vary(n, vary), pack_bits(n, sup), pack_bits(n, spectators)) {
        for (int m : vary)
            if (!sup.count(m))
                throw std::invalid_argument("FontSpec: missing superscript bit for a vary qubit");
        if (sup.size() != vary.size())
            throw std::invalid_argument("FontSpec: superscript map must cover exactly the vary set");
        if (static_cast<int>(spectators.size()) != n - static_cast<int>(vary.size()))
            throw std::invalid_argument("FontSpec: spectators must cover the complement of vary");
        for (const auto& [m, b] : spectators)
            if (vary_mask_ & qubit_mask(n, m))
                throw std::invalid_argument("FontSpec: qubit listed both as vary and spectator");
    }

    /// N-way font: every qubit varies, superscript given as a packed index.
    static FontSpec n_way(int n, int p, std::uint32_t sup_bits) {
        return FontSpec(n, p, (1u << n) - 1, sup_bits, 0);
    }

    int n() const { return n_; }
    int p() const { return p_; }
    int k() const { return std::popcount(vary_mask_); }
    std::uint32_t vary_mask() const { return vary_mask_; }
    std::uint32_t sup_bits() const { return sup_bits_; }
    std::uint32_t spectator_bits() const { return spectator_bits_; }

    /// Row-1/column-1 basis index i, and its vary-flipped partner j.
    std::uint32_t index_i() const { return sup_bits_ | spectator_bits_; }
    std::uint32_t index_j() const { return index_i() ^ vary_mask_; }

    std::vector<int> vary() const {
        std::vector<int> v;
        for (int m = 1; m <= n_; ++m)
            if (vary_mask_ & qubit_mask(n_, m)) v.push_back(m);
        return v;
    }

    int sup_bit(int m) const {
        if (!(vary_mask_ & qubit_mask(n_, m)))
            throw std::invalid_argument("FontSpec: qubit does not vary");
        return qubit_bit(sup_bits_, n_, m);
    }

    int spectator_bit(int m) const {
        if (vary_mask_ & qubit_mask(n_, m))
            throw std::invalid_argument("FontSpec: qubit is not a spectator");
        return qubit_bit(spectator_bits_, n_, m);
    }

    bool is_canonical() const {
        if (sup_bit(p_) != 0) return false;
        for (int m = 1; m <= n_; ++m)
            if (m != p_ && (vary_mask_ & qubit_mask(n_, m)))
                return sup_bit(m) == 0;
        return true;  // unreachable for K >= 2
    }

    std::string label() const {
        std::ostringstream os;
        os << "D(p=" << p_ << ";sup=";
        for (int m = 1; m <= n_; ++m)
            if (vary_mask_ & qubit_mask(n_, m)) os << sup_bit(m);
        bool first = true;
        for (int m = 1; m <= n_; ++m) {
            if (vary_mask_ & qubit_mask(n_, m)) continue;
            os << (first ? ";fix=" : ",") << m << ":" << spectator_bit(m);
            first = false;
        }
        os << ")";
        return os.str();
    }

    friend auto operator<=>(const FontSpec&, const FontSpec&) = default;

private:
    static std::uint32_t pack_vary(int n, const std::vector<int>& vary) {
        std::uint32_t m = 0;
        for (int q : vary) m |= qubit_mask(n, q);
        if (std::popcount(m) != static_cast<int>(vary.size()))
            throw std::invalid_argument("FontSpec: duplicate vary qubit");
        return m;
    }
    static std::uint32_t pack_bits(int n, const std::map<int, int>& bits) {
        std::uint32_t v = 0;
        for (const auto& [m, b] : bits) {
            if (b != 0 && b != 1)
                throw std::invalid_argument("FontSpec: bits must be 0 or 1");
            v |= static_cast<std::uint32_t>(b) << (n - m);
        }
        return v;
    }

    int n_, p_;
    std::uint32_t vary_mask_, sup_bits_, spectator_bits_;
};

struct FontValue {
    FontSpec spec;
    Complex d;
};

inline void check_spec_state(const PureState& state, const FontSpec& spec, const char* where) {
    if (spec.n() != state.n())
        throw std::invalid_argument(std::string(where) + ": spec does not match state size");
}

inline Eigen::Matrix2cd font_matrix(const PureState& state, const FontSpec& spec) {
    check_spec_state(state, spec, "font_matrix");
    const std::uint32_t i = spec.index_i();
    const std::uint32_t j = spec.index_j();
    const std::uint32_t pm = qubit_mask(spec.n(), spec.p());
    Eigen::Matrix2cd m;
    m << state[i], state[j ^ pm], state[i ^ pm], state[j];
    return m;
}

/// Determinant of the font matrix: a_i * a_j - a_{j,p flipped} * a_{i,p flipped}.
/// Accepts canonical and non-canonical specs alike.
inline Complex font_det(const PureState& state, const FontSpec& spec) {
    check_spec_state(state, spec, "font_det");
    const std::uint32_t i = spec.index_i();
    const std::uint32_t j = spec.index_j();
    const std::uint32_t pm = qubit_mask(spec.n(), spec.p());
    return state[i] * state[j] - state[j ^ pm] * state[i ^ pm];
}

namespace detail {

/// Distributes the bits of `pattern` (counted from 0 upward) over the set
/// positions of `mask`, lowest set position first.
inline std::uint32_t scatter_bits(std::uint32_t pattern, std::uint32_t mask) {
    std::uint32_t out = 0;
    while (mask) {
        const std::uint32_t low = mask & (~mask + 1u);
        if (pattern & 1u) out |= low;
        pattern >>= 1;
        mask &= mask - 1u;
    }
    return out;
}

template <typename Fn>
void for_each_canonical_font(int n, int p, int K, Fn&& fn) {
    const std::uint32_t all = (1u << n) - 1;
    const std::uint32_t pm = qubit_mask(n, p);
    const std::uint32_t others = all & ~pm;
    // vary sets: p plus K-1 of the other qubits, enumerated as bit subsets.
    std::vector<std::uint32_t> other_bits;
    for (int m = 1; m <= n; ++m)
        if (m != p) other_bits.push_back(qubit_mask(n, m));
    for (std::uint32_t comb = 0; comb < (1u << other_bits.size()); ++comb) {
        if (std::popcount(comb) != K - 1) continue;
        std::uint32_t vary = pm;
        for (std::size_t t = 0; t < other_bits.size(); ++t)
            if (comb & (1u << t)) vary |= other_bits[t];
        // canonical rule pins sup at p and at the smallest vary qubit != p;
        // smallest qubit index = highest bit position under the MSB convention
        const std::uint32_t vnp = vary & ~pm;
        const std::uint32_t r0 = 1u << (31 - std::countl_zero(vnp));
        const std::uint32_t sup_free = vary & ~pm & ~r0;
        const std::uint32_t spect = all & ~vary;
        const std::uint32_t nsup = 1u << std::popcount(sup_free);
        const std::uint32_t nspect = 1u << std::popcount(spect);
        for (std::uint32_t sp = 0; sp < nspect; ++sp) {
            const std::uint32_t spect_bits = scatter_bits(sp, spect);
            for (std::uint32_t su = 0; su < nsup; ++su) {
                const std::uint32_t sup_bits = scatter_bits(su, sup_free);
                fn(FontSpec(n, p, vary, sup_bits, spect_bits));
            }
        }
    }
}

}  // namespace detail

/// All canonical K-way fonts with target p: one representative per
/// sign-equivalence class. The count is C(n-1, K-1) * 2^(n-K) * 2^(K-2).
inline std::vector<FontSpec> enumerate_fonts(int n, int p, int K) {
    if (n < 2 || n > kMaxQubits)
        throw std::invalid_argument("enumerate_fonts: n must be in [2, 12]");
    if (p < 1 || p > n)
        throw std::invalid_argument("enumerate_fonts: target qubit out of range");
    if (K < 2 || K > n)
        throw std::invalid_argument("enumerate_fonts: K must be in [2, n]");
    std::vector<FontSpec> out;
    detail::for_each_canonical_font(n, p, K, [&](FontSpec s) { out.push_back(std::move(s)); });
    return out;
}

/// Antisymmetry of n-way fonts: flipping the p superscript bit negates the
/// determinant (row swap), as does flipping every other vary bit (column
/// swap). Returns true iff both relations hold within 1e-12.
inline bool sign_relations_check(const PureState& state, const FontSpec& spec) {
    check_spec_state(state, spec, "sign_relations_check");
    if (spec.k() != state.n())
        throw std::invalid_argument("sign_relations_check: spec must be an n-way font");
    const std::uint32_t pm = qubit_mask(spec.n(), spec.p());
    const std::uint32_t rest = spec.vary_mask() & ~pm;
    const Complex d = font_det(state, spec);
    const Complex d_p = font_det(
        state, FontSpec(spec.n(), spec.p(), spec.vary_mask(), spec.sup_bits() ^ pm, 0));
    const Complex d_rest = font_det(
        state, FontSpec(spec.n(), spec.p(), spec.vary_mask(), spec.sup_bits() ^ rest, 0));
    return std::abs(d + d_p) <= 1e-12 && std::abs(d + d_rest) <= 1e-12;
}

namespace detail {

/// The four font determinants coupled by a one-qubit unitary on q: the two
/// n-way fonts whose superscript differs only in the q bit, and the two
/// (n-1)-way fonts with q fixed at 0 / 1. `base` fixes every other
/// superscript bit (p bit zero).
struct FontQuartet {
    FontSpec f0, f1, g0, g1;

    FontQuartet(int n, int p, int q, std::uint32_t base)
        : f0(FontSpec::n_way(n, p, base)),
          f1(FontSpec::n_way(n, p, base | qubit_mask(n, q))),
          g0(FontSpec(n, p, ((1u << n) - 1) & ~qubit_mask(n, q), base, 0)),
          g1(FontSpec(n, p, ((1u << n) - 1) & ~qubit_mask(n, q), base,
                      qubit_mask(n, q))) {}
};

}  // namespace detail

/// Primed font determinants after U(x) = from_x(q, x) acts on qubit q,
/// computed purely from the unprimed determinants of `state`:
///
///   F0' = (F0 - |x|^2 F1 +  x      G0 - conj(x) G1) / (1 + |x|^2)
///   F1' = (F1 - |x|^2 F0 +  x      G0 - conj(x) G1) / (1 + |x|^2)
///   G0' = (G0 + conj(x)^2 G1 - conj(x) (F0 + F1))   / (1 + |x|^2)
///   G1' = (G1 +      x^2 G0 +       x (F0 + F1))    / (1 + |x|^2)
///
/// where F_b is the n-way font with superscript bit b at q and G_b the
/// (n-1)-way font with q fixed at b, over every pattern of the remaining
/// superscript bits (p pinned to 0). The sign of the G0' cross term is
/// fixed by the amplitude map itself; the tests check each line against
/// direct recomputation on the transformed state.
inline std::map<FontSpec, Complex> transform_fonts(const PureState& state, int p, int q,
                                                   Complex x) {
    const int n = state.n();
    if (n < 3)
        throw std::invalid_argument("transform_fonts: needs n >= 3 so (n-1)-way fonts exist");
    if (p < 1 || p > n || q < 1 || q > n)
        throw std::invalid_argument("transform_fonts: qubit out of range");
    if (p == q)
        throw std::invalid_argument("transform_fonts: unitary qubit must differ from target");
    const double c2 = 1.0 + std::norm(x);
    const Complex xs = std::conj(x);
    const std::uint32_t free =
        ((1u << n) - 1) & ~qubit_mask(n, p) & ~qubit_mask(n, q);
    std::map<FontSpec, Complex> out;
    for (std::uint32_t pat = 0; pat < (1u << std::popcount(free)); ++pat) {
        const std::uint32_t base = detail::scatter_bits(pat, free);
        const detail::FontQuartet fq(n, p, q, base);
        const Complex F0 = font_det(state, fq.f0);
        const Complex F1 = font_det(state, fq.f1);
        const Complex G0 = font_det(state, fq.g0);
        const Complex G1 = font_det(state, fq.g1);
        out.emplace(fq.f0, (F0 - std::norm(x) * F1 + x * G0 - xs * G1) / c2);
        out.emplace(fq.f1, (F1 - std::norm(x) * F0 + x * G0 - xs * G1) / c2);
        out.emplace(fq.g0, (G0 + xs * xs * G1 - xs * (F0 + F1)) / c2);
        out.emplace(fq.g1, (G1 + x * x * G0 + x * (F0 + F1)) / c2);
    }
    return out;
}

struct PairwiseInvariants {
    Complex difference;  ///< F0 - F1
    Complex sum_combo;   ///< (F0 + F1)^2 - 4 G0 G1
    Complex prod_combo;  ///< F0 F1 - G0 G1
};

/// The three combinations of one font quartet that are constant under
/// from_x unitaries on p and on q. `sup_rest` assigns the superscript bit
/// of every qubit other than p and q (those two are pinned to 0).
inline PairwiseInvariants pairwise_unitary_invariants(const PureState& state, int p, int q,
                                                      const std::map<int, int>& sup_rest) {
    const int n = state.n();
    if (n < 3)
        throw std::invalid_argument("pairwise_unitary_invariants: needs n >= 3");
    if (p == q)
        throw std::invalid_argument("pairwise_unitary_invariants: p and q must differ");
    if (p < 1 || p > n || q < 1 || q > n)
        throw std::invalid_argument("pairwise_unitary_invariants: qubit out of range");
    std::uint32_t base = 0;
    for (const auto& [m, b] : sup_rest) {
        if (m == p || m == q)
            throw std::invalid_argument("pairwise_unitary_invariants: sup_rest must omit p and q");
        if (b != 0 && b != 1)
            throw std::invalid_argument("pairwise_unitary_invariants: bits must be 0 or 1");
        base |= static_cast<std::uint32_t>(b) << (n - m);
    }
    if (sup_rest.size() != static_cast<std::size_t>(n - 2))
        throw std::invalid_argument("pairwise_unitary_invariants: sup_rest must cover all other qubits");
    const detail::FontQuartet fq(n, p, q, base);
    const Complex F0 = font_det(state, fq.f0);
    const Complex F1 = font_det(state, fq.f1);
    const Complex G0 = font_det(state, fq.g0);
    const Complex G1 = font_det(state, fq.g1);
    return {F0 - F1, (F0 + F1) * (F0 + F1) - 4.0 * G0 * G1, F0 * F1 - G0 * G1};
}

}  // namespace tanglekit
