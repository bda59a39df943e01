#pragma once

#include "tanglekit/fonts.hpp"
#include "tanglekit/state.hpp"
#include "tanglekit/transpose.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace tanglekit {

namespace detail {

/// Font determinant straight from masks; `ibits` packs superscript and
/// spectator bits into one basis index.
inline Complex raw_det(const PureState& st, std::uint32_t pm, std::uint32_t vary,
                       std::uint32_t ibits) {
    const std::uint32_t j = ibits ^ vary;
    return st[ibits] * st[j] - st[j ^ pm] * st[ibits ^ pm];
}

inline std::uint32_t idx4(int i1, int i2, int i3, int i4) {
    return static_cast<std::uint32_t>(i1 << 3 | i2 << 2 | i3 << 1 | i4);
}

inline std::vector<int> relabel_pair_to_front(int n, int p, int q) {
    // p -> 1, q -> 2, the rest keep their relative order
    std::vector<int> perm(static_cast<std::size_t>(n));
    int next = 3;
    for (int m = 1; m <= n; ++m) {
        if (m == p) perm[static_cast<std::size_t>(m - 1)] = 1;
        else if (m == q) perm[static_cast<std::size_t>(m - 1)] = 2;
        else perm[static_cast<std::size_t>(m - 1)] = next++;
    }
    return perm;
}

inline std::vector<int> relabel_pair_to_ends(int n, int p, int q) {
    // p -> 1, q -> n, the rest keep their relative order
    std::vector<int> perm(static_cast<std::size_t>(n));
    int next = 2;
    for (int m = 1; m <= n; ++m) {
        if (m == p) perm[static_cast<std::size_t>(m - 1)] = 1;
        else if (m == q) perm[static_cast<std::size_t>(m - 1)] = n;
        else perm[static_cast<std::size_t>(m - 1)] = next++;
    }
    return perm;
}

inline void require_pair(int n, int p, int q, const char* where) {
    if (p < 1 || p > n || q < 1 || q > n || p == q)
        throw std::invalid_argument(std::string(where) + ": invalid qubit pair");
}

}  // namespace detail

/// Degree-2 invariant of even-n states: the signed sum of all n-way font
/// determinants with the superscript bits of p and q pinned to 0,
///     sum_{bits off p,q} (-1)^{bit sum} D^{...},
/// fonts taken with respect to p. The complex value does not depend on the
/// choice of (p, q).
inline Complex i_n_even(const PureState& state, int p, int q) {
    const int n = state.n();
    if (n % 2 != 0)
        throw std::invalid_argument("i_n_even: defined for an even number of qubits only");
    detail::require_pair(n, p, q, "i_n_even");
    const std::uint32_t all = (1u << n) - 1;
    const std::uint32_t pm = qubit_mask(n, p);
    const std::uint32_t free = all & ~pm & ~qubit_mask(n, q);
    const std::uint32_t npat = 1u << std::popcount(free);
    Complex tot = 0.0;
    for (std::uint32_t pat = 0; pat < npat; ++pat) {
        const std::uint32_t sup = detail::scatter_bits(pat, free);
        const double sign = (std::popcount(pat) & 1) ? -1.0 : 1.0;
        tot += sign * detail::raw_det(state, pm, all, sup);
    }
    return tot;
}

/// N-tangle for even n: 4 |i_n_even|^2, evaluated at the witness pair
/// (p, q), default (1, 2).
inline double tau_n_even(const PureState& state, int p = 1, int q = 2) {
    const Complex v = i_n_even(state, p, q);
    return 4.0 * std::norm(v);
}

namespace detail {

// The three four-qubit pair invariants in their printed anchor forms,
// fonts with respect to qubit 1. Each combines the square of a signed
// 4-way sum, products of 2-way fonts over both spectator assignments, and
// products of 3-way font differences.
inline Complex j_anchor_12(const PureState& s) {
    const std::uint32_t pm = 0b1000;
    auto d4 = [&](int i2, int i3, int i4) { return raw_det(s, pm, 0b1111, idx4(0, i2, i3, i4)); };
    auto d2 = [&](int b3, int b4) { return raw_det(s, pm, 0b1100, idx4(0, 0, b3, b4)); };
    auto d3s3 = [&](int b, int i2, int i4) { return raw_det(s, pm, 0b1101, idx4(0, i2, b, i4)); };
    auto d3s4 = [&](int b, int i2, int i3) { return raw_det(s, pm, 0b1110, idx4(0, i2, i3, b)); };
    const Complex sq = d4(0, 0, 0) - d4(1, 0, 0) + d4(0, 1, 0) - d4(1, 1, 0);
    return sq * sq + 8.0 * d2(0, 0) * d2(1, 1) + 8.0 * d2(1, 0) * d2(0, 1)
         - 4.0 * (d3s3(0, 0, 0) - d3s3(0, 1, 0)) * (d3s3(1, 0, 0) - d3s3(1, 1, 0))
         - 4.0 * (d3s4(0, 0, 0) - d3s4(0, 1, 0)) * (d3s4(1, 0, 0) - d3s4(1, 1, 0));
}

inline Complex j_anchor_13(const PureState& s) {
    const std::uint32_t pm = 0b1000;
    auto d4 = [&](int i2, int i3, int i4) { return raw_det(s, pm, 0b1111, idx4(0, i2, i3, i4)); };
    auto d2 = [&](int b2, int b4) { return raw_det(s, pm, 0b1010, idx4(0, b2, 0, b4)); };
    auto d3s2 = [&](int b, int i3, int i4) { return raw_det(s, pm, 0b1011, idx4(0, b, i3, i4)); };
    auto d3s4 = [&](int b, int i2, int i3) { return raw_det(s, pm, 0b1110, idx4(0, i2, i3, b)); };
    const Complex sq = d4(0, 0, 0) - d4(0, 1, 0) + d4(0, 0, 1) - d4(0, 1, 1);
    return sq * sq + 8.0 * d2(0, 0) * d2(1, 1) + 8.0 * d2(1, 0) * d2(0, 1)
         - 4.0 * (d3s2(0, 0, 0) - d3s2(0, 1, 0)) * (d3s2(1, 0, 0) - d3s2(1, 1, 0))
         - 4.0 * (d3s4(0, 0, 0) - d3s4(0, 0, 1)) * (d3s4(1, 0, 0) - d3s4(1, 0, 1));
}

inline Complex j_anchor_14(const PureState& s) {
    const std::uint32_t pm = 0b1000;
    auto d4 = [&](int i2, int i3, int i4) { return raw_det(s, pm, 0b1111, idx4(0, i2, i3, i4)); };
    auto d2 = [&](int b2, int b3) { return raw_det(s, pm, 0b1001, idx4(0, b2, b3, 0)); };
    auto d3s2 = [&](int b, int i3, int i4) { return raw_det(s, pm, 0b1011, idx4(0, b, i3, i4)); };
    auto d3s3 = [&](int b, int i2, int i4) { return raw_det(s, pm, 0b1101, idx4(0, i2, b, i4)); };
    const Complex sq = d4(0, 0, 0) - d4(0, 0, 1) + d4(0, 1, 0) - d4(0, 1, 1);
    return sq * sq + 8.0 * d2(0, 0) * d2(1, 1) + 8.0 * d2(1, 0) * d2(0, 1)
         - 4.0 * (d3s2(0, 0, 0) - d3s2(0, 0, 1)) * (d3s2(1, 0, 0) - d3s2(1, 0, 1))
         - 4.0 * (d3s3(0, 0, 0) - d3s3(0, 0, 1)) * (d3s3(1, 0, 0) - d3s3(1, 0, 1));
}

}  // namespace detail

/// Degree-4 pair invariant of four-qubit states. Pairs (1,2), (1,3), (1,4)
/// use the printed anchor forms; any other ordered pair is mapped onto
/// (1,2) by relabeling, the remaining qubits keeping their relative order.
/// Complementary pairs give equal values.
inline Complex j_pair(const PureState& state, std::pair<int, int> pair) {
    if (state.n() != 4)
        throw std::invalid_argument("j_pair: defined for four qubits");
    const auto [p, q] = pair;
    detail::require_pair(4, p, q, "j_pair");
    if (p == 1 && q == 2) return detail::j_anchor_12(state);
    if (p == 1 && q == 3) return detail::j_anchor_13(state);
    if (p == 1 && q == 4) return detail::j_anchor_14(state);
    return detail::j_anchor_12(apply_permutation(state, detail::relabel_pair_to_front(4, p, q)));
}

/// Pair entanglement monotone (4/3)|j_pair|.
inline double beta_pair(const PureState& state, std::pair<int, int> pair) {
    return (4.0 / 3.0) * std::abs(j_pair(state, pair));
}

/// |I4^2 - (J_12 + J_13 + J_14)/3|; an algebraic identity, so this is
/// roundoff-sized for every four-qubit state.
inline double sum_rule_residual(const PureState& state) {
    if (state.n() != 4)
        throw std::invalid_argument("sum_rule_residual: defined for four qubits");
    const Complex i4 = i_n_even(state, 1, 2);
    const Complex jsum = j_pair(state, {1, 2}) + j_pair(state, {1, 3}) + j_pair(state, {1, 4});
    return std::abs(i4 * i4 - jsum / 3.0);
}

/// Three-tangle: 4 |(D^{000} - D^{001})^2 - 4 D_{(2)0}^{00} D_{(2)1}^{00}|
/// with fonts taken with respect to qubit 1.
inline double tau3(const PureState& state) {
    if (state.n() != 3)
        throw std::invalid_argument("tau3: defined for three qubits");
    const std::uint32_t pm = 0b100;
    const Complex d000 = detail::raw_det(state, pm, 0b111, 0b000);
    const Complex d001 = detail::raw_det(state, pm, 0b111, 0b001);
    const Complex da0 = detail::raw_det(state, pm, 0b101, 0b000);
    const Complex da1 = detail::raw_det(state, pm, 0b101, 0b010);
    return 4.0 * std::abs((d000 - d001) * (d000 - d001) - 4.0 * da0 * da1);
}

/// Degree-4 invariant of odd-n states for the ordered pair (p1, p2):
/// fonts with respect to p1, qubit p2 singled out,
///     (A0 + A1)^2 - 4 C0 C1,
/// where A_b sums signed n-way fonts with the p2 bit at b and C_b sums
/// signed (n-1)-way fonts with p2 fixed at b; the signed sums run over the
/// qubits other than p1, its partner superscript qubit, and p2. Pairs other
/// than (1, n) are obtained by relabeling. Note the value depends on the
/// order of the pair for n >= 5.
inline Complex i_n_odd_pair(const PureState& state, int p1, int p2) {
    const int n = state.n();
    if (n % 2 == 0 || n < 3)
        throw std::invalid_argument("i_n_odd_pair: defined for an odd number of qubits, n >= 3");
    detail::require_pair(n, p1, p2, "i_n_odd_pair");
    if (!(p1 == 1 && p2 == n)) {
        const PureState relabeled =
            apply_permutation(state, detail::relabel_pair_to_ends(n, p1, p2));
        return i_n_odd_pair(relabeled, 1, n);
    }
    const std::uint32_t all = (1u << n) - 1;
    const std::uint32_t pm = qubit_mask(n, 1);
    const std::uint32_t nm = qubit_mask(n, n);
    const std::uint32_t varym = all & ~nm;
    const std::uint32_t free = all & ~pm & ~qubit_mask(n, 2) & ~nm;
    const std::uint32_t npat = 1u << std::popcount(free);
    Complex a[2] = {0.0, 0.0};
    Complex c[2] = {0.0, 0.0};
    for (std::uint32_t pat = 0; pat < npat; ++pat) {
        const std::uint32_t base = detail::scatter_bits(pat, free);
        const double sign = (std::popcount(pat) & 1) ? -1.0 : 1.0;
        for (std::uint32_t b = 0; b < 2; ++b) {
            const std::uint32_t ib = base | (b ? nm : 0u);
            a[b] += sign * detail::raw_det(state, pm, all, ib);
            c[b] += sign * detail::raw_det(state, pm, varym, ib);
        }
    }
    const Complex s = a[0] + a[1];
    return s * s - 4.0 * c[0] * c[1];
}

/// Odd-n tangle for the ordered pair: 4 |i_n_odd_pair|.
inline double tau_n_odd_pair(const PureState& state, int p1, int p2) {
    return 4.0 * std::abs(i_n_odd_pair(state, p1, p2));
}

/// Five-qubit degree-4 invariant in its printed form for (p, q) = (1, 5):
/// the square of the signed sum of all 5-way fonts (bits of qubits 1, 2
/// pinned to 0) minus four times the product of the two signed 4-way sums
/// with qubit 5 as spectator. Other pairs are obtained by relabeling;
/// equals i_n_odd_pair for every pair.
inline Complex i5_pair(const PureState& state, int p, int q) {
    if (state.n() != 5)
        throw std::invalid_argument("i5_pair: defined for five qubits");
    detail::require_pair(5, p, q, "i5_pair");
    if (!(p == 1 && q == 5)) {
        const PureState relabeled =
            apply_permutation(state, detail::relabel_pair_to_ends(5, p, q));
        return i5_pair(relabeled, 1, 5);
    }
    const std::uint32_t pm = 0b10000;
    auto d5 = [&](int i3, int i4, int i5) {
        return detail::raw_det(state, pm, 0b11111,
                               static_cast<std::uint32_t>(i3 << 2 | i4 << 1 | i5));
    };
    auto d4s5 = [&](int b, int i3, int i4) {
        return detail::raw_det(state, pm, 0b11110,
                               static_cast<std::uint32_t>(i3 << 2 | i4 << 1 | b));
    };
    Complex s = 0.0, b0 = 0.0, b1 = 0.0;
    for (int i3 = 0; i3 < 2; ++i3) {
        for (int i4 = 0; i4 < 2; ++i4) {
            const double sign = ((i3 + i4) & 1) ? -1.0 : 1.0;
            s += sign * (d5(i3, i4, 0) + d5(i3, i4, 1));
            b0 += sign * d4s5(0, i3, i4);
            b1 += sign * d4s5(1, i3, i4);
        }
    }
    return s * s - 4.0 * b0 * b1;
}

inline double tau5(const PureState& state, int p = 1, int q = 5) {
    return 4.0 * std::abs(i5_pair(state, p, q));
}

/// The full signed n-way font sum with only the p bit pinned; for odd n the
/// antisymmetry relations cancel its terms pairwise, so the returned
/// magnitude is roundoff-sized.
inline double vanish_odd_check(const PureState& state, int p = 1) {
    const int n = state.n();
    if (n % 2 == 0)
        throw std::invalid_argument("vanish_odd_check: defined for an odd number of qubits");
    const std::uint32_t all = (1u << n) - 1;
    const std::uint32_t pm = qubit_mask(n, p);
    const std::uint32_t free = all & ~pm;
    const std::uint32_t npat = 1u << std::popcount(free);
    Complex tot = 0.0;
    for (std::uint32_t pat = 0; pat < npat; ++pat) {
        const std::uint32_t sup = detail::scatter_bits(pat, free);
        const double sign = (std::popcount(pat) & 1) ? -1.0 : 1.0;
        tot += sign * detail::raw_det(state, pm, all, sup);
    }
    return std::abs(tot);
}

// ---------------------------------------------------------------------------
// Aggregate report

struct ReportEntry {
    std::string name;
    Complex value;
    bool is_real = true;
    std::string definition;
};

struct FontCensusRow {
    int p = 0;
    int k = 0;
    std::size_t total = 0;
    std::size_t nonzero = 0;  // |d| > 1e-12
};

struct InvariantReport {
    int n = 0;
    std::string source;
    double norm_deviation = 0.0;
    std::vector<ReportEntry> entries;  // sorted by name
    std::vector<FontCensusRow> font_census;

    const ReportEntry* find(std::string_view name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
};

namespace detail {

inline std::string pair_suffix(int p, int q) {
    return std::to_string(p) + std::to_string(q);
}

}  // namespace detail

/// Computes every invariant applicable at the state's qubit count:
/// per-qubit negativities, the even or odd tangle family, the n = 3/4/5
/// specializations, pair invariants and the sum-rule residual at n = 4,
/// and a census of canonical fonts per (p, K).
inline InvariantReport full_report(const PureState& state, std::string_view source = "") {
    const int n = state.n();
    InvariantReport rep;
    rep.n = n;
    rep.source = std::string(source);
    rep.norm_deviation = state.norm_deviation();

    auto add_real = [&](std::string name, double v, std::string def) {
        rep.entries.push_back({std::move(name), Complex(v, 0.0), true, std::move(def)});
    };
    auto add_complex = [&](std::string name, Complex v, std::string def) {
        rep.entries.push_back({std::move(name), v, false, std::move(def)});
    };

    for (int p = 1; p <= n; ++p)
        add_real("negativity_" + std::to_string(p), negativity(global_pt(state, p)),
                 "trace norm of the global partial transpose w.r.t. qubit " + std::to_string(p) +
                     ", minus 1");

    if (n % 2 == 0) {
        const Complex i = i_n_even(state, 1, 2);
        const double tau = 4.0 * std::norm(i);
        const std::string tau_name = n == 2 ? "tau2" : (n == 4 ? "tau4" : "tauN");
        add_real(tau_name, tau,
                 "4 |signed sum of " + std::to_string(n) + "-way font determinants|^2, witness (1,2)");
        if (n == 4) {
            add_complex("I4", i, "signed sum of 4-way font determinants, superscripts of qubits 1,2 pinned");
            const std::array<std::pair<int, int>, 6> pairs{
                {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
            for (const auto& pq : pairs) {
                const Complex j = j_pair(state, pq);
                const std::string sfx = detail::pair_suffix(pq.first, pq.second);
                add_complex("J_" + sfx, j, "degree-4 pair invariant for qubits (" + sfx + ")");
                add_real("beta_" + sfx, (4.0 / 3.0) * std::abs(j), "(4/3) |J_" + sfx + "|");
            }
            add_real("sum_rule_residual", sum_rule_residual(state),
                     "|I4^2 - (J_12 + J_13 + J_14)/3|");
        }
    } else {
        if (n == 3) add_real("tau3", tau3(state),
                             "4 |(D^000 - D^001)^2 - 4 D_(2:0)^00 D_(2:1)^00|, fonts w.r.t. qubit 1");
        if (n == 5) add_real("tau5", tau5(state, 1, 5), "4 |I5_15| (anchor pair)");
        if (n >= 3) {
            const std::string stem = n == 3 ? "tau3_" : (n == 5 ? "tau5_" : "tauN_");
            for (int p1 = 1; p1 <= n; ++p1) {
                for (int p2 = 1; p2 <= n; ++p2) {
                    if (p1 == p2) continue;
                    add_real(stem + detail::pair_suffix(p1, p2),
                             tau_n_odd_pair(state, p1, p2),
                             "4 |degree-4 odd-n pair invariant|, ordered pair (" +
                                 detail::pair_suffix(p1, p2) + ")");
                }
            }
        }
    }

    for (int p = 1; p <= n && n >= 2; ++p) {
        for (int k = 2; k <= n; ++k) {
            FontCensusRow row;
            row.p = p;
            row.k = k;
            detail::for_each_canonical_font(n, p, k, [&](const FontSpec& spec) {
                ++row.total;
                if (std::abs(font_det(state, spec)) > 1e-12) ++row.nonzero;
            });
            rep.font_census.push_back(row);
        }
    }

    std::sort(rep.entries.begin(), rep.entries.end(),
              [](const ReportEntry& a, const ReportEntry& b) { return a.name < b.name; });
    return rep;
}

}  // namespace tanglekit
