#pragma once

#include "tanglekit/fonts.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/state.hpp"
#include "tanglekit/transpose.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tanglekit {

/// Tolerance ladder: exact algebraic identities on exactly representable
/// amplitudes, identities evaluated on random states, orbit comparisons
/// accumulating unitary roundoff, and the elementwise transpose expansion.
inline constexpr double kTolExact = 1e-12;
inline constexpr double kTolRandomIdentity = 1e-10;
inline constexpr double kTolOrbit = 1e-9;
inline constexpr double kTolDecomposition = 1e-14;

struct CheckResult {
    std::string name;
    int trials = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::uint64_t seed = 0;
};

/// splitmix64-style mix; trial seeds derive from (master, index) so results
/// do not depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace detail {

template <typename Fn>
CheckResult run_check(std::string name, int trials, std::uint64_t seed, double tol,
                      Fn&& per_trial) {
    CheckResult r;
    r.name = std::move(name);
    r.trials = trials;
    r.seed = seed;
    r.tolerance = tol;
    for (int t = 0; t < trials; ++t)
        r.max_deviation = std::max(r.max_deviation, per_trial(derive_seed(seed, t)));
    r.passed = r.max_deviation <= r.tolerance;
    return r;
}

/// Applies an independent Haar unitary to every qubit; special_unitary
/// selects SU(2) (det 1) over U(2).
inline PureState haar_orbit_step(const PureState& st, std::uint64_t seed, bool special_unitary) {
    PureState out = st;
    for (int m = 1; m <= st.n(); ++m) {
        const std::uint64_t s = derive_seed(seed, 0x100u + static_cast<std::uint64_t>(m));
        out = apply_local_unitary(out, special_unitary ? haar_su2(s, m) : haar_u2(s, m));
    }
    return out;
}

inline double negativity_orbit_dev(const PureState& a, const PureState& b) {
    double dev = 0.0;
    for (int p = 1; p <= a.n(); ++p)
        dev = std::max(dev, std::abs(negativity(global_pt(a, p)) - negativity(global_pt(b, p))));
    return dev;
}

/// Deviation of all font-polynomial invariants applicable at n between two
/// states on the same LU orbit. With complex_compare the full complex values
/// are compared (valid for det-1 unitaries); otherwise only the moduli.
inline double invariant_orbit_dev(const PureState& a, const PureState& b, bool complex_compare) {
    const int n = a.n();
    double dev = 0.0;
    auto cmp = [&](Complex x, Complex y) {
        dev = std::max(dev, complex_compare ? std::abs(x - y) : std::abs(std::abs(x) - std::abs(y)));
    };
    if (n % 2 == 0) {
        cmp(i_n_even(a, 1, 2), i_n_even(b, 1, 2));
        if (n == 4) {
            for (int p = 1; p <= 4; ++p)
                for (int q = p + 1; q <= 4; ++q)
                    cmp(j_pair(a, {p, q}), j_pair(b, {p, q}));
        }
    } else {
        for (int p1 = 1; p1 <= n; ++p1)
            for (int p2 = 1; p2 <= n; ++p2)
                if (p1 != p2) cmp(i_n_odd_pair(a, p1, p2), i_n_odd_pair(b, p1, p2));
    }
    return dev;
}

}  // namespace detail

/// Orbit checks: sample a random state, dress every qubit with an
/// independent Haar unitary, and compare each applicable invariant before
/// and after. Determinant-1 unitaries must preserve the complex values;
/// general U(2) unitaries preserve the moduli. Negativities are LU
/// invariants outright.
inline std::vector<CheckResult> lu_invariance_suite(int n, int trials, std::uint64_t seed) {
    if (n < 2 || n > 8)
        throw std::invalid_argument("lu_invariance_suite: n must be in [2, 8]");
    std::vector<CheckResult> out;
    const std::string sn = std::to_string(n);
    std::uint64_t salt = 0;
    auto next_seed = [&]() { return derive_seed(seed, 0xA000u + salt++); };

    out.push_back(detail::run_check(
        "lu_su2_invariants_n" + sn, trials, next_seed(), kTolOrbit, [n](std::uint64_t s) {
            const PureState st = random_state(n, derive_seed(s, 1));
            const PureState tr = detail::haar_orbit_step(st, s, true);
            return detail::invariant_orbit_dev(st, tr, true);
        }));
    out.push_back(detail::run_check(
        "lu_u2_invariant_moduli_n" + sn, trials, next_seed(), kTolOrbit, [n](std::uint64_t s) {
            const PureState st = random_state(n, derive_seed(s, 1));
            const PureState tr = detail::haar_orbit_step(st, s, false);
            return detail::invariant_orbit_dev(st, tr, false);
        }));
    out.push_back(detail::run_check(
        "lu_negativity_n" + sn, trials, next_seed(), kTolOrbit, [n](std::uint64_t s) {
            const PureState st = random_state(n, derive_seed(s, 1));
            const PureState tr = detail::haar_orbit_step(st, s, (s & 1) != 0);
            return detail::negativity_orbit_dev(st, tr);
        }));
    return out;
}

/// Identity checks on random states: the K-way expansion of the global
/// partial transpose, the 4x4 submatrix eigenvalue rule, the one-qubit
/// transformation equations, pairwise orbit constants, the odd-n vanishing
/// sum, the four-qubit sum rule and complement symmetry, witness
/// independence of the even tangle, the n = 3 and n = 5 reductions, and the
/// two-qubit negativity identity.
inline std::vector<CheckResult> identity_suite(int n, int trials, std::uint64_t seed) {
    if (n < 2 || n > 8)
        throw std::invalid_argument("identity_suite: n must be in [2, 8]");
    std::vector<CheckResult> out;
    const std::string sn = std::to_string(n);
    std::uint64_t salt = 0;
    auto next_seed = [&]() { return derive_seed(seed, 0xB000u + salt++); };

    out.push_back(detail::run_check(
        "decomposition_identity_n" + sn, trials, next_seed(), kTolDecomposition,
        [n](std::uint64_t s) {
            const PureState st = random_state(n, s);
            const Eigen::MatrixXcd rho = st.amp() * st.amp().adjoint();
            double dev = 0.0;
            for (int p = 1; p <= n; ++p) {
                Eigen::MatrixXcd acc = -static_cast<double>(n - 2) * rho;
                for (int k = 2; k <= n; ++k) acc += kway_pt(st, p, k).m;
                dev = std::max(dev, (acc - global_pt(st, p).m).cwiseAbs().maxCoeff());
            }
            return dev;
        }));

    out.push_back(detail::run_check(
        "font_min_eig_identity_n" + sn, trials, next_seed(), kTolRandomIdentity,
        [n](std::uint64_t s) {
            const PureState st = random_state(n, s);
            std::mt19937_64 rng(derive_seed(s, 2));
            double dev = 0.0;
            for (int rep = 0; rep < 4; ++rep) {
                const int p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                const int k = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
                const auto fonts = enumerate_fonts(n, p, k);
                const auto& spec = fonts[rng() % fonts.size()];
                const auto pair = font_submatrix_min_eig(st, p, spec);
                dev = std::max(dev, std::abs(pair.min_eigenvalue - pair.neg_abs_det));
            }
            return dev;
        }));

    out.push_back(detail::run_check(
        "sign_relations_n" + sn, trials, next_seed(), kTolExact, [n](std::uint64_t s) {
            const PureState st = random_state(n, s);
            std::mt19937_64 rng(derive_seed(s, 3));
            const std::uint32_t all = (1u << n) - 1;
            double dev = 0.0;
            for (int rep = 0; rep < 8; ++rep) {
                const int p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                const std::uint32_t pm = qubit_mask(n, p);
                const std::uint32_t sup = static_cast<std::uint32_t>(rng()) & all & ~pm;
                const FontSpec spec = FontSpec::n_way(n, p, sup);
                const Complex d = font_det(st, spec);
                const Complex dp = font_det(st, FontSpec::n_way(n, p, sup ^ pm));
                const Complex dr = font_det(st, FontSpec::n_way(n, p, sup ^ (all & ~pm)));
                dev = std::max({dev, std::abs(d + dp), std::abs(d + dr)});
            }
            return dev;
        }));

    if (n >= 3) {
        out.push_back(detail::run_check(
            "transform_equations_n" + sn, trials, next_seed(), kTolRandomIdentity,
            [n](std::uint64_t s) {
                const PureState st = random_state(n, s);
                std::mt19937_64 rng(derive_seed(s, 4));
                std::normal_distribution<double> gauss(0.0, 1.0);
                const int p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                int q = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                if (q == p) q = (q % n) + 1;
                const Complex x(gauss(rng), gauss(rng));
                const PureState tr = apply_local_unitary(st, LocalUnitary::from_x(q, x));
                double dev = 0.0;
                for (const auto& [spec, predicted] : transform_fonts(st, p, q, x))
                    dev = std::max(dev, std::abs(predicted - font_det(tr, spec)));
                return dev;
            }));

        out.push_back(detail::run_check(
            "pairwise_orbit_n" + sn, trials, next_seed(), kTolRandomIdentity,
            [n](std::uint64_t s) {
                const PureState st = random_state(n, s);
                std::mt19937_64 rng(derive_seed(s, 5));
                std::normal_distribution<double> gauss(0.0, 1.0);
                const int p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                int q = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                if (q == p) q = (q % n) + 1;
                std::map<int, int> rest;
                for (int m = 1; m <= n; ++m)
                    if (m != p && m != q) rest[m] = static_cast<int>(rng() & 1u);
                const auto before = pairwise_unitary_invariants(st, p, q, rest);
                PureState tr = apply_local_unitary(
                    st, LocalUnitary::from_x(p, Complex(gauss(rng), gauss(rng))));
                tr = apply_local_unitary(
                    tr, LocalUnitary::from_x(q, Complex(gauss(rng), gauss(rng))));
                const auto after = pairwise_unitary_invariants(tr, p, q, rest);
                return std::max({std::abs(before.difference - after.difference),
                                 std::abs(before.sum_combo - after.sum_combo),
                                 std::abs(before.prod_combo - after.prod_combo)});
            }));
    }

    if (n % 2 == 1) {
        out.push_back(detail::run_check(
            "odd_vanishing_n" + sn, trials, next_seed(), kTolExact, [n](std::uint64_t s) {
                const PureState st = random_state(n, s);
                double dev = 0.0;
                for (int p = 1; p <= n; ++p) dev = std::max(dev, vanish_odd_check(st, p));
                return dev;
            }));
    } else {
        out.push_back(detail::run_check(
            "witness_independence_n" + sn, trials, next_seed(), kTolRandomIdentity,
            [n](std::uint64_t s) {
                const PureState st = random_state(n, s);
                const double ref = tau_n_even(st, 1, 2);
                double dev = 0.0;
                for (int p = 1; p <= n; ++p)
                    for (int q = p + 1; q <= n; ++q)
                        dev = std::max(dev, std::abs(tau_n_even(st, p, q) - ref));
                return dev;
            }));
    }

    if (n == 2) {
        out.push_back(detail::run_check(
            "two_qubit_negativity_n2", trials, next_seed(), kTolRandomIdentity,
            [](std::uint64_t s) {
                const PureState st = random_state(2, s);
                const double neg = negativity(global_pt(st, 1));
                const Complex nu = font_det(st, FontSpec::n_way(2, 1, 0));
                return std::abs(neg * neg - 4.0 * std::norm(nu));
            }));
    }

    if (n == 3) {
        out.push_back(detail::run_check(
            "odd_reduction_n3", trials, next_seed(), kTolExact, [](std::uint64_t s) {
                const PureState st = random_state(3, s);
                const Complex ref = i_n_odd_pair(st, 1, 3);
                double dev = std::abs(4.0 * std::abs(ref) - tau3(st));
                for (int p1 = 1; p1 <= 3; ++p1)
                    for (int p2 = 1; p2 <= 3; ++p2)
                        if (p1 != p2)
                            dev = std::max(dev, std::abs(i_n_odd_pair(st, p1, p2) - ref));
                return dev;
            }));
    }

    if (n == 4) {
        out.push_back(detail::run_check(
            "sum_rule_n4", trials, next_seed(), kTolRandomIdentity,
            [](std::uint64_t s) { return sum_rule_residual(random_state(4, s)); }));
        out.push_back(detail::run_check(
            "complement_symmetry_n4", trials, next_seed(), kTolRandomIdentity,
            [](std::uint64_t s) {
                const PureState st = random_state(4, s);
                return std::max({std::abs(j_pair(st, {1, 2}) - j_pair(st, {3, 4})),
                                 std::abs(j_pair(st, {1, 3}) - j_pair(st, {2, 4})),
                                 std::abs(j_pair(st, {1, 4}) - j_pair(st, {2, 3}))});
            }));
    }

    if (n == 5) {
        out.push_back(detail::run_check(
            "five_qubit_consistency_n5", trials, next_seed(), kTolExact,
            [](std::uint64_t s) {
                const PureState st = random_state(5, s);
                double dev = 0.0;
                for (int p = 1; p <= 5; ++p)
                    for (int q = 1; q <= 5; ++q)
                        if (p != q)
                            dev = std::max(dev,
                                           std::abs(i5_pair(st, p, q) - i_n_odd_pair(st, p, q)));
                return dev;
            }));
    }

    return out;
}

namespace detail {

/// Bell pair on qubits (1,2) times a Bell pair on qubits (3,4).
inline PureState bell_product_state() {
    Amplitudes a = Amplitudes::Zero(16);
    a[0b0000] = a[0b0011] = a[0b1100] = a[0b1111] = 0.5;
    return PureState(4, std::move(a));
}

}  // namespace detail

/// Exact-value rows for the named benchmark states, tolerance 1e-12.
inline std::vector<CheckResult> benchmark_suite() {
    std::vector<CheckResult> out;
    auto row = [&](std::string name, double dev) {
        out.push_back({std::move(name), 1, dev, kTolExact, dev <= kTolExact, 0});
    };

    {
        const PureState g3 = named_state("ghz", 3);
        row("benchmark_ghz3", std::abs(tau3(g3) - 1.0));
    }
    {
        const PureState g4 = named_state("ghz", 4);
        double dev = std::abs(tau_n_even(g4) - 1.0);
        dev = std::max(dev, std::abs(i_n_even(g4, 1, 2) - Complex(0.5, 0.0)));
        for (int p = 1; p <= 4; ++p)
            for (int q = p + 1; q <= 4; ++q)
                dev = std::max(dev, std::abs(beta_pair(g4, {p, q}) - 1.0 / 3.0));
        dev = std::max(dev, sum_rule_residual(g4));
        row("benchmark_ghz4", dev);
    }
    {
        const PureState g5 = named_state("ghz", 5);
        double dev = 0.0;
        for (int p = 1; p <= 5; ++p)
            for (int q = 1; q <= 5; ++q)
                if (p != q) dev = std::max(dev, std::abs(tau5(g5, p, q) - 1.0));
        row("benchmark_ghz5", dev);
    }
    {
        row("benchmark_w3", tau3(named_state("w", 3)));
    }
    {
        row("benchmark_w4", tau_n_even(named_state("w", 4)));
    }
    {
        const PureState chi = named_state("chi", 4);
        double dev = tau_n_even(chi);
        const double quarter = 0.25, half = 0.5;
        dev = std::max(dev, std::abs(j_pair(chi, {1, 2}) - Complex(-quarter, 0.0)));
        dev = std::max(dev, std::abs(j_pair(chi, {1, 3}) - Complex(-quarter, 0.0)));
        dev = std::max(dev, std::abs(j_pair(chi, {2, 4}) - Complex(-quarter, 0.0)));
        dev = std::max(dev, std::abs(j_pair(chi, {3, 4}) - Complex(-quarter, 0.0)));
        dev = std::max(dev, std::abs(j_pair(chi, {1, 4}) - Complex(half, 0.0)));
        dev = std::max(dev, std::abs(j_pair(chi, {2, 3}) - Complex(half, 0.0)));
        for (auto pq : {std::pair{1, 2}, {1, 3}, {2, 4}, {3, 4}})
            dev = std::max(dev, std::abs(beta_pair(chi, pq) - 1.0 / 3.0));
        for (auto pq : {std::pair{1, 4}, {2, 3}})
            dev = std::max(dev, std::abs(beta_pair(chi, pq) - 2.0 / 3.0));
        dev = std::max(dev, sum_rule_residual(chi));
        row("benchmark_chi", dev);
    }
    {
        const PureState bb = detail::bell_product_state();
        double dev = std::abs(tau_n_even(bb) - 1.0);
        dev = std::max(dev, std::abs(i_n_even(bb, 1, 2) - Complex(0.5, 0.0)));
        row("benchmark_bell_x_bell", dev);
    }
    return out;
}

}  // namespace tanglekit
