#include "tanglekit/fonts.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

using namespace tanglekit;

namespace {

// Independent enumeration oracle: count sign-equivalence classes of ordered
// index pairs (i, j) with i_p != j_p and Hamming distance K. The class of
// (i, j) is {(i,j), (j,i), (i^p, j^p), (j^p, i^p)}; its representative is
// the lexicographic minimum.
std::size_t brute_force_font_count(int n, int p, int K) {
    const std::uint32_t pm = qubit_mask(n, p);
    std::set<std::pair<std::uint32_t, std::uint32_t>> classes;
    for (std::uint32_t i = 0; i < (1u << n); ++i) {
        for (std::uint32_t j = 0; j < (1u << n); ++j) {
            const std::uint32_t diff = i ^ j;
            if (!(diff & pm)) continue;
            if (std::popcount(diff) != K) continue;
            const std::pair<std::uint32_t, std::uint32_t> reps[4] = {
                {i, j}, {j, i}, {i ^ pm, j ^ pm}, {j ^ pm, i ^ pm}};
            classes.insert(*std::min_element(std::begin(reps), std::end(reps)));
        }
    }
    return classes.size();
}

std::size_t count_formula(int n, int p, int K) {
    (void)p;
    auto choose = [](int a, int b) {
        double r = 1.0;
        for (int t = 1; t <= b; ++t) r = r * (a - t + 1) / t;
        return static_cast<std::size_t>(std::llround(r));
    };
    return choose(n - 1, K - 1) * (std::size_t{1} << (n - K)) * (std::size_t{1} << (K - 2));
}

}  // namespace

TEST_CASE("font matrix picks the four participating amplitudes") {
    const PureState ghz4 = named_state("ghz", 4);
    const FontSpec all0 = FontSpec::n_way(4, 1, 0);
    const Eigen::Matrix2cd m = font_matrix(ghz4, all0);
    const double s2 = 1.0 / std::sqrt(2.0);
    CHECK(m(0, 0).real() == Catch::Approx(s2));
    CHECK(m(1, 1).real() == Catch::Approx(s2));
    CHECK(std::abs(m(0, 1)) == 0.0);
    CHECK(std::abs(m(1, 0)) == 0.0);

    // two-qubit state: the single canonical font is the amplitude matrix itself
    const PureState st = random_state(2, 3);
    const Eigen::Matrix2cd nu = font_matrix(st, FontSpec::n_way(2, 1, 0));
    CHECK(nu(0, 0) == st[0]);
    CHECK(nu(0, 1) == st[1]);
    CHECK(nu(1, 0) == st[2]);
    CHECK(nu(1, 1) == st[3]);

    // basis states populate at most one entry
    const Eigen::Matrix2cd b = font_matrix(named_state("basis(0)", 4), all0);
    int nonzero = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (std::abs(b(r, c)) > 0) ++nonzero;
    CHECK(nonzero <= 1);
}

TEST_CASE("font determinants on benchmark states") {
    const PureState ghz4 = named_state("ghz", 4);
    CHECK(font_det(ghz4, FontSpec::n_way(4, 1, 0)).real() == Catch::Approx(0.5));
    CHECK(std::abs(font_det(ghz4, FontSpec::n_way(4, 1, 0b0011))) == 0.0);

    // Bell pair: det nu = 1/2, so the squared negativity 4|det|^2 equals the
    // eigenvalue-based value computed here from a hand-built 4x4 transpose.
    const PureState bell = named_state("bell", 2);
    const Complex nu = font_det(bell, FontSpec::n_way(2, 1, 0));
    CHECK(nu.real() == Catch::Approx(0.5));
    Eigen::Matrix4cd pt = Eigen::Matrix4cd::Zero();
    pt(0, 0) = pt(3, 3) = 0.5;   // |a00|^2, |a11|^2
    pt(1, 2) = pt(2, 1) = 0.5;   // swapped coherences
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(pt, Eigen::EigenvaluesOnly);
    const double neg = eig.eigenvalues().cwiseAbs().sum() - 1.0;
    CHECK(neg * neg == Catch::Approx(4.0 * std::norm(nu)).margin(1e-12));
}

TEST_CASE("font determinant magnitude is bounded on normalized states") {
    for (int t = 0; t < 10; ++t) {
        const PureState st = random_state(4, 500 + static_cast<std::uint64_t>(t));
        for (int k = 2; k <= 4; ++k)
            for (const auto& spec : enumerate_fonts(4, 1, k))
                CHECK(std::abs(font_det(st, spec)) <= 1.0);
    }
}

TEST_CASE("canonical font enumeration") {
    SECTION("printed cases") {
        const auto f44 = enumerate_fonts(4, 1, 4);
        REQUIRE(f44.size() == 4);
        std::set<std::uint32_t> sups;
        for (const auto& s : f44) sups.insert(s.sup_bits());
        CHECK(sups == std::set<std::uint32_t>{0b0000, 0b0001, 0b0010, 0b0011});

        CHECK(enumerate_fonts(2, 1, 2).size() == 1);
        CHECK(enumerate_fonts(3, 1, 2).size() == 4);
    }
    SECTION("count matches the brute-force class oracle for n <= 6") {
        for (int n = 2; n <= 6; ++n) {
            for (int p = 1; p <= n; ++p) {
                for (int K = 2; K <= n; ++K) {
                    const auto fonts = enumerate_fonts(n, p, K);
                    const std::size_t brute = brute_force_font_count(n, p, K);
                    INFO("n=" << n << " p=" << p << " K=" << K);
                    CHECK(fonts.size() == brute);
                    CHECK(fonts.size() == count_formula(n, p, K));
                }
            }
        }
    }
    SECTION("no duplicates, all canonical, distinct index pairs") {
        const auto fonts = enumerate_fonts(5, 2, 3);
        std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (const auto& s : fonts) {
            CHECK(s.is_canonical());
            pairs.insert({s.index_i(), s.index_j()});
        }
        CHECK(pairs.size() == fonts.size());
    }
    SECTION("argument validation") {
        CHECK_THROWS_AS(enumerate_fonts(4, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_fonts(4, 1, 5), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_fonts(4, 5, 2), std::invalid_argument);
    }
}

TEST_CASE("font spec validation and accessors") {
    CHECK_THROWS_AS(FontSpec(4, 3, {1, 2}, {{1, 0}, {2, 0}}, {{3, 0}, {4, 0}}),
                    std::invalid_argument);  // p not in vary
    CHECK_THROWS_AS(FontSpec(4, 1, std::uint32_t{0b1000}, 0, 0), std::invalid_argument);  // K < 2
    CHECK_THROWS_AS(FontSpec(4, 1, {1, 2}, {{1, 0}, {2, 0}, {3, 0}}, {{4, 0}}),
                    std::invalid_argument);  // sup off the vary set
    CHECK_THROWS_AS(FontSpec(4, 1, {1, 2}, {{1, 0}, {2, 0}}, {{2, 1}, {3, 0}}),
                    std::invalid_argument);  // spectator on a vary qubit

    const FontSpec s(4, 1, {1, 2, 4}, {{1, 0}, {2, 1}, {4, 0}}, {{3, 1}});
    CHECK(s.k() == 3);
    CHECK(s.vary() == std::vector<int>{1, 2, 4});
    CHECK(s.sup_bit(2) == 1);
    CHECK(s.spectator_bit(3) == 1);
    CHECK(!s.is_canonical());  // sup[2] = 1 with r0 = 2
    CHECK(s.index_i() == 0b0110);
    CHECK(s.index_j() == 0b1011);
    CHECK_THROWS_AS(s.sup_bit(3), std::invalid_argument);
    CHECK_THROWS_AS(s.spectator_bit(2), std::invalid_argument);
}

TEST_CASE("sign relations of n-way fonts") {
    const PureState ghz4 = named_state("ghz", 4);
    CHECK(font_det(ghz4, FontSpec::n_way(4, 1, 0b0000)).real() == Catch::Approx(0.5));
    CHECK(font_det(ghz4, FontSpec::n_way(4, 1, 0b0111)).real() == Catch::Approx(-0.5));
    CHECK(sign_relations_check(ghz4, FontSpec::n_way(4, 1, 0)));

    for (int t = 0; t < 10; ++t) {
        const PureState st = random_state(4, 900 + static_cast<std::uint64_t>(t));
        for (std::uint32_t sup = 0; sup < 8; ++sup)
            CHECK(sign_relations_check(st, FontSpec::n_way(4, 1, sup)));
    }

    CHECK(sign_relations_check(named_state("basis(0)", 3), FontSpec::n_way(3, 1, 0)));
    CHECK_THROWS_AS(sign_relations_check(named_state("ghz", 4),
                                         FontSpec(4, 1, {1, 2}, {{1, 0}, {2, 0}},
                                                  {{3, 0}, {4, 0}})),
                    std::invalid_argument);
}

TEST_CASE("transformation identities against direct recomputation") {
    SECTION("x = 0 keeps every determinant") {
        const PureState st = random_state(4, 31);
        for (const auto& [spec, primed] : transform_fonts(st, 1, 3, 0.0))
            CHECK(std::abs(primed - font_det(st, spec)) < 1e-15);
    }
    SECTION("GHZ4 with x = 1 on qubit 2 halves the leading n-way font") {
        const PureState ghz4 = named_state("ghz", 4);
        const auto primed = transform_fonts(ghz4, 1, 2, 1.0);
        const auto it = primed.find(FontSpec::n_way(4, 1, 0));
        REQUIRE(it != primed.end());
        CHECK(it->second.real() == Catch::Approx(0.25));
        // direct recomputation on the transformed state agrees
        const PureState tr = apply_local_unitary(ghz4, LocalUnitary::from_x(2, 1.0));
        CHECK(std::abs(font_det(tr, FontSpec::n_way(4, 1, 0)) - it->second) < 1e-12);
    }
    SECTION("random states, random complex x, every equation within 1e-10") {
        std::mt19937_64 rng(2024);
        std::normal_distribution<double> gauss;
        for (int t = 0; t < 30; ++t) {
            const int n = 3 + static_cast<int>(rng() % 3);
            const PureState st = random_state(n, rng());
            const int p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            int q = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            if (q == p) q = (q % n) + 1;
            const Complex x(gauss(rng), gauss(rng));
            const PureState tr = apply_local_unitary(st, LocalUnitary::from_x(q, x));
            for (const auto& [spec, predicted] : transform_fonts(st, p, q, x)) {
                INFO("n=" << n << " p=" << p << " q=" << q << " " << spec.label());
                CHECK(std::abs(predicted - font_det(tr, spec)) < 1e-10);
            }
        }
    }
    SECTION("q must differ from the target") {
        CHECK_THROWS_AS(transform_fonts(random_state(4, 1), 2, 2, 0.5), std::invalid_argument);
    }
}

TEST_CASE("pairwise unitary invariants") {
    SECTION("product state gives zero") {
        const auto inv = pairwise_unitary_invariants(named_state("basis(0)", 4), 1, 2,
                                                     {{3, 0}, {4, 0}});
        CHECK(std::abs(inv.difference) == 0.0);
        CHECK(std::abs(inv.sum_combo) == 0.0);
        CHECK(std::abs(inv.prod_combo) == 0.0);
    }
    SECTION("GHZ4 difference is 1/2") {
        const auto inv = pairwise_unitary_invariants(named_state("ghz", 4), 1, 2,
                                                     {{3, 0}, {4, 0}});
        CHECK(inv.difference.real() == Catch::Approx(0.5));
    }
    SECTION("constant along from_x orbits on p and q") {
        std::mt19937_64 rng(99);
        std::normal_distribution<double> gauss;
        const PureState st = random_state(4, 12345);
        const auto base = pairwise_unitary_invariants(st, 1, 2, {{3, 0}, {4, 1}});
        for (int t = 0; t < 50; ++t) {
            PureState tr = apply_local_unitary(
                st, LocalUnitary::from_x(1, Complex(gauss(rng), gauss(rng))));
            tr = apply_local_unitary(
                tr, LocalUnitary::from_x(2, Complex(gauss(rng), gauss(rng))));
            const auto moved = pairwise_unitary_invariants(tr, 1, 2, {{3, 0}, {4, 1}});
            CHECK(std::abs(moved.difference - base.difference) < 1e-10);
            CHECK(std::abs(moved.sum_combo - base.sum_combo) < 1e-10);
            CHECK(std::abs(moved.prod_combo - base.prod_combo) < 1e-10);
        }
    }
    SECTION("p = q is rejected") {
        CHECK_THROWS_AS(pairwise_unitary_invariants(random_state(4, 1), 2, 2, {{3, 0}, {4, 0}}),
                        std::invalid_argument);
    }
}
