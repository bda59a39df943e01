#include "tanglekit/invariants.hpp"

#include "tanglekit/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace tanglekit;

TEST_CASE("even n-way invariant and tangle") {
    const PureState ghz4 = named_state("ghz", 4);
    CHECK(i_n_even(ghz4, 1, 2).real() == Catch::Approx(0.5));
    CHECK(tau_n_even(ghz4) == Catch::Approx(1.0));

    const PureState bell = named_state("bell", 2);
    CHECK(i_n_even(bell, 1, 2).real() == Catch::Approx(0.5));
    const double neg = negativity(global_pt(bell, 1));
    CHECK(tau_n_even(bell) == Catch::Approx(neg * neg));

    CHECK(tau_n_even(named_state("chi", 4)) == Catch::Approx(0.0).margin(1e-15));
    CHECK(tau_n_even(named_state("w", 4)) == Catch::Approx(0.0).margin(1e-15));

    // Bell x Bell: two nonvanishing 4-way fonts of 1/4 each
    const PureState bb = detail::bell_product_state();
    CHECK(i_n_even(bb, 1, 2).real() == Catch::Approx(0.5));
    CHECK(tau_n_even(bb) == Catch::Approx(1.0));

    CHECK_THROWS_AS(i_n_even(named_state("ghz", 3), 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(i_n_even(ghz4, 2, 2), std::invalid_argument);

    SECTION("witness independence on random states") {
        for (int t = 0; t < 10; ++t) {
            const PureState st = random_state(4, 970 + static_cast<std::uint64_t>(t));
            const Complex ref = i_n_even(st, 1, 2);
            for (int p = 1; p <= 4; ++p)
                for (int q = 1; q <= 4; ++q)
                    if (p != q) CHECK(std::abs(i_n_even(st, p, q) - ref) < 1e-10);
        }
    }
}

TEST_CASE("four-qubit pair invariants") {
    const PureState chi = named_state("chi", 4);
    CHECK(j_pair(chi, {1, 2}).real() == Catch::Approx(-0.25));
    CHECK(j_pair(chi, {1, 3}).real() == Catch::Approx(-0.25));
    CHECK(j_pair(chi, {2, 4}).real() == Catch::Approx(-0.25));
    CHECK(j_pair(chi, {3, 4}).real() == Catch::Approx(-0.25));
    CHECK(j_pair(chi, {1, 4}).real() == Catch::Approx(0.5));
    CHECK(j_pair(chi, {2, 3}).real() == Catch::Approx(0.5));
    CHECK(std::abs(j_pair(chi, {1, 2}).imag()) < 1e-15);

    const PureState ghz4 = named_state("ghz", 4);
    for (int p = 1; p <= 4; ++p)
        for (int q = p + 1; q <= 4; ++q)
            CHECK(j_pair(ghz4, {p, q}).real() == Catch::Approx(0.25));

    const PureState basis = named_state("basis(6)", 4);
    for (int p = 1; p <= 4; ++p)
        for (int q = p + 1; q <= 4; ++q)
            CHECK(std::abs(j_pair(basis, {p, q})) == 0.0);

    SECTION("beta monotones") {
        CHECK(beta_pair(chi, {1, 2}) == Catch::Approx(1.0 / 3.0));
        CHECK(beta_pair(chi, {1, 4}) == Catch::Approx(2.0 / 3.0));
        CHECK(beta_pair(chi, {2, 3}) == Catch::Approx(2.0 / 3.0));
        CHECK(beta_pair(ghz4, {2, 4}) == Catch::Approx(1.0 / 3.0));
        CHECK(beta_pair(basis, {1, 2}) == 0.0);
    }
    SECTION("complement and swap symmetry on random states") {
        for (int t = 0; t < 10; ++t) {
            const PureState st = random_state(4, 444 + static_cast<std::uint64_t>(t));
            CHECK(std::abs(j_pair(st, {1, 2}) - j_pair(st, {3, 4})) < 1e-10);
            CHECK(std::abs(j_pair(st, {1, 3}) - j_pair(st, {2, 4})) < 1e-10);
            CHECK(std::abs(j_pair(st, {1, 4}) - j_pair(st, {2, 3})) < 1e-10);
            CHECK(std::abs(j_pair(st, {2, 1}) - j_pair(st, {1, 2})) < 1e-10);
        }
    }
    SECTION("argument validation") {
        CHECK_THROWS_AS(j_pair(named_state("ghz", 3), {1, 2}), std::invalid_argument);
        CHECK_THROWS_AS(j_pair(ghz4, {1, 1}), std::invalid_argument);
        CHECK_THROWS_AS(j_pair(ghz4, {0, 2}), std::invalid_argument);
    }
}

TEST_CASE("sum rule") {
    const PureState ghz4 = named_state("ghz", 4);
    CHECK(sum_rule_residual(ghz4) < 1e-15);  // (1/2)^2 == (1/3)(3/4)

    const PureState chi = named_state("chi", 4);
    CHECK(sum_rule_residual(chi) < 1e-15);   // 0 == (1/3)(-1/4 - 1/4 + 1/2)

    for (int t = 0; t < 100; ++t)
        CHECK(sum_rule_residual(random_state(4, 1000 + static_cast<std::uint64_t>(t))) < 1e-10);
}

TEST_CASE("three-tangle") {
    CHECK(tau3(named_state("ghz", 3)) == Catch::Approx(1.0));
    // W3: the squared bracket vanishes and one of the 2-way fonts is zero
    CHECK(tau3(named_state("w", 3)) == Catch::Approx(0.0).margin(1e-15));
    CHECK(tau3(named_state("basis(3)", 3)) == 0.0);
    CHECK_THROWS_AS(tau3(named_state("ghz", 4)), std::invalid_argument);
}

TEST_CASE("odd pair invariants") {
    SECTION("n = 3 reduces to the printed three-tangle") {
        for (int t = 0; t < 20; ++t) {
            const PureState st = random_state(3, 50 + static_cast<std::uint64_t>(t));
            CHECK(std::abs(4.0 * std::abs(i_n_odd_pair(st, 1, 3)) - tau3(st)) < 1e-12);
            // all ordered pairs coincide for three qubits
            const Complex ref = i_n_odd_pair(st, 1, 3);
            for (int p1 = 1; p1 <= 3; ++p1)
                for (int p2 = 1; p2 <= 3; ++p2)
                    if (p1 != p2) CHECK(std::abs(i_n_odd_pair(st, p1, p2) - ref) < 1e-12);
        }
    }
    SECTION("GHZ5 gives 1/4 for every ordered pair") {
        const PureState g5 = named_state("ghz", 5);
        for (int p1 = 1; p1 <= 5; ++p1)
            for (int p2 = 1; p2 <= 5; ++p2)
                if (p1 != p2) {
                    CHECK(i_n_odd_pair(g5, p1, p2).real() == Catch::Approx(0.25));
                    CHECK(tau_n_odd_pair(g5, p1, p2) == Catch::Approx(1.0));
                }
    }
    SECTION("product states give zero") {
        CHECK(std::abs(i_n_odd_pair(named_state("basis(9)", 5), 1, 5)) == 0.0);
    }
    SECTION("even n is rejected") {
        CHECK_THROWS_AS(i_n_odd_pair(named_state("ghz", 4), 1, 4), std::invalid_argument);
    }
}

TEST_CASE("five-qubit invariant") {
    CHECK(tau5(named_state("ghz", 5)) == Catch::Approx(1.0));
    CHECK(tau5(named_state("w", 5)) == Catch::Approx(0.0).margin(1e-15));
    CHECK(std::abs(i5_pair(named_state("basis(0)", 5), 1, 5)) == 0.0);
    CHECK_THROWS_AS(i5_pair(named_state("ghz", 4), 1, 4), std::invalid_argument);

    SECTION("coincides with the generic odd-pair invariant") {
        for (int t = 0; t < 10; ++t) {
            const PureState st = random_state(5, 400 + static_cast<std::uint64_t>(t));
            for (int p = 1; p <= 5; ++p)
                for (int q = 1; q <= 5; ++q)
                    if (p != q)
                        CHECK(std::abs(i5_pair(st, p, q) - i_n_odd_pair(st, p, q)) < 1e-12);
        }
    }
}

TEST_CASE("odd-n full signed sum vanishes") {
    for (int t = 0; t < 20; ++t) {
        CHECK(vanish_odd_check(random_state(3, 600 + static_cast<std::uint64_t>(t))) < 1e-12);
        CHECK(vanish_odd_check(random_state(5, 700 + static_cast<std::uint64_t>(t))) < 1e-12);
    }
    CHECK(vanish_odd_check(named_state("ghz", 5)) == 0.0);
    CHECK_THROWS_AS(vanish_odd_check(named_state("ghz", 4)), std::invalid_argument);
}

TEST_CASE("full report") {
    SECTION("GHZ4") {
        const InvariantReport rep = full_report(named_state("ghz", 4), "ghz4");
        REQUIRE(rep.find("tau4") != nullptr);
        CHECK(rep.find("tau4")->value.real() == Catch::Approx(1.0));
        for (const char* name : {"beta_12", "beta_13", "beta_14", "beta_23", "beta_24", "beta_34"})
            CHECK(rep.find(name)->value.real() == Catch::Approx(1.0 / 3.0));
        CHECK(rep.find("sum_rule_residual")->value.real() < 1e-10);
        CHECK(rep.find("I4")->value.real() == Catch::Approx(0.5));
        CHECK(rep.find("negativity_1")->value.real() == Catch::Approx(1.0));
    }
    SECTION("chi") {
        const InvariantReport rep = full_report(named_state("chi", 4), "chi");
        CHECK(rep.find("tau4")->value.real() == Catch::Approx(0.0).margin(1e-15));
        CHECK(rep.find("beta_12")->value.real() == Catch::Approx(1.0 / 3.0));
        CHECK(rep.find("beta_13")->value.real() == Catch::Approx(1.0 / 3.0));
        CHECK(rep.find("beta_14")->value.real() == Catch::Approx(2.0 / 3.0));
        CHECK(rep.find("beta_23")->value.real() == Catch::Approx(2.0 / 3.0));
        CHECK(rep.find("beta_24")->value.real() == Catch::Approx(1.0 / 3.0));
        CHECK(rep.find("beta_34")->value.real() == Catch::Approx(1.0 / 3.0));
    }
    SECTION("basis state: everything vanishes") {
        const InvariantReport rep = full_report(named_state("basis(0)", 4), "zero");
        for (const auto& e : rep.entries)
            CHECK(std::abs(e.value) < 1e-12);
    }
    SECTION("odd n exposes ordered pair entries") {
        const InvariantReport rep = full_report(named_state("ghz", 3), "ghz3");
        REQUIRE(rep.find("tau3") != nullptr);
        CHECK(rep.find("tau3")->value.real() == Catch::Approx(1.0));
        REQUIRE(rep.find("tau3_12") != nullptr);
        REQUIRE(rep.find("tau3_31") != nullptr);
        CHECK(rep.find("tau3_21")->value.real() == Catch::Approx(1.0));
    }
    SECTION("entries are sorted, monotones nonnegative, tangles bounded") {
        for (const char* name : {"ghz", "w"}) {
            for (int n : {3, 4, 5}) {
                const InvariantReport rep = full_report(named_state(name, n), name);
                for (std::size_t k = 1; k < rep.entries.size(); ++k)
                    CHECK(rep.entries[k - 1].name < rep.entries[k].name);
                for (const auto& e : rep.entries) {
                    if (e.is_real) CHECK(e.value.real() >= -1e-12);
                    if (e.name.rfind("tau", 0) == 0)
                        CHECK(e.value.real() <= 1.0 + 1e-9);
                }
            }
        }
    }
    SECTION("font census matches the closed-form counts") {
        const InvariantReport rep = full_report(named_state("ghz", 4), "ghz4");
        REQUIRE(!rep.font_census.empty());
        for (const auto& row : rep.font_census) {
            CHECK(row.total == enumerate_fonts(4, row.p, row.k).size());
            CHECK(row.nonzero <= row.total);
        }
        // GHZ n-way fonts: exactly one nonzero canonical 4-way font per p
        for (const auto& row : rep.font_census)
            if (row.k == 4) CHECK(row.nonzero == 1);
    }
}

TEST_CASE("invariance under determinant-1 locals, modulus under U(2)") {
    // spot check; the verify suites cover this exhaustively
    const PureState st = random_state(4, 31415);
    PureState su = st, uu = st;
    for (int m = 1; m <= 4; ++m) {
        su = apply_local_unitary(su, haar_su2(9000 + static_cast<std::uint64_t>(m), m));
        uu = apply_local_unitary(uu, haar_u2(9100 + static_cast<std::uint64_t>(m), m));
    }
    CHECK(std::abs(i_n_even(st, 1, 2) - i_n_even(su, 1, 2)) < 1e-9);
    CHECK(std::abs(j_pair(st, {1, 3}) - j_pair(su, {1, 3})) < 1e-9);
    CHECK(std::abs(std::abs(i_n_even(st, 1, 2)) - std::abs(i_n_even(uu, 1, 2))) < 1e-9);
    CHECK(std::abs(std::abs(j_pair(st, {1, 3})) - std::abs(j_pair(uu, {1, 3}))) < 1e-9);
}
