// Minimal library walkthrough: build a few states and print their tangles
// and pair monotones.

#include "tanglekit/tanglekit.hpp"

#include <cstdio>

int main() {
    using namespace tanglekit;

    const PureState ghz4 = named_state("ghz", 4);
    const PureState chi = named_state("chi", 4);
    std::printf("tau4(ghz4) = %.6f   tau4(chi) = %.6f\n", tau_n_even(ghz4), tau_n_even(chi));
    std::printf("beta_14(ghz4) = %.6f   beta_14(chi) = %.6f\n",
                beta_pair(ghz4, {1, 4}), beta_pair(chi, {1, 4}));

    const PureState g5 = named_state("ghz", 5);
    std::printf("tau5(ghz5) = %.6f   tau3(w3) = %.6f\n", tau5(g5), tau3(named_state("w", 3)));

    // any invariant is constant along local-unitary orbits
    PureState moved = chi;
    for (int m = 1; m <= 4; ++m) moved = apply_local_unitary(moved, haar_su2(17 + m, m));
    std::printf("J_12(chi) = %.6f  -> after local unitaries: %.6f\n",
                j_pair(chi, {1, 2}).real(), j_pair(moved, {1, 2}).real());

    const InvariantReport rep = full_report(named_state("bell", 2), "bell");
    for (const auto& e : rep.entries)
        std::printf("%s = %.6f\n", e.name.c_str(), e.value.real());
    return 0;
}
