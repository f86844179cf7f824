// Prints how the tail bounds close in on the exact proportion as the
// digit count grows. Columns: exact proportion, the optimized Chernoff
// bound, the explicit-tilt bound, the displayed exponential, and the
// stated 1/18 bound, all at a = 0.75.

#include <cstdio>
#include <cstdlib>

#include <primetails/chernoff.hpp>
#include <primetails/digits.hpp>

int main(int argc, char** argv) {
    using namespace primetails;
    uint32_t q = argc > 1 ? static_cast<uint32_t>(std::strtoul(argv[1], nullptr, 10)) : 2;
    double a = argc > 2 ? std::strtod(argv[2], nullptr) : 0.75;

    DigitSystem sys(q);
    std::printf("q = %u, a = %.4f\n", q, a);
    std::printf("%5s  %12s  %12s  %12s  %12s  %12s\n", "k", "exact",
                "refined", "fixed_tilt", "display", "lemma");
    for (uint32_t k = 10; k <= 100; k += 10) {
        auto dist = build_distribution(sys, k);
        std::printf("%5u  %12.6e  %12.6e  %12.6e  %12.6e  %12.6e\n", k,
                    tail_proportion(dist, a), refined_bound(q, k, a),
                    fixed_tilt_bound(q, k, a), display_bound(q, k, a),
                    lemma_bound(q, k, a));
    }
    return 0;
}
