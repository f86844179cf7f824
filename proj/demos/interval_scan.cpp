// Sweeps the upper-tail interval experiment x = 2^24 .. 2^32 at a fixed
// target and prints how the qualifying count tracks the x^{2(1-alpha)}
// prediction.

#include <cstdio>
#include <cstdlib>

#include <primetails/construction.hpp>

int main(int argc, char** argv) {
    using namespace primetails;
    double alpha = argc > 1 ? std::strtod(argv[1], nullptr) : 0.7;
    double margin = argc > 2 ? std::strtod(argv[2], nullptr) : 0.0;

    std::printf("q = 2, alpha = %.4f, margin = %.4f\n", alpha, margin);
    std::printf("%4s %4s %6s %10s %10s %8s %10s\n", "k", "l", "t_min",
                "primes", "qualify", "frac", "ratio");
    for (int e = 24; e <= 32; e += 2) {
        auto inst = build_instance(2, uint64_t{1} << e, alpha, TailSide::upper,
                                   margin);
        auto rec = run_experiment(inst);
        double frac = static_cast<double>(rec.qualifying_primes) /
                      static_cast<double>(rec.primes_in_interval);
        std::printf("%4d %4u %6lld %10llu %10llu %8.4f %10.4f\n", e, inst.l,
                    static_cast<long long>(snapped_ceil(inst.threshold)),
                    static_cast<unsigned long long>(rec.primes_in_interval),
                    static_cast<unsigned long long>(rec.qualifying_primes),
                    frac, rec.ratio);
    }
    return 0;
}
