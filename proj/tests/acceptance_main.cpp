#include <cstring>
#include <iostream>

#include <primetails/verify.hpp>

int main(int argc, char** argv) {
    using namespace primetails;
    VerifyLevel level = VerifyLevel::full;
    if (argc > 1) {
        if (std::strcmp(argv[1], "quick") == 0) {
            level = VerifyLevel::quick;
        } else if (std::strcmp(argv[1], "full") != 0) {
            std::cerr << "usage: " << argv[0] << " [quick|full]\n";
            return 64;
        }
    }
    auto report = run_acceptance(level);
    print_report(report, std::cout);
    return report.all_pass() ? 0 : 1;
}
