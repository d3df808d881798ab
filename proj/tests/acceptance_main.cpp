// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "kkmforge/acceptance.hpp"

int main(int argc, char** argv) {
    kkmforge::AcceptanceOptions options;
    if (argc > 1) options.seed = std::stoull(argv[1]);
    int failed = 0;
    kkmforge::run_acceptance(options, [&](const kkmforge::CriterionResult& r) {
        std::printf("%s\n", kkmforge::format_result(r).c_str());
        std::fflush(stdout);
        failed += r.passed ? 0 : 1;
    });
    std::printf("%d/%d criteria passed (seed %llu)\n", kkmforge::kCriterionCount - failed, kkmforge::kCriterionCount,
                static_cast<unsigned long long>(options.seed));
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
