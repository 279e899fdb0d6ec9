// Acceptance regression: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include "qdcav/acceptance.hpp"

#include <chrono>
#include <iostream>

int main() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = qdcav::run_acceptance(std::cout);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed in " << secs << " s\n";
    return failed == 0 ? 0 : 1;
}
