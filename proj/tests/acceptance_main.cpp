#include <iostream>

#include "qslab/acceptance.hpp"

int main() {
    const auto results = qslab::acceptance::run_all(std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    if (failed) {
        std::cout << failed << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << results.size() << " criteria passed\n";
    return 0;
}
