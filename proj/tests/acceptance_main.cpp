#include "spectral/selftest.hpp"

#include <cstdio>

int main() {
    const auto results = spectral::run_acceptance_suite(nullptr);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d: %s -- %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
