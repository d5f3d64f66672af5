#include "berk/acceptance.hpp"

#include <cstdio>
#include <cstdlib>

int main() {
    uint64_t seed = 1729;
    if (const char* env = std::getenv("BERK_SEED")) seed = std::strtoull(env, nullptr, 10);
    bool ok = true;
    for (const auto& r : berk::run_acceptance(seed)) {
        std::printf("criterion %2d %s  %s (%s)\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
