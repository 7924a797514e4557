// Acceptance suite: runs every verification criterion at p = 3, 5, 7 and
// prints one pass/fail line per criterion and prime.

#include <cstdio>

#include "thhk/verify.hpp"

int main() {
    bool ok = true;
    for (std::int64_t p : {3, 5, 7}) {
        std::printf("== prime %lld ==\n", (long long)p);
        std::vector<thhk::verify::Row> rows = thhk::verify::run_all(p);
        for (const auto& r : rows) {
            const char* status = !r.applicable ? "SKIP" : (r.pass ? "PASS" : "FAIL");
            std::printf("[%s] criterion %2d (p=%lld): %s\n", status, r.criterion, (long long)p,
                        r.name.c_str());
            if (!r.pass) {
                std::printf("       expected: %s\n", r.expected.c_str());
                std::printf("       actual:   %s\n", r.actual.c_str());
                ok = false;
            } else if (r.criterion == 10 && r.applicable) {
                std::printf("       %s\n", r.actual.c_str());
            }
        }
    }
    std::printf(ok ? "acceptance: all criteria pass\n" : "acceptance: FAILURES above\n");
    return ok ? 0 : 1;
}
