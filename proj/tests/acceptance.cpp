#include <cstdio>

#include "dkp/verification.hpp"

int main() {
    int failed = 0;
    for (const auto& r : dkp::verification::run_all()) {
        std::printf("%s\n", dkp::verification::format_line(r).c_str());
        if (!r.passed) ++failed;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
