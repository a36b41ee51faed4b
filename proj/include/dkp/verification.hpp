#pragma once

#include <string>
#include <vector>

namespace dkp::verification {

struct CheckResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
};

// Each check runs one acceptance criterion at its pinned tolerance.
CheckResult check_unitarity();
CheckResult check_resonances();
CheckResult check_symmetries();
CheckResult check_oracle_equivalence();
CheckResult check_bound_spectrum();
CheckResult check_ssw_symmetry();
CheckResult check_no_binding();
CheckResult check_quantization_equivalence();
CheckResult check_limits();
CheckResult check_current_conservation();

std::vector<CheckResult> run_all();

// "PASS [n] name: detail" / "FAIL [n] ..."
std::string format_line(const CheckResult& r);

}  // namespace dkp::verification
