#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qdcav {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    std::function<CriterionResult()> run;
};

// The regression criteria, in order.
std::vector<Criterion> acceptance_criteria();

/// Runs every criterion, printing one PASS/FAIL line each to `log`. Returns the results.
std::vector<CriterionResult> run_acceptance(std::ostream& log);

}  // namespace qdcav
