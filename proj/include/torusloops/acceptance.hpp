#pragma once

#include "torusloops/lattice.hpp"

#include <array>
#include <string>
#include <vector>

namespace torusloops {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    bool gating = true;
    std::string detail;
};

/// Fit of ln Lambda0(N) = a N + b/N + c/N^3 through three sizes, d = 0 sector.
struct ScalingFit {
    std::array<int, 3> sizes{};
    std::array<double, 3> log_lambda{};
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double c_eff = 0.0;
};

ScalingFit scaling_fit(const ModelSpec& spec, double alpha, std::array<int, 3> sizes);

CriterionResult check_oracle(int workers = 0);
CriterionResult check_triple_series();
CriterionResult check_reduced_forms();
CriterionResult check_gamma_lambda();
CriterionResult check_full_vs_on();
CriterionResult check_modular();
CriterionResult check_bezout_panels();
CriterionResult check_characters();
CriterionResult check_scaling();

/// Criteria 1 to 9 in order.
std::vector<CriterionResult> run_acceptance(int workers = 0);
bool gating_pass(const std::vector<CriterionResult>& results);
/// "[PASS] 3 title: detail", one line per criterion.
std::string report_line(const CriterionResult& r);

}  // namespace torusloops
