#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "error.hpp"
#include "vector.hpp"

namespace sipmink {

/// Outcome of one sampled property check. `worst` is the largest residual
/// seen, `witness` holds the inputs that produced it.
struct Check {
    std::string name;
    double worst = 0.0;
    double threshold = 0.0;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::vector<Vector> witness;

    bool pass() const { return violations == 0 && worst <= threshold; }

    void record(double residual, std::vector<Vector> inputs) {
        ++trials;
        if (residual > threshold) ++violations;
        if (residual > worst || witness.empty()) {
            worst = std::max(worst, residual);
            witness = std::move(inputs);
        }
    }
};

/// A named collection of checks, one per axiom or property.
struct AxiomReport {
    std::vector<Check> checks;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
    }

    double worst() const {
        double w = 0.0;
        for (const auto& c : checks) w = std::max(w, c.worst);
        return w;
    }

    const Check& at(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw DomainError("no check named '" + name + "'");
    }

    Check& add(std::string name, double threshold) {
        checks.push_back(Check{std::move(name), 0.0, threshold, 0, 0, {}});
        return checks.back();
    }
};

} // namespace sipmink
