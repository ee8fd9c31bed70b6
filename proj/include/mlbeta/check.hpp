#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace mlbeta {

// Outcome of one identity check at one parameter point.
struct CheckReport {
    std::string identity;
    std::vector<std::pair<std::string, double>> point;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = inf;
    double tol = 0.0;
    bool pass = false;
    std::vector<std::pair<std::string, double>> info;
    std::string note;

    // Sets residual and pass. A failed evaluation leaves the residual infinite.
    void finish(bool evaluated = true, const std::string& why = {}) {
        residual = evaluated ? relative_residual(lhs, rhs) : inf;
        pass = residual <= tol;
        if (!why.empty()) note = note.empty() ? why : note + "; " + why;
    }

    double info_value(const std::string& key, double fallback = nan) const {
        for (const auto& [k, v] : info)
            if (k == key) return v;
        return fallback;
    }
};

}  // namespace mlbeta
