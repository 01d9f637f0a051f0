#pragma once
// Shared comparison helpers for the test suites.

#include <algorithm>
#include <cmath>

// Error of a against reference b, relative to max(|a|, |b|, 1).
inline double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1.0});
}

inline bool approx_rel(double a, double b, double tol) { return rel_err(a, b) <= tol; }
