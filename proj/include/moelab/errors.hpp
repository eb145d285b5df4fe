#pragma once

#include <stdexcept>
#include <string>

namespace moelab {

// A label, eigenvalue or index that is not declared in the model space.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally incompatible operands (mismatched DoF sets, wrong matrix
// dimensions, slot mismatches).
struct shape_error : std::runtime_error {
    explicit shape_error(const std::string& what) : std::runtime_error(what) {}
};

// A state or operator whose norm/trace is too small to work with.
struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// Post-selection weight below threshold: the projected component is absent.
struct postselection_error : std::runtime_error {
    explicit postselection_error(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver failed to reach its stopping criterion.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace moelab
