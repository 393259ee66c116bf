#pragma once

/// \file estimate.hpp
/// Numerical results with attached error information, and the failure type
/// thrown by the integration engines.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hardy {

enum class EstimateKind { deterministic, monte_carlo };

/// A numerical value with an error bound.  For deterministic rules `error`
/// is a (heuristic but conservative) bound on |value - true|; for Monte
/// Carlo it is the standard error of the estimator.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
    EstimateKind kind = EstimateKind::deterministic;
    std::uint64_t samples_or_nodes = 0;

    Estimate() = default;
    Estimate(double v, double e, EstimateKind k = EstimateKind::deterministic,
             std::uint64_t n = 0)
        : value(v), error(e), kind(k), samples_or_nodes(n) {}

    /// Sum of two estimates; errors add, Monte Carlo kind is contagious.
    friend Estimate operator+(const Estimate& a, const Estimate& b) {
        EstimateKind k = (a.kind == EstimateKind::monte_carlo ||
                          b.kind == EstimateKind::monte_carlo)
                             ? EstimateKind::monte_carlo
                             : EstimateKind::deterministic;
        return {a.value + b.value, a.error + b.error, k,
                a.samples_or_nodes + b.samples_or_nodes};
    }

    Estimate scaled(double c) const {
        double a = c < 0 ? -c : c;
        return {c * value, a * error, kind, samples_or_nodes};
    }
};

/// Thrown when an integration engine cannot reach its tolerance or detects
/// empirical divergence.  Carries the partial estimate it had so far.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, Estimate partial)
        : std::runtime_error(what), partial_(partial) {}
    const Estimate& partial() const { return partial_; }

  private:
    Estimate partial_;
};

} // namespace hardy
