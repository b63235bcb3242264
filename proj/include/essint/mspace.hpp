#pragma once

#include <optional>
#include <string>
#include <vector>

#include "essint/geom.hpp"

namespace essint {

/// Finite measure space with strictly positive atom weights.  Atoms carry
/// string ids; spaces built from an interval also carry the node abscissae.
class AtomicMeasureSpace {
  public:
    AtomicMeasureSpace(std::vector<std::string> ids, std::vector<double> weights,
                       std::vector<double> nodes = {});

    int size() const { return static_cast<int>(ids_.size()); }
    const std::string& id(int i) const { return ids_[static_cast<std::size_t>(i)]; }
    double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<double>& weights() const { return weights_; }
    double total_weight() const;

    bool has_nodes() const { return !nodes_.empty(); }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& nodes() const { return nodes_; }

    /// Index of an atom id; throws Error when absent.
    int index_of(const std::string& id) const;

  private:
    std::vector<std::string> ids_;
    std::vector<double> weights_;
    std::vector<double> nodes_;
};

/// Atoms "1".."M" weighted 2^-m.
AtomicMeasureSpace dyadic_space(int M);

enum class QuadratureRule { Uniform, Trapezoid };

QuadratureRule parse_rule(const std::string& name);  // "uniform" | "trapezoid"
std::string rule_name(QuadratureRule rule);

/// N nodes equally spaced on [a, b] inclusive of the endpoints.  Uniform rule
/// gives every node weight (b-a)/N; trapezoid halves the endpoint weights.
AtomicMeasureSpace discretize_interval(double a, double b, int N, QuadratureRule rule);

/// The map atom -> set value, sampled over a finite space.
class SampledMultifunction {
  public:
    SampledMultifunction(AtomicMeasureSpace space, std::vector<SetValue> values);

    const AtomicMeasureSpace& space() const { return space_; }
    const SetValue& value(int i) const { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<SetValue>& values() const { return values_; }
    int dim() const { return values_.front().dim(); }

    /// Pointwise translate: atom i's value becomes {x : x + shift(i) in value(i)}.
    SampledMultifunction shifted(const std::vector<Vec>& shifts) const;

  private:
    AtomicMeasureSpace space_;
    std::vector<SetValue> values_;
};

/// A vanishing sequence of perturbation terms a_k, one vector per atom per k.
/// Norms are the weighted L^p norms over the space; they must be non-increasing.
class PerturbationSchedule {
  public:
    PerturbationSchedule(const AtomicMeasureSpace& space,
                         std::vector<std::vector<Vec>> terms, double p = 2.0);

    /// a_k = scale_k * base; scales must be non-increasing in magnitude.
    static PerturbationSchedule scaled(const AtomicMeasureSpace& space,
                                       const std::vector<Vec>& base,
                                       const std::vector<double>& scales,
                                       double p = 2.0);

    int count() const { return static_cast<int>(terms_.size()); }
    const std::vector<Vec>& term(int k) const { return terms_[static_cast<std::size_t>(k)]; }
    double norm(int k) const { return norms_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& norms() const { return norms_; }

  private:
    std::vector<std::vector<Vec>> terms_;
    std::vector<double> norms_;
};

/// Weighted L^p norm of one per-atom vector family.
double weighted_p_norm(const AtomicMeasureSpace& space, const std::vector<Vec>& a, double p);

/// Intersection over every atom's value.  Emptiness is an expected outcome,
/// signaled by an unset value rather than an exception.
struct IntersectionResult {
    std::optional<SetValue> value;
    bool empty() const { return !value.has_value(); }
};

IntersectionResult essential_intersection(const SampledMultifunction& MF,
                                          long budget = 1000000);

}  // namespace essint
