#include "essint/mspace.hpp"

#include <algorithm>
#include <cmath>

#include "essint/errors.hpp"

namespace essint {

AtomicMeasureSpace::AtomicMeasureSpace(std::vector<std::string> ids,
                                       std::vector<double> weights,
                                       std::vector<double> nodes)
    : ids_(std::move(ids)), weights_(std::move(weights)), nodes_(std::move(nodes)) {
    if (ids_.empty()) throw Error("measure space: no atoms");
    if (ids_.size() != weights_.size())
        throw Error("measure space: ids and weights differ in length");
    if (!nodes_.empty() && nodes_.size() != ids_.size())
        throw Error("measure space: nodes and atoms differ in length");
    for (double w : weights_)
        if (!(w > 0.0)) throw Error("measure space: weights must be strictly positive");
    for (std::size_t i = 0; i < ids_.size(); ++i)
        for (std::size_t j = i + 1; j < ids_.size(); ++j)
            if (ids_[i] == ids_[j]) throw Error("measure space: duplicate atom id " + ids_[i]);
}

double AtomicMeasureSpace::total_weight() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

int AtomicMeasureSpace::index_of(const std::string& id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) throw Error("measure space: unknown atom id " + id);
    return static_cast<int>(it - ids_.begin());
}

AtomicMeasureSpace dyadic_space(int M) {
    if (M < 1) throw BadRangeError("dyadic space: need at least one atom");
    std::vector<std::string> ids;
    std::vector<double> weights;
    for (int m = 1; m <= M; ++m) {
        ids.push_back(std::to_string(m));
        weights.push_back(std::ldexp(1.0, -m));
    }
    return AtomicMeasureSpace(std::move(ids), std::move(weights));
}

QuadratureRule parse_rule(const std::string& name) {
    if (name == "uniform") return QuadratureRule::Uniform;
    if (name == "trapezoid") return QuadratureRule::Trapezoid;
    throw BadRangeError("unknown quadrature rule: " + name);
}

std::string rule_name(QuadratureRule rule) {
    return rule == QuadratureRule::Uniform ? "uniform" : "trapezoid";
}

AtomicMeasureSpace discretize_interval(double a, double b, int N, QuadratureRule rule) {
    if (!(a < b)) throw BadRangeError("discretize: need a < b");
    if (N < 2) throw BadRangeError("discretize: need at least two nodes");
    const double h = (b - a) / static_cast<double>(N - 1);
    std::vector<std::string> ids;
    std::vector<double> weights;
    std::vector<double> nodes;
    for (int i = 0; i < N; ++i) {
        ids.push_back(std::to_string(i + 1));
        nodes.push_back(a + h * static_cast<double>(i));
        if (rule == QuadratureRule::Uniform) {
            weights.push_back((b - a) / static_cast<double>(N));
        } else {
            weights.push_back((i == 0 || i == N - 1) ? h / 2.0 : h);
        }
    }
    return AtomicMeasureSpace(std::move(ids), std::move(weights), std::move(nodes));
}

SampledMultifunction::SampledMultifunction(AtomicMeasureSpace space,
                                           std::vector<SetValue> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != space_.size())
        throw Error("multifunction: one set value per atom required");
    for (const auto& v : values_)
        if (v.dim() != values_.front().dim())
            throw Error("multifunction: values have mixed ambient dimensions");
}

SampledMultifunction SampledMultifunction::shifted(const std::vector<Vec>& shifts) const {
    if (static_cast<int>(shifts.size()) != space_.size())
        throw Error("multifunction: one shift per atom required");
    std::vector<SetValue> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out.push_back(values_[i].shifted(shifts[i]));
    return SampledMultifunction(space_, std::move(out));
}

double weighted_p_norm(const AtomicMeasureSpace& space, const std::vector<Vec>& a, double p) {
    if (static_cast<int>(a.size()) != space.size())
        throw Error("perturbation: one vector per atom required");
    double s = 0.0;
    for (int i = 0; i < space.size(); ++i)
        s += space.weight(i) * std::pow(a[static_cast<std::size_t>(i)].norm(), p);
    return std::pow(s, 1.0 / p);
}

PerturbationSchedule::PerturbationSchedule(const AtomicMeasureSpace& space,
                                           std::vector<std::vector<Vec>> terms, double p)
    : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error("perturbation: empty schedule");
    norms_.reserve(terms_.size());
    for (const auto& t : terms_) norms_.push_back(weighted_p_norm(space, t, p));
    for (std::size_t k = 1; k < norms_.size(); ++k)
        if (norms_[k] > norms_[k - 1] + 1e-12)
            throw Error("perturbation: norms must be non-increasing in k");
}

PerturbationSchedule PerturbationSchedule::scaled(const AtomicMeasureSpace& space,
                                                  const std::vector<Vec>& base,
                                                  const std::vector<double>& scales,
                                                  double p) {
    std::vector<std::vector<Vec>> terms;
    terms.reserve(scales.size());
    for (double s : scales) {
        std::vector<Vec> t;
        t.reserve(base.size());
        for (const auto& v : base) t.push_back(s * v);
        terms.push_back(std::move(t));
    }
    return PerturbationSchedule(space, std::move(terms), p);
}

IntersectionResult essential_intersection(const SampledMultifunction& MF, long budget) {
    const int m = MF.space().size();
    const int n = MF.dim();
    double combos = 1.0;
    for (int i = 0; i < m; ++i)
        combos *= static_cast<double>(MF.value(i).pieces().size());
    if (combos > static_cast<double>(budget))
        throw SelectionBlowupError("essential intersection: piece-assignment budget exceeded");

    std::vector<Polyhedron> kept;
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    while (true) {
        int rows = 0;
        for (int i = 0; i < m; ++i)
            rows += MF.value(i).pieces()[pick[static_cast<std::size_t>(i)]].rows();
        Mat A(rows, n);
        Vec b(rows);
        int at = 0;
        for (int i = 0; i < m; ++i) {
            const Polyhedron& P = MF.value(i).pieces()[pick[static_cast<std::size_t>(i)]];
            A.middleRows(at, P.rows()) = P.A();
            b.segment(at, P.rows()) = P.b();
            at += P.rows();
        }
        Polyhedron cand(A, b);
        if (!cand.is_empty()) {
            bool absorbed = false;
            for (const auto& q : kept)
                if (polyhedron_subset(cand, q)) {
                    absorbed = true;
                    break;
                }
            if (!absorbed) {
                std::vector<Polyhedron> next;
                for (auto& q : kept)
                    if (!polyhedron_subset(q, cand)) next.push_back(std::move(q));
                next.push_back(std::move(cand));
                kept = std::move(next);
            }
        }
        std::size_t p = 0;
        while (p < pick.size() &&
               ++pick[p] == MF.value(static_cast<int>(p)).pieces().size()) {
            pick[p] = 0;
            ++p;
        }
        if (p == pick.size()) break;
    }
    if (kept.empty()) return {std::nullopt};
    return {SetValue(std::move(kept))};
}

}  // namespace essint
