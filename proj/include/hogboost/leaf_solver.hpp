#pragma once
#include <cmath>
#include <cstdint>
#include <string>

#include "hogboost/errors.hpp"

namespace hogboost {

// Aggregated derivative sums G1..G4 over the rows of a leaf or candidate
// partition. Entries above the working order stay zero.
struct GradStats {
    double g1 = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0;
    std::int64_t count = 0;

    void add_row(double r1, double r2, double r3, double r4) {
        g1 += r1;
        g2 += r2;
        g3 += r3;
        g4 += r4;
        count += 1;
    }
    GradStats operator-(const GradStats& o) const {
        return {g1 - o.g1, g2 - o.g2, g3 - o.g3, g4 - o.g4, count - o.count};
    }
};

enum class CubicMode { halley, exact_root, series };
enum class FourthOrderFormula { classical, paper_literal };

std::string to_string(CubicMode m);
std::string to_string(FourthOrderFormula f);
CubicMode cubic_mode_from_string(const std::string& s);
FourthOrderFormula fourth_order_formula_from_string(const std::string& s);

struct SolverConfig {
    int order = 2; // 2, 3, or 4
    double lambda = 1.0;
    CubicMode cubic_mode = CubicMode::halley;
    double trust_alpha = 1.0;
    FourthOrderFormula fourth_order_formula = FourthOrderFormula::classical;
};

// alpha = G1*G3 / (G2+lambda)^2, the dimensionless expansion quantity behind
// the trust region. fallback_used flags any substitution of the Newton weight
// for the configured-order weight.
struct SolverDiagnostics {
    double alpha = 0.0;
    bool fallback_used = false;
    double newton_weight = 0.0;
};

struct WeightResult {
    double weight = 0.0;
    SolverDiagnostics diag;
};

namespace detail {

inline double checked_denominator(const GradStats& stats, double lambda) {
    const double h = stats.g2 + lambda;
    if (!(h > 0.0))
        throw DegenerateDenominatorError("G2 + lambda = " + std::to_string(h) +
                                         " is not positive; use lambda > 0 or a convex loss");
    return h;
}

} // namespace detail

// Newton step -G1/(G2+lambda). Throws DegenerateDenominatorError when
// G2 + lambda <= 0.
inline double weight_order2(const GradStats& stats, double lambda) {
    const double h = detail::checked_denominator(stats, lambda);
    return -(stats.g1 / h);
}

// Exact stationary point of the cubic model, on the branch continuous with
// the Newton step as G3 -> 0. Falls back to Newton when the discriminant is
// negative (no real stationary point past the inflection).
inline WeightResult weight_cubic_exact(const GradStats& stats, double lambda) {
    const double h = detail::checked_denominator(stats, lambda);
    WeightResult r;
    r.diag.newton_weight = -(stats.g1 / h);
    r.diag.alpha = stats.g1 * stats.g3 / (h * h);

    const double disc = 1.0 - 2.0 * r.diag.alpha;
    if (disc < 0.0) {
        r.diag.fallback_used = true;
        r.weight = r.diag.newton_weight;
        return r;
    }
    // -(H/G3)(1 - sqrt(disc)) rewritten as -2*G1 / (H*(1 + sqrt(disc))):
    // no cancellation for small G3, and the G3 = 0 limit reproduces the
    // Newton step bit for bit.
    r.weight = -2.0 * stats.g1 / (h * (1.0 + std::sqrt(disc)));
    return r;
}

// Series form -Newton * (1 + alpha/2); Newton fallback outside
// |alpha| <= trust_alpha.
inline WeightResult weight_cubic_series(const GradStats& stats, double lambda,
                                        double trust_alpha = 1.0) {
    const double h = detail::checked_denominator(stats, lambda);
    WeightResult r;
    r.diag.newton_weight = -(stats.g1 / h);
    r.diag.alpha = stats.g1 * stats.g3 / (h * h);

    if (!(std::abs(r.diag.alpha) <= trust_alpha)) {
        r.diag.fallback_used = true;
        r.weight = r.diag.newton_weight;
        return r;
    }
    r.weight = -(stats.g1 / h) * (1.0 + 0.5 * r.diag.alpha);
    return r;
}

// Halley form -Newton / (1 - alpha/2); Newton fallback outside the trust
// region or within 1e-9 of the singular denominator.
inline WeightResult weight_halley(const GradStats& stats, double lambda,
                                  double trust_alpha = 1.0) {
    const double h = detail::checked_denominator(stats, lambda);
    WeightResult r;
    r.diag.newton_weight = -(stats.g1 / h);
    r.diag.alpha = stats.g1 * stats.g3 / (h * h);

    const double denom = 1.0 - 0.5 * r.diag.alpha;
    if (!(std::abs(r.diag.alpha) <= trust_alpha) || std::abs(denom) < 1e-9) {
        r.diag.fallback_used = true;
        r.weight = r.diag.newton_weight;
        return r;
    }
    r.weight = -(stats.g1 / h) / denom;
    return r;
}

// Householder p=2 update. `classical` uses the G1^2*G4/6 denominator term;
// `paper_literal` uses G1*G4/6 as printed. Newton fallback on a vanishing
// denominator (|den| < 1e-12 * H^3) or outside the trust region.
inline WeightResult weight_order4(const GradStats& stats, double lambda,
                                  FourthOrderFormula formula, double trust_alpha = 1.0) {
    const double h = detail::checked_denominator(stats, lambda);
    WeightResult r;
    r.diag.newton_weight = -(stats.g1 / h);
    r.diag.alpha = stats.g1 * stats.g3 / (h * h);

    // Algebraically the Newton step when G3 = G4 = 0; return it directly so
    // the collapse is exact, not just within rounding.
    if (stats.g3 == 0.0 && stats.g4 == 0.0) {
        r.weight = r.diag.newton_weight;
        return r;
    }

    const double h2 = h * h;
    const double h3 = h2 * h;
    const double num = h2 - 0.5 * stats.g1 * stats.g3;
    const double g4_term = formula == FourthOrderFormula::classical
                               ? stats.g1 * stats.g1 * stats.g4 / 6.0
                               : stats.g1 * stats.g4 / 6.0;
    const double den = h3 - stats.g1 * h * stats.g3 + g4_term;

    if (!(std::abs(r.diag.alpha) <= trust_alpha) || std::abs(den) < 1e-12 * h3) {
        r.diag.fallback_used = true;
        r.weight = r.diag.newton_weight;
        return r;
    }
    r.weight = -stats.g1 * num / den;
    return r;
}

// Weight for the configured order/mode.
inline WeightResult leaf_weight(const GradStats& stats, const SolverConfig& config) {
    switch (config.order) {
    case 2: {
        WeightResult r;
        r.weight = weight_order2(stats, config.lambda);
        r.diag.newton_weight = r.weight;
        return r;
    }
    case 3:
        switch (config.cubic_mode) {
        case CubicMode::exact_root: return weight_cubic_exact(stats, config.lambda);
        case CubicMode::series:
            return weight_cubic_series(stats, config.lambda, config.trust_alpha);
        default: return weight_halley(stats, config.lambda, config.trust_alpha);
        }
    case 4:
        return weight_order4(stats, config.lambda, config.fourth_order_formula,
                             config.trust_alpha);
    default:
        throw std::invalid_argument("solver order must be 2, 3, or 4");
    }
}

namespace detail {

// Taylor objective G1*w + H*w^2/2 + G3*w^3/6 + G4*w^4/24 truncated at
// `order`, accumulated left to right.
inline double truncated_objective(const GradStats& stats, double h, double w, int order) {
    double value = stats.g1 * w + 0.5 * h * w * w;
    if (order >= 3) value += stats.g3 * w * w * w / 6.0;
    if (order >= 4) value += stats.g4 * w * w * w * w / 24.0;
    return value;
}

} // namespace detail

struct LeafSolution {
    double weight = 0.0;
    double score = 0.0;
    SolverDiagnostics diag;
};

// Configured-order weight plus its score, the negated truncated Taylor
// objective at that weight. Monotone safeguard: if that score falls below
// the order-2 score -poly2(newton), the Newton weight and the order-2 score
// are used instead, so the returned score is never worse than order 2's.
inline LeafSolution solve_leaf(const GradStats& stats, const SolverConfig& config) {
    const double h = detail::checked_denominator(stats, config.lambda);
    const WeightResult wr = leaf_weight(stats, config);

    LeafSolution out;
    out.diag = wr.diag;
    out.weight = wr.weight;
    out.score = -detail::truncated_objective(stats, h, wr.weight, config.order);

    if (config.order > 2) {
        const double newton = wr.diag.newton_weight;
        const double order2_score = -detail::truncated_objective(stats, h, newton, 2);
        if (out.score < order2_score) {
            out.weight = newton;
            out.score = order2_score;
            out.diag.fallback_used = true;
        }
    }
    return out;
}

inline double leaf_score(const GradStats& stats, const SolverConfig& config) {
    return solve_leaf(stats, config).score;
}

} // namespace hogboost
