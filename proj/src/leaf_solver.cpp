#include "hogboost/leaf_solver.hpp"

#include <stdexcept>

namespace hogboost {

std::string to_string(CubicMode m) {
    switch (m) {
    case CubicMode::halley: return "halley";
    case CubicMode::exact_root: return "exact";
    default: return "series";
    }
}

std::string to_string(FourthOrderFormula f) {
    return f == FourthOrderFormula::classical ? "classical" : "paper";
}

CubicMode cubic_mode_from_string(const std::string& s) {
    if (s == "halley") return CubicMode::halley;
    if (s == "exact" || s == "exact_root") return CubicMode::exact_root;
    if (s == "series") return CubicMode::series;
    throw std::invalid_argument("unknown cubic mode '" + s + "'");
}

FourthOrderFormula fourth_order_formula_from_string(const std::string& s) {
    if (s == "classical") return FourthOrderFormula::classical;
    if (s == "paper" || s == "paper_literal") return FourthOrderFormula::paper_literal;
    throw std::invalid_argument("unknown fourth-order formula '" + s + "'");
}

} // namespace hogboost
