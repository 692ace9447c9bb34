#pragma once
#include <string>

#include "hogboost/booster.hpp"

namespace hogboost {

// Model document format, version 1: a single JSON text with base_score, the
// full training config, feature_count, and the trees as nested node records
// {"type":"split",feature,threshold,left,right} / {"type":"leaf",weight,row_count}.
// Reals use shortest round-trip decimals, so save/load is bit-exact.

inline constexpr int kModelFormatVersion = 1;

std::string serialize_model(const Model& model);
Model parse_model(const std::string& text);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

} // namespace hogboost
