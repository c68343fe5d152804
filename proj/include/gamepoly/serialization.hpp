#pragma once

// JSON forms of the library types (nlohmann::json). Tensors and systems use
// {"n", "d", "entries"} with entries in the canonical flat order.

#include "json.hpp"

#include "gamepoly/game_model.hpp"
#include "gamepoly/polysolve.hpp"
#include "gamepoly/quadrature.hpp"
#include "gamepoly/statistics.hpp"

namespace gamepoly {

inline constexpr int kSummarySchemaVersion = 1;

void to_json(nlohmann::json& j, const PayoffTensor& t);
void to_json(nlohmann::json& j, const BetaTensor& t);
void to_json(nlohmann::json& j, const CoefficientSystem& s);
void to_json(nlohmann::json& j, const UnivariatePoly& p);

// Infinite interval ends are written as null.
void to_json(nlohmann::json& j, const RootCountReport& r);
void from_json(const nlohmann::json& j, RootCountReport& r);

void to_json(nlohmann::json& j, const EnsembleDescriptor& e);
void from_json(const nlohmann::json& j, EnsembleDescriptor& e);

// Totals plus derived mean/variance/p_m for readers; only the totals are
// read back.
void to_json(nlohmann::json& j, const MonteCarloSummary& s);

void to_json(nlohmann::json& j, const PmTable& t);
void from_json(const nlohmann::json& j, PmTable& t);

// {tolerance, max_refinements, method, mc_samples, seed}; missing keys keep
// their defaults, unknown keys are rejected.
void to_json(nlohmann::json& j, const QuadConfig& c);
void from_json(const nlohmann::json& j, QuadConfig& c);

}  // namespace gamepoly

namespace nlohmann {

template <>
struct adl_serializer<gamepoly::PayoffTensor> {
  static gamepoly::PayoffTensor from_json(const json& j);
  static void to_json(json& j, const gamepoly::PayoffTensor& t) { gamepoly::to_json(j, t); }
};

template <>
struct adl_serializer<gamepoly::BetaTensor> {
  static gamepoly::BetaTensor from_json(const json& j);
  static void to_json(json& j, const gamepoly::BetaTensor& t) { gamepoly::to_json(j, t); }
};

template <>
struct adl_serializer<gamepoly::CoefficientSystem> {
  static gamepoly::CoefficientSystem from_json(const json& j);
  static void to_json(json& j, const gamepoly::CoefficientSystem& s) { gamepoly::to_json(j, s); }
};

template <>
struct adl_serializer<gamepoly::MonteCarloSummary> {
  static gamepoly::MonteCarloSummary from_json(const json& j);
  static void to_json(json& j, const gamepoly::MonteCarloSummary& s) { gamepoly::to_json(j, s); }
};

}  // namespace nlohmann
