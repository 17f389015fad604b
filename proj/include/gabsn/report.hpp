#pragma once

// JSON forms of the result types. Each to_json has a matching from_json so
// reports round-trip.

#include <json.hpp>

#include "gabsn/analytic.hpp"
#include "gabsn/inference.hpp"
#include "gabsn/types.hpp"

namespace gabsn {

void to_json(nlohmann::json& j, const ShapeParams& p);
void from_json(const nlohmann::json& j, ShapeParams& p);

void to_json(nlohmann::json& j, const LocScaleParams& p);
void from_json(const nlohmann::json& j, LocScaleParams& p);

void to_json(nlohmann::json& j, const MomentSet& m);
void from_json(const nlohmann::json& j, MomentSet& m);

void to_json(nlohmann::json& j, const BoundResult& r);
void from_json(const nlohmann::json& j, BoundResult& r);

void to_json(nlohmann::json& j, const FitResult& r);
void from_json(const nlohmann::json& j, FitResult& r);

void to_json(nlohmann::json& j, const LrTestResult& r);
void from_json(const nlohmann::json& j, LrTestResult& r);

}  // namespace gabsn
