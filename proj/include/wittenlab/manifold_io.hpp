#pragma once

#include <string>

#include <json.hpp>

#include "wittenlab/manifold.hpp"

namespace wittenlab {

/// Reads the JSON manifold record; errors carry the JSON path of the
/// offending value. The record is conjugate-completed but not validated.
FourManifold manifold_from_json(const nlohmann::json& doc);
nlohmann::json manifold_to_json(const FourManifold& x);

/// Parses, completes and validates; InputError on any failure.
FourManifold load_manifold(const std::string& path);
void save_manifold(const FourManifold& x, const std::string& path);

}  // namespace wittenlab
