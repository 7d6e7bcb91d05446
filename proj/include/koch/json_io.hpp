#pragma once

#include "koch/ifs.hpp"

#include "json.hpp"

#include <string>

namespace koch {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "koch-report/1";

// Serializes with every floating value printed as %.17g; non-finite values become null.
std::string dump_json(const Json& j, int indent = 2);

// {label, maps:[{matrix:[9 row-major], translation:[3], ratio}]}
Json ifs_to_json(const IfsSystem& ifs);
IfsSystem ifs_from_json(const Json& j);

Json interval_json(const DiameterInterval& d);

}  // namespace koch
