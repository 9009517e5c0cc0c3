#pragma once

#include <optional>
#include <string_view>
#include <vector>

// Files under data/ compiled into the library, keyed by relative path
// (e.g. "catalogs/climate.catalog").
namespace narrframe::resources {

std::optional<std::string_view> find(std::string_view name);
std::vector<std::string_view> names();

}  // namespace narrframe::resources
