#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "backends/fixture_server.hpp"

namespace drweb::backends {

enum class Tier { simple, medium, high };

std::string_view to_string(Tier tier) noexcept;
// Throws Error(invalid_argument) for unknown names.
Tier parse_tier(std::string_view name);

// Writes a deterministic synthetic site for `tier` into `directory`
// (created if needed) and returns it as a FixtureSite.
//   simple  one listing page, 20 records
//   medium  one listing page, 300 records, each linking to one of 12
//           category pages
//   high    a 10-page listing chain joined by rel=next links, 60 records
//           per page, each linking to its own detail page with reviews
FixtureSite generate_benchmark_site(Tier tier, std::uint64_t seed, const std::filesystem::path& directory);

}  // namespace drweb::backends
