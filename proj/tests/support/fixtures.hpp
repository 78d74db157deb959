#pragma once

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "backends/fixture_server.hpp"
#include "query/query.hpp"

namespace drweb::testing {

inline const std::filesystem::path kData = DRWEB_TEST_DATA;

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline backends::FixtureSite test_site() { return {kData / "site", {}}; }

// A sample query from tests/data/queries with its @url pointed at `url`.
inline query::Query sample_query(const std::string& file, const std::string& url) {
  auto path = kData / "queries" / file;
  std::string text = slurp(path);
  query::Query q = query::parse_query(text, query::detect_format(path.string(), text));
  q.url = url;
  return q;
}

inline query::Query rows_query(const std::string& url, int limit) {
  return query::parse_query(R"J({
    "@url": ")J" + url + R"J(",
    "@steps": [{
      "@xpath": "//li[@class='row']",
      "@fields": {"id": "./span/text()"},
      "@pagination": {"@xpath": "//a[@rel='next']/@href", "@limit": )J" +
                                std::to_string(limit) + R"J(}
    }]
  })J",
                            query::Format::json5);
}

}  // namespace drweb::testing
