#pragma once

// Random query generator with its own JSON5 and YAML writers, so format
// equivalence is checked against text the library did not produce.

#include <cctype>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "query/query.hpp"

namespace drweb::testing {

class QueryGenerator {
 public:
  explicit QueryGenerator(std::uint32_t seed) : rng_(seed) {}

  query::Query query() {
    query::Query q;
    q.url = pick(kHosts) + "/" + pick(kPaths);
    q.steps = steps(0, {});
    return q;
  }

  std::string json5(const query::Query& q) {
    std::string out = comment_line(0) + "{\n";
    out += "  " + json_key("@url") + ": " + json_string(q.url) + ",\n";
    out += "  " + json_key("@steps") + ": " + json_steps(q.steps, 1) + trailing_comma() + "\n}\n";
    return out;
  }

  std::string yaml(const query::Query& q) {
    std::string out = chance(0.3) ? "# generated query\n" : "";
    out += "\"@url\": " + yaml_string(q.url) + "\n";
    out += "\"@steps\":\n";
    yaml_steps(out, q.steps, 0);
    return out;
  }

 private:
  static constexpr const char* kHosts[] = {"https://boards.example", "http://a.example:8080",
                                           "https://www.childcare.example", "http://127.0.0.1:9"};
  static constexpr const char* kPaths[] = {"", "catalog", "search/Babysitters/DA12+1AB", "x/y?page=1"};
  static constexpr const char* kStepXpaths[] = {
      "//div[contains(@class, 'thread')]", "//div[contains(@class, 'search-result')]",
      "//div[@id='reviews']//div[contains(@class, 'review')]", "//ul/li", ".//tr[position() > 1]",
      "//div[contains(@class, 'profile featured')]", "/html/body/div[2]/*"};
  static constexpr const char* kFieldXpaths[] = {
      ".//div[contains(@class, 'teaser')]/text()", "./a/@href", ".//p[1]/normalize-space()",
      ".//h3[text()='About Me']/../p/normalize-space()", ".//img[1]/@src", "string(./@id)",
      ".//span[@class=\"q\"]/text()", ".//a[starts-with(@href, '/t/')]/@href", "count(.//li)"};
  static constexpr const char* kUrlXpaths[] = {"./a/@href", ".//a[1]/@href",
                                               ".//div[contains(@class, 'profile-image')]//a[1]/@href"};
  static constexpr const char* kNames[] = {"title", "link", "number_of_posts", "bio", "a b", "naïve",
                                           "x:y", "#tag", "123", "true", "Null", "quote\"d", "back\\slash",
                                           "it's", "line\nbreak", "reviews", "profile", "ü"};

  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  template <std::size_t N>
  std::string pick(const char* const (&pool)[N]) {
    return pool[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng_)];
  }

  std::string unique_name(std::set<std::string>& taken) {
    for (;;) {
      std::string n = pick(kNames);
      if (chance(0.3)) n += std::to_string(between(0, 99));
      if (taken.insert(n).second) return n;
    }
  }

  std::vector<query::Step> steps(int depth, const std::set<std::string>& parent_fields) {
    std::vector<query::Step> out;
    std::set<std::string> sibling_names = parent_fields;
    int n = depth == 0 ? between(1, 2) : between(1, 3);
    for (int i = 0; i < n; ++i) {
      query::Step s;
      s.xpath = pick(kStepXpaths);
      if (chance(depth == 0 ? 0.2 : 0.7)) s.name = unique_name(sibling_names);
      bool want_follow = depth < 2 && chance(0.35);
      if (!want_follow || chance(0.8)) {
        std::vector<query::Field> fields;
        std::set<std::string> taken;
        for (int k = between(0, 4); k > 0; --k) fields.push_back({unique_name(taken), pick(kFieldXpaths)});
        s.fields = std::move(fields);
      }
      if (want_follow) {
        std::set<std::string> mine;
        if (s.fields)
          for (const auto& f : *s.fields) mine.insert(f.name);
        s.follow = query::FollowSpec{pick(kUrlXpaths), steps(depth + 1, mine)};
      }
      if (chance(0.25)) s.pagination = query::PaginationSpec{"//a[@rel='next']/@href", between(1, 20)};
      out.push_back(std::move(s));
    }
    return out;
  }

  // ---- JSON5 ----

  std::string comment_line(int indent) {
    if (!chance(0.2)) return "";
    return std::string(indent * 2, ' ') + (chance(0.5) ? "// note\n" : "/* block */\n");
  }

  std::string trailing_comma() { return chance(0.4) ? "," : ""; }

  static bool is_identifier(const std::string& s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '$') return false;
    return true;
  }

  std::string json_string(const std::string& s) {
    char quote = chance(0.3) ? '\'' : '"';
    std::string out(1, quote);
    for (char c : s) {
      if (c == quote || c == '\\') out += '\\';
      if (c == '\n') {
        out += "\\n";
        continue;
      }
      out += c;
    }
    return out + quote;
  }

  std::string json_key(const std::string& k) {
    if (is_identifier(k) && chance(0.5)) return k;
    return json_string(k);
  }

  std::string json_steps(const std::vector<query::Step>& steps, int indent) {
    std::string pad(indent * 2 + 2, ' ');
    std::string out = "[\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
      out += comment_line(indent + 1);
      out += pad + json_step(steps[i], indent + 1);
      out += i + 1 < steps.size() ? ",\n" : trailing_comma() + "\n";
    }
    return out + std::string(indent * 2, ' ') + "]";
  }

  std::string json_step(const query::Step& s, int indent) {
    std::string pad(indent * 2 + 2, ' ');
    std::vector<std::string> members;
    members.push_back(json_key("@xpath") + ": " + json_string(s.xpath));
    if (s.name) members.push_back(json_key("@name") + ": " + json_string(*s.name));
    if (s.fields) {
      std::string f = json_key("@fields") + ": {";
      for (std::size_t i = 0; i < s.fields->size(); ++i) {
        const auto& field = (*s.fields)[i];
        f += (i ? ", " : " ") + json_key(field.name) + ": " + json_string(field.xpath);
      }
      f += s.fields->empty() ? "}" : trailing_comma() + " }";
      members.push_back(f);
    }
    if (s.follow) {
      members.push_back(json_key("@follow") + ": {" + json_key("@xpath") + ": " + json_string(s.follow->xpath) +
                        ", " + json_key("@steps") + ": " + json_steps(s.follow->steps, indent + 1) + "}");
    }
    if (s.pagination) {
      std::string limit = std::to_string(s.pagination->limit);
      if (chance(0.2)) limit = "+" + limit;
      members.push_back(json_key("@pagination") + ": {" + json_key("@xpath") + ": " +
                        json_string(s.pagination->xpath) + ", " + json_key("@limit") + ": " + limit + "}");
    }
    std::shuffle(members.begin(), members.end(), rng_);
    std::string out = "{\n";
    for (std::size_t i = 0; i < members.size(); ++i) {
      out += pad + members[i] + (i + 1 < members.size() ? ",\n" : trailing_comma() + "\n");
    }
    return out + std::string(indent * 2, ' ') + "}";
  }

  // ---- YAML ----

  static bool plain_safe(const std::string& s) {
    if (!is_identifier(s)) return false;
    std::string lower;
    for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return lower != "true" && lower != "false" && lower != "null";
  }

  std::string yaml_string(const std::string& s) {
    if (plain_safe(s) && chance(0.5)) return s;
    bool single = chance(0.3) && s.find('\n') == std::string::npos;
    if (single) {
      std::string out = "'";
      for (char c : s) out += c == '\'' ? std::string("''") : std::string(1, c);
      return out + "'";
    }
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      if (c == '\n') {
        out += "\\n";
        continue;
      }
      out += c;
    }
    return out + "\"";
  }

  void yaml_steps(std::string& out, const std::vector<query::Step>& steps, int indent) {
    std::string pad(indent, ' ');
    for (const auto& s : steps) {
      bool first = true;
      auto line = [&](const std::string& text) {
        out += pad + (first ? "- " : "  ") + text + "\n";
        first = false;
      };
      line("\"@xpath\": " + yaml_string(s.xpath) + (chance(0.2) ? "  # step" : ""));
      if (s.name) line("\"@name\": " + yaml_string(*s.name));
      if (s.fields) {
        if (s.fields->empty()) {
          line("\"@fields\": {}");
        } else if (chance(0.3)) {
          std::string flow = "\"@fields\": {";
          for (std::size_t i = 0; i < s.fields->size(); ++i) {
            const auto& f = (*s.fields)[i];
            flow += (i ? ", " : "") + yaml_string(f.name) + ": " + yaml_string(f.xpath);
          }
          line(flow + "}");
        } else {
          line("\"@fields\":");
          for (const auto& f : *s.fields)
            out += pad + "    " + yaml_string(f.name) + ": " + yaml_string(f.xpath) + "\n";
        }
      }
      if (s.follow) {
        line("\"@follow\":");
        out += pad + "    \"@xpath\": " + yaml_string(s.follow->xpath) + "\n";
        out += pad + "    \"@steps\":\n";
        yaml_steps(out, s.follow->steps, indent + 6);
      }
      if (s.pagination) {
        line("\"@pagination\":");
        out += pad + "    \"@xpath\": " + yaml_string(s.pagination->xpath) + "\n";
        out += pad + "    \"@limit\": " + std::to_string(s.pagination->limit) + "\n";
      }
    }
  }

  std::mt19937 rng_;
};

}  // namespace drweb::testing
