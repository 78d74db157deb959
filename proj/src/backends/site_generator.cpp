#include "backends/site_generator.hpp"

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "common/error.hpp"

namespace drweb::backends {

std::string_view to_string(Tier tier) noexcept {
  switch (tier) {
    case Tier::simple: return "simple";
    case Tier::medium: return "medium";
    case Tier::high: return "high";
  }
  return "simple";
}

Tier parse_tier(std::string_view name) {
  if (name == "simple") return Tier::simple;
  if (name == "medium") return Tier::medium;
  if (name == "high") return Tier::high;
  throw Error(ErrorCode::invalid_argument, "unknown tier '" + std::string(name) + "' (expected simple, medium or high)");
}

namespace {

constexpr const char* kWords[] = {
    "amber",  "bridge", "cobalt", "delta", "ember", "fjord",  "garnet", "harbor", "indigo", "juniper",
    "kestrel", "lumen", "meadow", "nectar", "onyx",  "prism",  "quartz", "russet", "saffron", "tundra",
    "umber",  "velvet", "willow", "xenon", "yarrow", "zephyr", "café",   "naïve",  "über",   "▶"};

// std::mt19937_64 output is fixed by the standard; the distributions are
// not, so draws are reduced by hand to keep sites identical everywhere.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  std::string word() { return kWords[below(std::size(kWords))]; }
  std::string words(std::size_t lo, std::size_t hi) {
    std::string out;
    for (std::size_t i = 0, n = lo + below(hi - lo + 1); i < n; ++i) out += (i ? " " : "") + word();
    return out;
  }
  std::string price() { return std::to_string(1 + below(500)) + "." + std::to_string(10 + below(90)); }

 private:
  std::mt19937_64 rng_;
};

std::string page(const std::string& title, const std::string& body) {
  return "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" + title + "</title>\n</head>\n<body>\n" +
         body + "</body>\n</html>\n";
}

void write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

void simple_site(Draw& d, const std::filesystem::path& dir) {
  std::string body = "<ul class=\"listing\">\n";
  for (int i = 1; i <= 20; ++i) {
    body += "<li class=\"item\" id=\"i" + std::to_string(i) + "\">";
    body += "<span class=\"name\">" + d.words(2, 3) + "</span> ";
    body += "<span class=\"price\">" + d.price() + "</span> ";
    body += "<a href=\"/item/" + std::to_string(i) + ".html\">details</a>";
    body += "<span class=\"tag\">" + d.word() + "</span>";
    body += "</li>\n";
  }
  body += "</ul>\n";
  write(dir / "index.html", page("Simple listing", body));
}

void medium_site(Draw& d, const std::filesystem::path& dir) {
  constexpr int kCategories = 12;
  for (int c = 1; c <= kCategories; ++c) {
    std::string body = "<div class=\"category\">\n<h1>" + d.words(1, 2) + "</h1>\n<p class=\"description\">" +
                       d.words(20, 40) + "</p>\n<ul>";
    for (int k = 0; k < 5; ++k) body += "<li class=\"keyword\">" + d.word() + "</li>";
    body += "</ul>\n</div>\n";
    write(dir / "cat" / (std::to_string(c) + ".html"), page("Category " + std::to_string(c), body));
  }
  std::string body = "<div class=\"catalog\">\n";
  for (int i = 1; i <= 300; ++i) {
    body += "<div class=\"product\" data-sku=\"SKU" + std::to_string(100000 + i) + "\">\n";
    body += "  <h2 class=\"title\">" + d.words(2, 4) + "</h2>\n";
    body += "  <span class=\"price\">" + d.price() + "</span>\n";
    body += "  <span class=\"stock\">" + std::to_string(d.below(200)) + "</span>\n";
    body += "  <p class=\"summary\">" + d.words(30, 60) + "</p>\n";
    body += "  <ul class=\"tags\">";
    for (std::size_t t = 0, n = 1 + d.below(4); t < n; ++t) body += "<li>" + d.word() + "</li>";
    body += "</ul>\n";
    body += "  <img src=\"/img/" + std::to_string(i) + ".png\" alt=\"" + d.word() + "\">\n";
    body += "  <a class=\"cat\" href=\"/cat/" + std::to_string(1 + d.below(kCategories)) + ".html\">category</a>\n";
    body += "</div>\n";
  }
  body += "</div>\n";
  write(dir / "index.html", page("Medium catalog", body));
}

void high_site(Draw& d, const std::filesystem::path& dir) {
  constexpr int kPages = 10;
  constexpr int kPerPage = 60;
  int item = 0;
  for (int p = 1; p <= kPages; ++p) {
    std::string body = "<div class=\"results\">\n";
    for (int r = 0; r < kPerPage; ++r) {
      ++item;
      std::string id = std::to_string(item);
      body += "<div class=\"result\">\n";
      body += "  <h3 class=\"name\">" + d.words(2, 3) + "</h3>\n";
      body += "  <span class=\"score\">" + std::to_string(1 + d.below(5)) + "</span>\n";
      body += "  <span class=\"area\">" + d.word() + "</span>\n";
      body += "  <a class=\"detail\" href=\"/detail/" + id + ".html\">view</a>\n";
      body += "</div>\n";

      std::string detail = "<div class=\"profile\">\n<h1>" + d.words(2, 3) + "</h1>\n";
      detail += "<div class=\"section\"><h3>About</h3><p>" + d.words(20, 50) + "</p></div>\n";
      detail += "<div class=\"section\"><h3>Experience</h3><p>" + d.words(10, 30) + "</p></div>\n</div>\n";
      detail += "<div id=\"reviews\">\n";
      for (std::size_t k = 0, n = 1 + d.below(5); k < n; ++k) {
        detail += "<div class=\"review\"><span class=\"author\">" + d.word() + "</span><span class=\"stars\">" +
                  std::to_string(1 + d.below(5)) + "</span><p>" + d.words(8, 25) + "</p></div>\n";
      }
      detail += "</div>\n";
      write(dir / "detail" / (id + ".html"), page("Detail " + id, detail));
    }
    body += "</div>\n";
    if (p < kPages) body += "<a rel=\"next\" href=\"/list/" + std::to_string(p + 1) + ".html\">next</a>\n";
    write(p == 1 ? dir / "index.html" : dir / "list" / (std::to_string(p) + ".html"),
          page("Results page " + std::to_string(p), body));
  }
}

}  // namespace

FixtureSite generate_benchmark_site(Tier tier, std::uint64_t seed, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + directory.string() + ": " + ec.message());
  Draw d(seed);
  switch (tier) {
    case Tier::simple: simple_site(d, directory); break;
    case Tier::medium: medium_site(d, directory); break;
    case Tier::high: high_site(d, directory); break;
  }
  return FixtureSite{directory, {}};
}

}  // namespace drweb::backends
