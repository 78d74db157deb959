#include <doctest.h>

#include <filesystem>

#include <json.hpp>

#include "common/error.hpp"
#include "selector/html.hpp"
#include "selector/xpath.hpp"
#include "support/xpath_diff.hpp"

namespace fs = std::filesystem;
using namespace drweb;

using testing::kData;
using testing::slurp;

TEST_CASE("html parse trees match the reference tree builder") {
  std::size_t checked = 0;
  for (const auto& entry : fs::directory_iterator(kData / "html_soup")) {
    if (entry.path().extension() != ".html") continue;
    fs::path tree = entry.path();
    tree.replace_extension(".tree");
    CAPTURE(entry.path().filename().string());
    auto doc = html::parse_html(slurp(entry.path()), "http://fixture.test/");
    CHECK(dom::dump_tree(doc.root()) == slurp(tree));
    ++checked;
  }
  CHECK(checked >= 8);
}

TEST_CASE("html parser recovers from broken input") {
  auto doc = html::parse_html("<p>one<p>two</b></div><td>x", "http://h/");
  auto ps = xpath::select(doc.root(), "//body/p");
  REQUIRE(ps.size() == 2);
  CHECK(dom::string_value(*ps[1]) == "twox");

  auto empty = html::parse_html("", "http://h/");
  CHECK(xpath::select(empty.root(), "/html/body").size() == 1);
  CHECK(xpath::select(empty.root(), "/html/head").size() == 1);
}

TEST_CASE("html charset handling") {
  CHECK(html::sniff_meta_charset("<meta charset=\"ISO-8859-1\">") == "iso-8859-1");
  CHECK(html::sniff_meta_charset("<meta http-equiv=\"Content-Type\" content=\"text/html; charset=windows-1252\">") ==
        "windows-1252");
  CHECK_FALSE(html::sniff_meta_charset("<p>nothing</p>").has_value());

  CHECK(html::decode_to_utf8("caf\xe9", "iso-8859-1") == "caf\xc3\xa9");
  CHECK(html::decode_to_utf8("\x80", "windows-1252") == "\xe2\x82\xac");

  auto doc = html::parse_html("<p>caf\xe9</p>", "http://h/", std::string("latin1"));
  CHECK(xpath::extract_value(doc.root(), "//p/text()").str() == "caf\xc3\xa9");

  auto bad = html::parse_html("<p>a\xff" "b</p>", "http://h/");
  CHECK(xpath::extract_value(bad.root(), "//p/text()").str() == "a\xef\xbf\xbd" "b");
}

TEST_CASE("entities decode in text and attributes") {
  auto doc = html::parse_html(
      "<p title=\"a&amp;b&notit;\">&lt;x&gt; &copy &#x25B6; &#128; &unknown;</p>", "http://h/");
  CHECK(xpath::extract_value(doc.root(), "//p/@title").str() == "a&b&notit;");
  CHECK(xpath::extract_value(doc.root(), "//p/text()").str() ==
        "<x> \xc2\xa9 \xe2\x96\xb6 \xe2\x82\xac &unknown;");
}

TEST_CASE("xpath cardinality collapsing") {
  auto doc = html::parse_html("<div><a href='/1'>x</a><a href='/2'>y</a></div>", "http://h/");
  CHECK(xpath::extract_value(doc.root(), "//span").is_null());
  CHECK(xpath::extract_value(doc.root(), "//a[1]/@href").str() == "/1");
  auto all = xpath::extract_value(doc.root(), "//a/@href");
  REQUIRE(all.is_array());
  CHECK(all.array() == std::vector<std::string>{"/1", "/2"});
  CHECK(xpath::ExtractedValue::from_strings({}).is_null());
  CHECK(xpath::ExtractedValue::from_strings({"a"}).is_string());
}

TEST_CASE("xpath trailing normalize-space") {
  auto doc = html::parse_html("<p>  a \n b </p><p>\tc</p>", "http://h/");
  auto v = xpath::extract_value(doc.root(), "//p/normalize-space()");
  REQUIRE(v.is_array());
  CHECK(v.array() == std::vector<std::string>{"a b", "c"});
  CHECK(xpath::normalize_space(" \t x \r\n y ") == "x y");
}

TEST_CASE("xpath rejects malformed and unsupported expressions") {
  auto code_of = [](std::string_view src) {
    try {
      xpath::Expression::compile(src);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ok;
  };
  CHECK(code_of("//div[") == ErrorCode::xpath_syntax);
  CHECK(code_of("") == ErrorCode::xpath_syntax);
  CHECK(code_of("//a/@") == ErrorCode::xpath_syntax);
  CHECK(code_of("//div)") == ErrorCode::xpath_syntax);
  CHECK(code_of("//a | //b") == ErrorCode::unsupported_feature);
  CHECK(code_of("ancestor::div") == ErrorCode::unsupported_feature);
  CHECK(code_of("//div[1 + 1]") == ErrorCode::unsupported_feature);
  CHECK(code_of("$x") == ErrorCode::unsupported_feature);
  CHECK(code_of("//p/normalize-space()/a") == ErrorCode::unsupported_feature);
  CHECK(code_of("//svg:path") == ErrorCode::unsupported_feature);
  CHECK(code_of("substring(//a, 1)") == ErrorCode::unsupported_feature);

  CHECK(xpath::Expression::compile("//a").yields_nodes());
  CHECK_FALSE(xpath::Expression::compile("count(//a)").yields_nodes());
  auto doc = html::parse_html("<a>x</a>", "http://h/");
  CHECK_THROWS_AS(xpath::select(doc.root(), "count(//a)"), Error);
}

TEST_CASE("xpath agrees with a reference XPath 1.0 engine on generated documents") {
  auto r = testing::run_xpath_differential();
  for (const auto& sample : r.samples) MESSAGE(sample);
  CHECK(r.documents >= 50);
  CHECK(r.mismatches == 0);
  MESSAGE(r.documents << " documents, " << r.cases << " cases");
}
