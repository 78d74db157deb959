#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "backends/fixture_server.hpp"
#include "query/query.hpp"
#include "support/fixtures.hpp"
#include "support/mock_webdriver.hpp"
#include "support/process.hpp"

using namespace drweb;
using drweb::testing::kData;
using drweb::testing::run_command;
using drweb::testing::shell_quote;
using drweb::testing::slurp;
namespace fs = std::filesystem;

namespace {

const std::string kCli = DRWEB_CLI;

struct Workspace {
  fs::path dir;
  backends::FixtureServer server{testing::test_site()};

  Workspace() {
    dir = fs::temp_directory_path() / ("drweb-cli-" + std::to_string(::getpid()) + "-" +
                                       std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  // Copies a sample query next to the outputs, pointed at the fixture server.
  std::string query(const std::string& file, const std::string& path) {
    auto q = testing::sample_query(file, server.base_url() + path);
    auto format = fs::path(file).extension() == ".yaml" ? query::Format::yaml : query::Format::json5;
    fs::path out = dir / file;
    std::ofstream(out, std::ios::binary) << query::render(q, format);
    return out.string();
  }

  std::string write(const std::string& name, const std::string& content) {
    fs::path out = dir / name;
    std::ofstream(out, std::ios::binary) << content;
    return out.string();
  }

  std::string path(const std::string& name) const { return (dir / name).string(); }
};

testing::ProcessResult cli(const std::string& args, const std::string& env = "") {
  return run_command(env + (env.empty() ? "" : " ") + shell_quote(kCli) + " " + args);
}

}  // namespace

TEST_CASE("the documented invocation writes the golden catalog output") {
  Workspace ws;
  std::string q = ws.query("4chan-query.json5", "/pol/catalog.html");
  auto r = cli("-q " + q + " -o " + ws.path("4chan-data.json") + " -l info --xvfb");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("[info] --xvfb has no effect with the static backend") != std::string::npos);
  CHECK(r.err.find("[info] navigate " + ws.server.base_url() + "/pol/catalog.html") != std::string::npos);
  std::string written = slurp(ws.path("4chan-data.json"));
  CHECK(written == slurp(kData / "golden" / "4chan-data.json"));
  CHECK(written.find("\\u25b6") != std::string::npos);
}

TEST_CASE("results go to stdout without -o and are byte-deterministic") {
  Workspace ws;
  std::string q = ws.query("childcare-query.json5", "/search/babysitters.html");
  auto a = cli("-q " + q);
  auto b = cli("--query " + q);
  CHECK(a.exit_code == 0);
  CHECK(a.err.empty());
  CHECK(a.out == slurp(kData / "golden" / "childcare-data.json"));
  CHECK(a.out == b.out);
}

TEST_CASE("yaml queries and ascii escaping") {
  Workspace ws;
  std::string yaml = ws.query("4chan-query.yaml", "/pol/catalog.html");
  auto r = cli("-q " + yaml);
  CHECK(r.exit_code == 0);
  CHECK(r.out == slurp(kData / "golden" / "4chan-data.json"));

  auto raw = cli("-q " + yaml + " --no-ensure-ascii");
  CHECK(raw.exit_code == 0);
  CHECK(raw.out.find("\xe2\x96\xb6") != std::string::npos);
  CHECK(raw.out.find("\\u25b6") == std::string::npos);

  auto forced = cli("-q " + yaml + " --format json5");
  CHECK(forced.exit_code == 3);
}

TEST_CASE("usage errors exit with 2") {
  auto none = cli("");
  CHECK(none.exit_code == 2);
  CHECK(none.err.find("--query is required") != std::string::npos);
  CHECK(none.err.find("Usage:") != std::string::npos);

  CHECK(cli("-q x.json5 --bogus").exit_code == 2);
  CHECK(cli("-q x.json5 -l loud").exit_code == 2);
  CHECK(cli("-q x.json5 --backend phantom").exit_code == 2);
  CHECK(cli("-q x.json5 --max-depth 0").exit_code == 2);

  auto browser = cli("-q x.json5 --backend browser");
  CHECK(browser.exit_code == 2);
  CHECK(browser.err.find("--browser-endpoint") != std::string::npos);

  auto help = cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("--xvfb") != std::string::npos);
}

TEST_CASE("query errors exit with 3 and name the location") {
  Workspace ws;
  std::string text = slurp(kData / "queries" / "childcare-query.json5");
  text.replace(text.find("@follow"), 7, "@follw");
  auto r = cli("-q " + ws.write("typo.json5", text));
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("@steps[0].@follw") != std::string::npos);
  CHECK(r.err.find("unknown keyword @follw") != std::string::npos);

  auto syntax = cli("-q " + ws.write("broken.json5", "{\"@url\": \"http://a.example/\",\n  \"@steps\": [}"));
  CHECK(syntax.exit_code == 3);
  CHECK(syntax.err.find("line 2") != std::string::npos);

  auto xpath = cli("-q " + ws.write("xpath.json5", R"J({"@url": "http://a.example/", "@steps": [{"@xpath": "//div[", "@fields": {}}]})J"));
  CHECK(xpath.exit_code == 3);
}

TEST_CASE("root navigation failures exit with 4") {
  Workspace ws;
  auto unreachable = cli("-q " + ws.write("down.json5", R"J({"@url": "http://127.0.0.1:1/", "@steps": [{"@xpath": "//a", "@fields": {"h": "./@href"}}]})J"));
  CHECK(unreachable.exit_code == 4);
  CHECK(unreachable.err.find("network error") != std::string::npos);

  std::string missing = ws.query("4chan-query.json5", "/no/such/page.html");
  CHECK(cli("-q " + missing).exit_code == 4);
}

TEST_CASE("output errors exit with 5") {
  Workspace ws;
  std::string q = ws.query("4chan-query.json5", "/pol/catalog.html");
  auto r = cli("-q " + q + " -o " + ws.path("missing/out.json"));
  CHECK(r.exit_code == 5);
  CHECK(cli("-q " + ws.path("absent.json5")).exit_code == 5);
}

TEST_CASE("follow failures only warn") {
  Workspace ws;
  std::string q = ws.write("dead.json5", R"J({
    "@url": ")J" + ws.server.base_url() + R"J(/pol/catalog.html",
    "@steps": [{
      "@xpath": "//div[contains(@class, 'thread')]",
      "@fields": {"link": "./a/@href"},
      "@follow": {"@xpath": "string('/gone.html')", "@steps": [{"@xpath": "//p", "@name": "body", "@fields": {}}]}
    }]
  })J");
  auto r = cli("-q " + q);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"body\": []") != std::string::npos);
  CHECK(r.err.find("[warn]") != std::string::npos);
  auto quiet = cli("-q " + q + " -l error");
  CHECK(quiet.exit_code == 0);
  CHECK(quiet.err.empty());
}

TEST_CASE("browser backend through the endpoint variable") {
  Workspace ws;
  testing::MockWebDriver driver;
  std::string q = ws.query("4chan-query.json5", "/pol/catalog.html");
  auto r = cli("-q " + q + " --backend browser --xvfb", "DRWEB_BROWSER_ENDPOINT=" + driver.endpoint());
  CHECK(r.exit_code == 0);
  CHECK(r.out == slurp(kData / "golden" / "4chan-data.json"));
  CHECK(driver.sessions_created() == 1);
  CHECK(driver.sessions_deleted() == 1);
  CHECK(driver.last_capabilities().dump().find("--headless=new") != std::string::npos);

  auto flag = cli("-q " + q + " --backend browser --browser-endpoint " + driver.endpoint());
  CHECK(flag.exit_code == 0);
  CHECK(flag.out == r.out);
  CHECK(driver.last_capabilities().dump().find("--headless=new") == std::string::npos);

  auto down = cli("-q " + q + " --backend browser --browser-endpoint http://127.0.0.1:1");
  CHECK(down.exit_code == 4);
}

TEST_CASE("bench subcommand") {
  Workspace ws;
  auto r = cli("bench --tiers simple --runs 2 --out " + ws.path("b.csv"));
  CHECK(r.exit_code == 0);
  std::string csv = slurp(ws.path("b.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(fs::exists(ws.path("b.summary.json")));

  CHECK(cli("bench --tiers simple,extreme --out " + ws.path("c.csv")).exit_code == 2);
  CHECK(cli("bench --runs 0").exit_code == 2);
  CHECK(cli("bench --tiers simple --runs 1 --out " + ws.path("missing/b.csv")).exit_code == 5);
}
