#include "backends/fixture_server.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>

#include "common/error.hpp"

namespace drweb::backends {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

namespace {

struct Resource {
  std::string body;
  std::string content_type;
  std::string etag;
  std::string redirect;
  int status = 200;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read fixture file " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string content_type_for(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".json" || ext == ".json5") return "application/json";
  if (ext == ".css") return "text/css";
  if (ext == ".js") return "application/javascript";
  if (ext == ".png") return "image/png";
  if (ext == ".txt" || ext == ".yaml") return "text/plain; charset=utf-8";
  return "application/octet-stream";
}

Resource file_resource(const std::filesystem::path& p) {
  Resource r;
  r.body = read_file(p);
  r.content_type = content_type_for(p);
  r.etag = "\"" + fnv1a_hex(r.body) + "\"";
  return r;
}

void reuse_address_only(socket_t sock) {
  int yes = 1;
  setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
}

}  // namespace

struct FixtureServer::Impl {
  httplib::Server server;
  std::map<std::string, Resource> resources;
};

FixtureServer::FixtureServer(FixtureSite site, std::string host, int port)
    : impl_(std::make_unique<Impl>()), host_(std::move(host)) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(site.root)) throw Error(ErrorCode::io, "fixture root is not a directory: " + site.root.string());

  if (site.routes.empty()) {
    for (const auto& entry : fs::recursive_directory_iterator(site.root)) {
      if (!entry.is_regular_file()) continue;
      std::string rel = "/" + fs::relative(entry.path(), site.root).generic_string();
      impl_->resources[rel] = file_resource(entry.path());
      if (entry.path().filename() == "index.html") {
        std::string dir = rel.substr(0, rel.size() - std::string("index.html").size());
        impl_->resources[dir] = impl_->resources[rel];
      }
    }
  } else {
    for (const auto& [path, route] : site.routes) {
      if (!route.redirect.empty()) {
        Resource r;
        r.redirect = route.redirect;
        r.status = route.status >= 300 && route.status < 400 ? route.status : 302;
        impl_->resources[path] = r;
      } else {
        Resource r = file_resource(site.root / route.file);
        r.status = route.status;
        impl_->resources[path] = std::move(r);
      }
    }
  }

  auto& server = impl_->server;
  server.set_socket_options(reuse_address_only);
  server.set_keep_alive_max_count(100);
  server.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
    auto it = impl_->resources.find(req.path);
    if (it == impl_->resources.end()) {
      res.status = 404;
      res.set_content("not found\n", "text/plain; charset=utf-8");
    } else if (!it->second.redirect.empty()) {
      res.status = it->second.status;
      res.set_header("Location", it->second.redirect);
    } else if (req.get_header_value("If-None-Match") == it->second.etag) {
      res.status = 304;
      res.set_header("ETag", it->second.etag);
    } else {
      res.status = it->second.status;
      res.set_header("ETag", it->second.etag);
      res.set_content(it->second.body, it->second.content_type);
    }
    std::lock_guard lock(log_mutex_);
    log_.push_back({req.method, req.path, res.status});
  });

  if (port == 0) {
    port_ = server.bind_to_any_port(host_);
    if (port_ < 0) throw Error(ErrorCode::address_in_use, "cannot bind any port on " + host_);
  } else {
    if (!server.bind_to_port(host_, port))
      throw Error(ErrorCode::address_in_use, "address in use: " + host_ + ":" + std::to_string(port));
    port_ = port;
  }
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  server.wait_until_ready();
}

FixtureServer::~FixtureServer() { shutdown(); }

std::string FixtureServer::base_url() const {
  return "http://" + (host_.find(':') != std::string::npos ? "[" + host_ + "]" : host_) + ":" + std::to_string(port_);
}

std::vector<AccessEntry> FixtureServer::access_log() const {
  std::lock_guard lock(log_mutex_);
  return log_;
}

std::size_t FixtureServer::request_count(const std::string& path) const {
  std::lock_guard lock(log_mutex_);
  if (path.empty()) return log_.size();
  std::size_t n = 0;
  for (const auto& e : log_)
    if (e.path == path) ++n;
  return n;
}

void FixtureServer::clear_log() {
  std::lock_guard lock(log_mutex_);
  log_.clear();
}

void FixtureServer::shutdown() {
  if (stopped_) return;
  stopped_ = true;
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace drweb::backends
