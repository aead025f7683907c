#include "phishpond/frontdoor/server.hpp"

#include <boost/asio.hpp>
#include <boost/beast.hpp>
#include <boost/beast/websocket.hpp>

#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "phishpond/error.hpp"

namespace phishpond::frontdoor {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

std::string_view mime_type(const std::filesystem::path& p) {
  const auto ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript; charset=utf-8";
  if (ext == ".css") return "text/css; charset=utf-8";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  return "application/octet-stream";
}

// Maps a request target onto static_dir, refusing anything that could
// climb out of it.
std::optional<std::filesystem::path> static_path(const std::filesystem::path& root, std::string_view target) {
  if (root.empty()) return std::nullopt;
  auto path = std::string(target.substr(0, target.find_first_of("?#")));
  if (path.empty() || path.front() != '/') return std::nullopt;
  if (path.find('\\') != std::string::npos || path.find('\0') != std::string::npos) return std::nullopt;
  std::filesystem::path rel;
  std::istringstream parts(path.substr(1));
  for (std::string seg; std::getline(parts, seg, '/');) {
    if (seg.empty() || seg == ".") continue;
    if (seg == "..") return std::nullopt;
    rel /= seg;
  }
  auto full = root / rel;
  if (rel.empty() || std::filesystem::is_directory(full)) full /= "index.html";
  if (!std::filesystem::is_regular_file(full)) return std::nullopt;
  return full;
}

}  // namespace

class WsSession;

struct Server::Impl {
  Impl(SessionRegistry& r, persistence::ProfileStore* s, ServerOptions o)
      : registry(r), store(s), opts(std::move(o)), ioc(1), acceptor(ioc), timer(ioc) {
    const auto endpoint = tcp::endpoint(asio::ip::make_address(opts.address), opts.port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen(asio::socket_base::max_listen_connections);
  }

  void accept();
  void schedule_tick();
  http::response<http::string_body> respond(const http::request<http::string_body>& req);

  SessionRegistry& registry;
  persistence::ProfileStore* store;
  ServerOptions opts;
  asio::io_context ioc;
  tcp::acceptor acceptor;
  asio::steady_timer timer;
  std::unordered_map<ConnectionId, std::weak_ptr<WsSession>> sockets;
};

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(Server::Impl* server, tcp::socket socket) : server_(server), ws_(std::move(socket)) {}

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->id_ = self->server_->registry.connect();
      self->server_->sockets[self->id_] = self;
      self->read();
    });
  }

  void send(const nlohmann::json& msg) {
    queue_.push_back(msg.dump());
    if (queue_.size() == 1) write();
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->close();
      const auto text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      for (const auto& msg : self->server_->registry.handle(self->id_, text)) self->send(msg);
      self->read();
    });
  }

  void write() {
    ws_.text(true);
    ws_.async_write(asio::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->close();
      self->queue_.pop_front();
      if (!self->queue_.empty()) self->write();
    });
  }

  void close() {
    if (id_ == 0) return;
    server_->registry.disconnect(id_);
    server_->sockets.erase(id_);
    id_ = 0;
  }

  Server::Impl* server_;
  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  ConnectionId id_ = 0;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(Server::Impl* server, tcp::socket socket) : server_(server), stream_(std::move(socket)) {}

  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->dispatch();
    });
  }

 private:
  void dispatch() {
    if (websocket::is_upgrade(req_)) {
      if (req_.target() == "/play") {
        stream_.expires_never();
        std::make_shared<WsSession>(server_, stream_.release_socket())->run(std::move(req_));
        return;
      }
    }
    auto res = std::make_shared<http::response<http::string_body>>(server_->respond(req_));
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
      if (ec || res->need_eof()) {
        beast::error_code ignored;
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        return;
      }
      self->read();
    });
  }

  Server::Impl* server_;
  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

http::response<http::string_body> Server::Impl::respond(const http::request<http::string_body>& req) {
  http::response<http::string_body> res;
  res.version(req.version());
  res.keep_alive(req.keep_alive());
  res.set(http::field::server, "phishpond");
  const auto reply = [&](http::status status, std::string_view type, std::string body) {
    res.result(status);
    res.set(http::field::content_type, std::string(type));
    res.body() = std::move(body);
    res.prepare_payload();
    return res;
  };
  const auto json_error = [&](http::status status, std::string_view detail) {
    return reply(status, "application/json", error_message("not_found", detail).dump());
  };

  if (req.method() != http::verb::get && req.method() != http::verb::head)
    return reply(http::status::method_not_allowed, "text/plain", "GET only\n");

  const std::string_view target(req.target().data(), req.target().size());
  constexpr std::string_view kProfile = "/profile/";
  if (target.substr(0, kProfile.size()) == kProfile) {
    const auto id = std::string(target.substr(kProfile.size()));
    if (!store) return json_error(http::status::not_found, "profiles are not stored by this server");
    try {
      return reply(http::status::ok, "application/json", persistence::to_json(store->load(id)).dump());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotFound) return json_error(http::status::not_found, e.detail());
      return reply(http::status::internal_server_error, "application/json",
                   error_message("storage_failure", e.detail()).dump());
    }
  }
  if (target == "/play") return reply(http::status::upgrade_required, "text/plain", "websocket only\n");

  if (const auto file = static_path(opts.static_dir, target)) {
    std::ifstream in(*file, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    return reply(http::status::ok, mime_type(*file), body.str());
  }
  return reply(http::status::not_found, "text/plain", "not found\n");
}

void Server::Impl::accept() {
  acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    std::make_shared<HttpSession>(this, std::move(socket))->read();
    accept();
  });
}

void Server::Impl::schedule_tick() {
  timer.expires_after(opts.tick_period);
  timer.async_wait([this](beast::error_code ec) {
    if (ec) return;
    for (auto& [id, msgs] : registry.tick_all(Millis{1000})) {
      const auto it = sockets.find(id);
      if (it == sockets.end()) continue;
      if (const auto ws = it->second.lock())
        for (const auto& m : msgs) ws->send(m);
    }
    schedule_tick();
  });
}

Server::Server(SessionRegistry& registry, persistence::ProfileStore* store, ServerOptions opts)
    : impl_(std::make_unique<Impl>(registry, store, std::move(opts))) {}

// Pending handlers (and the sessions they own) are destroyed with the
// io_context inside Impl.
Server::~Server() = default;

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  impl_->accept();
  impl_->schedule_tick();
  impl_->ioc.run();
}

void Server::stop() {
  asio::post(impl_->ioc, [impl = impl_.get()] {
    beast::error_code ignored;
    impl->acceptor.close(ignored);
    impl->timer.cancel();
    impl->ioc.stop();
  });
}

}  // namespace phishpond::frontdoor
