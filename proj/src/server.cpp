#include "monty/server.hpp"

#include "monty/error.hpp"

#include <httplib.h>

#include <sys/socket.h>

namespace monty {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
    send_json(res, status, json{{"code", code}, {"message", message}});
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
        throw ServiceError(400, "bad_request", "request body must be a JSON object");
    }
    return body;
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const ServiceError& e) {
            send_error(res, e.status(), e.code(), e.what());
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Internal) {
                send_error(res, 500, "internal", e.what());
            } else {
                send_error(res, 400, "bad_request", e.what());
            }
        } catch (const json::exception& e) {
            send_error(res, 400, "bad_request", e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "internal", e.what());
        }
    };
}

std::optional<Variant> variant_field(const json& body) {
    if (!body.contains("variant") || body["variant"].is_null()) return std::nullopt;
    if (!body["variant"].is_string()) throw ServiceError(400, "bad_request", "variant must be a string");
    auto v = parse_variant(body["variant"].get<std::string>());
    if (!v) throw ServiceError(400, "bad_request", "unknown variant " + body["variant"].dump());
    return v;
}

} // namespace

SessionServer::SessionServer(ServerConfig config)
    : config_(std::move(config)), manager_(config_.sessions), http_(std::make_unique<httplib::Server>()) {
    // SO_REUSEADDR only: httplib's default also sets SO_REUSEPORT, which lets
    // a second server share an occupied port.
    http_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof yes);
    });
    http_->set_tcp_nodelay(true);
    install_routes();
}

SessionServer::~SessionServer() { stop(); }

void SessionServer::install_routes() {
    auto& svr = *http_;
    const std::string origin = config_.cors_origin;

    svr.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
        if (!origin.empty()) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        }
    });
    svr.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    svr.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
        send_error(res, res.status, res.status == 404 ? "not_found" : "bad_request",
                   "no route for " + req.method + " " + req.path);
        return httplib::Server::HandlerResponse::Handled;
    });

    svr.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, json{{"status", "ok"}});
    });

    svr.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
        json body = parse_body(req);
        std::optional<Rational> q;
        if (body.contains("q") && !body["q"].is_null()) {
            try {
                q = rational_from_json(body["q"]);
            } catch (const Error& e) {
                throw ServiceError(400, "bad_request", e.what());
            }
        }
        send_json(res, 201, public_view(manager_.create(variant_field(body), q)));
    }));

    svr.Post(R"(/sessions/([^/]+)/pick)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        json body = parse_body(req);
        int box = 0;
        if (body.contains("box") && !body["box"].is_null()) {
            if (!body["box"].is_number_integer()) throw ServiceError(400, "bad_request", "box must be an integer");
            box = body["box"].get<int>();
        }
        send_json(res, 200, public_view(manager_.pick(req.matches[1], box)));
    }));

    svr.Post(R"(/sessions/([^/]+)/decision)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        json body = parse_body(req);
        if (!body.contains("decision") || !body["decision"].is_string()) {
            throw ServiceError(400, "bad_request", "decision must be \"Stay\" or \"Switch\"");
        }
        auto d = parse_decision(body["decision"].get<std::string>());
        if (!d) throw ServiceError(400, "bad_request", "decision must be \"Stay\" or \"Switch\"");
        send_json(res, 200, public_view(manager_.decide(req.matches[1], *d)));
    }));

    svr.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, public_view(manager_.get(req.matches[1])));
    }));

    svr.Get("/stats", guarded([this](const httplib::Request& req, httplib::Response& res) {
        StatsFilter filter;
        if (req.has_param("variant") && !req.get_param_value("variant").empty()) {
            filter.variant = parse_variant(req.get_param_value("variant"));
            if (!filter.variant) throw ServiceError(400, "bad_request", "unknown variant filter");
        }
        if (req.has_param("q") && !req.get_param_value("q").empty()) {
            try {
                filter.q = Rational::parse(req.get_param_value("q"));
            } catch (const Error& e) {
                throw ServiceError(400, "bad_request", e.what());
            }
        }
        send_json(res, 200, manager_.stats(filter));
    }));
}

int SessionServer::bind() {
    int port = config_.port == 0 ? http_->bind_to_any_port(config_.bind_address)
                                 : (http_->bind_to_port(config_.bind_address, config_.port) ? config_.port : -1);
    if (port < 0) {
        throw Error(ErrorCode::Io, "cannot bind " + config_.bind_address + ":" + std::to_string(config_.port));
    }
    port_ = port;
    return port_;
}

void SessionServer::run() {
    if (port_ < 0) throw Error(ErrorCode::Internal, "run() before bind()");
    http_->listen_after_bind();
}

int SessionServer::start() {
    int port = bind();
    thread_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return port;
}

void SessionServer::stop() {
    http_->stop();
    if (thread_.joinable()) thread_.join();
}

} // namespace monty
