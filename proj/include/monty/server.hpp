#pragma once

#include "monty/session.hpp"

#include <memory>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace monty {

struct ServerConfig {
    std::string bind_address = "127.0.0.1";
    int port = 8080; // 0 picks a free port
    std::string cors_origin = "*";
    SessionManager::Options sessions;
};

// HTTP+JSON front end for SessionManager.
class SessionServer {
public:
    explicit SessionServer(ServerConfig config);
    ~SessionServer();

    SessionServer(const SessionServer&) = delete;
    SessionServer& operator=(const SessionServer&) = delete;

    // Binds the listening socket and returns the bound port. Throws
    // Error(ErrorCode::Io) when the address is unavailable.
    int bind();
    // Serves until stop(); bind() must have succeeded.
    void run();
    // bind() plus run() on a background thread; returns once accepting.
    int start();
    void stop();

    int port() const noexcept { return port_; }
    SessionManager& sessions() noexcept { return manager_; }

private:
    void install_routes();

    ServerConfig config_;
    SessionManager manager_;
    std::unique_ptr<httplib::Server> http_;
    int port_ = -1;
    std::thread thread_;
};

} // namespace monty
