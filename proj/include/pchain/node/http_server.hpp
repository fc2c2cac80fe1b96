#pragma once

#include <memory>
#include <string>
#include <thread>

#include <pchain/node/node.hpp>

namespace pchain::node {

/// JSON API over a Node. Handlers run on the listener's worker threads.
class HttpServer {
public:
    explicit HttpServer(Node& node);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Port 0 picks an ephemeral port. Returns the bound port; throws
    /// std::runtime_error when binding fails.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void listen();
    void listen_in_background();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::thread thread_;
};

}  // namespace pchain::node
