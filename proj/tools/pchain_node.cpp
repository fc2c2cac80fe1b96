#include <csignal>
#include <iostream>

#include <CLI11.hpp>

#include <pchain/node/http_server.hpp>

namespace {

pchain::node::HttpServer* g_server = nullptr;

void on_signal(int)
{
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"pchain-node: single-producer ledger node"};
    std::string config_path, listen, block_log;
    app.add_option("--config", config_path, "Config file (PCHAIN_CONFIG)");
    app.add_option("--listen", listen, "host:port (PCHAIN_LISTEN)");
    app.add_option("--block-log", block_log, "Block log path");
    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) ::setenv("PCHAIN_CONFIG", config_path.c_str(), 1);
        auto config = pchain::node::config_from_environment();
        if (!listen.empty()) pchain::node::apply_listen(config, listen);
        if (!block_log.empty()) config.block_log = block_log;

        pchain::node::Node node(config);
        pchain::node::HttpServer server(node);
        const int port = server.bind(config.host, config.port);
        node.read([&](const pchain::chain::ChainStore& s) {
            std::cerr << "pchain-node listening on " << config.host << ":" << port << ", height " << s.height()
                      << ", producer " << node.params().producer.to_text() << "\n";
            return 0;
        });

        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        node.start();
        server.listen();
        g_server = nullptr;
        node.stop();
        std::cerr << "pchain-node stopped\n";
    } catch (const std::exception& e) {
        std::cerr << "pchain-node: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
