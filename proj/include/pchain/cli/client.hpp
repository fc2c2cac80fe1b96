#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include <pchain/node/json_codec.hpp>

namespace pchain::cli {

using node::json;

/// The node could not be reached or answered with something other than a
/// JSON API response.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Response {
    int status = 0;
    json body;

    bool ok() const { return status >= 200 && status < 300; }
    /// The "error" code of a non-2xx response.
    std::string error() const;
};

class NodeClient {
public:
    /// "http://host:port"; throws TransportError on an unusable URL.
    explicit NodeClient(const std::string& base_url);
    ~NodeClient();

    Response get(const std::string& path);
    Response post(const std::string& path, const json& body = json::object());

    const std::string& url() const { return url_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::string url_;
};

}  // namespace pchain::cli
