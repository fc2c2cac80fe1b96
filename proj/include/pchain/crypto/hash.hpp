#pragma once

#include <span>

#include <pchain/common/bytes.hpp>

namespace pchain::crypto {

Hash256 sha256(std::span<const std::uint8_t> data);

}  // namespace pchain::crypto
