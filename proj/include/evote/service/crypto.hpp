#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace evote::service {

/// Hex encoding of `bytes` bytes from the OpenSSL CSPRNG.
std::string randomHex(std::size_t bytes);

/// Lower-case hex SHA-256.
std::string sha256Hex(std::string_view data);

}  // namespace evote::service
