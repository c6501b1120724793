#ifndef DLW_SHA256_HPP
#define DLW_SHA256_HPP

#include <string>
#include <string_view>

namespace dlw {

/// Lowercase hex SHA-256 digest of the given bytes.
std::string sha256_hex(std::string_view data);

}  // namespace dlw

#endif
