#ifndef GSNREV_DIGEST_HPP
#define GSNREV_DIGEST_HPP

#include <string>
#include <string_view>

namespace gsnrev {

// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view data);

}  // namespace gsnrev

#endif  // GSNREV_DIGEST_HPP
