#pragma once

#include <string>

namespace nle {

// SHA-1 digest as lowercase hex. Used for cache checksums and recipe hashes;
// no cryptographic claims.
std::string sha1_hex(const std::string& data);

// Hash of the content the way git hashes a blob ("blob <size>\0" + content).
std::string git_blob_sha1(const std::string& content);

}  // namespace nle
