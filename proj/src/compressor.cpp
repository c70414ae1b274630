#include "bdiv/compressor.hpp"

#include <vector>

#include <zlib.h>

#include "bdiv/error.hpp"

namespace bdiv {

DeflateCompressor::DeflateCompressor(int level) : level_(level) {
  if (level < 0 || level > 9) throw Error(ErrorKind::InvalidInput, "deflate level must be 0..9");
}

std::size_t DeflateCompressor::compressed_size(std::string_view data) const {
  uLongf size = compressBound(static_cast<uLong>(data.size()));
  std::vector<Bytef> buffer(size);
  const int rc = compress2(buffer.data(), &size, reinterpret_cast<const Bytef*>(data.data()),
                           static_cast<uLong>(data.size()), level_);
  if (rc != Z_OK) throw Error(ErrorKind::InvalidInput, "zlib compress2 failed with code " + std::to_string(rc));
  return size;
}

std::string DeflateCompressor::name() const { return "zlib-deflate-" + std::to_string(level_); }

}  // namespace bdiv
