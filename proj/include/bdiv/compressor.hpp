#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace bdiv {

/// Anything that can report how many bytes a lossless encoding of its input
/// takes. NCD only needs the size, never the encoded bytes.
class Compressor {
 public:
  virtual ~Compressor() = default;
  virtual std::size_t compressed_size(std::string_view data) const = 0;
  virtual std::string name() const = 0;
};

/// zlib DEFLATE at level 9 (Z_BEST_COMPRESSION), default window and memLevel.
class DeflateCompressor final : public Compressor {
 public:
  explicit DeflateCompressor(int level = 9);
  std::size_t compressed_size(std::string_view data) const override;
  std::string name() const override;

 private:
  int level_;
};

}  // namespace bdiv
