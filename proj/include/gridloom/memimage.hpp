//===- memimage.hpp - Little-endian 32-bit word memory images -------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef GRIDLOOM_MEMIMAGE_HPP
#define GRIDLOOM_MEMIMAGE_HPP

#include "gridloom/common.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gridloom {

// Dense row-major array of 32-bit words. The container file format is a
// sequence of records: magic "GLMI", u32 version, u32 name length, name
// bytes, u32 rank, u64 extents[rank], then extent-product i32 words, all
// little-endian.
struct MemoryImage {
  std::string name;
  std::vector<int64_t> extents;
  std::vector<Word> data;

  int64_t size() const {
    int64_t n = 1;
    for (auto e : extents)
      n *= e;
    return n;
  }
  int64_t flat_index(const IterVec &idx) const;
  bool in_bounds(const IterVec &idx) const;
  Word at(const IterVec &idx) const { return data[flat_index(idx)]; }
  Word &at(const IterVec &idx) { return data[flat_index(idx)]; }

  static MemoryImage zeros(std::string name, std::vector<int64_t> extents);
};

using ImageSet = std::map<std::string, MemoryImage>;

void write_images(std::ostream &os, const ImageSet &images);
ImageSet read_images(std::istream &is);
void write_images_file(const std::string &path, const ImageSet &images);
ImageSet read_images_file(const std::string &path);

bool images_equal(const ImageSet &a, const ImageSet &b);

} // namespace gridloom

#endif // GRIDLOOM_MEMIMAGE_HPP
